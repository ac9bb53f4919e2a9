#pragma once

// Multiplicative forward and backward differences of arbitrary order.
//
// With step h (h != 1) the order-n forward difference at a is
//   prod_{k=0..n} f(a h^{n-k}) ^ {(-1)^k C(n,k)},
// i.e. a signed integer combination of ln f at the nodes; the backward
// variant uses nodes a h^{-k}.  The alternating sum cancels heavily for
// slowly varying ln f, so it is accumulated in compensated arithmetic.

#include <cmath>
#include <string>
#include <vector>

#include "bigeo/errors.hpp"
#include "bigeo/gfunction.hpp"
#include "bigeo/greal.hpp"

namespace bigeo {

enum class DiffDirection { forward, backward };

namespace detail {

inline double node_log_value(const GFunction& f, double node) {
  const double v = f(node);
  if (!(v > 0.0)) {
    throw sign_error("difference: f must be positive at node x=" + std::to_string(node));
  }
  if (!std::isfinite(v)) {
    throw range_error("difference: f overflows at node x=" + std::to_string(node));
  }
  return std::log(v);
}

// sum_k (-1)^k C(n,k) logs[k], compensated.
inline double signed_binomial_log_sum(const std::vector<double>& logs) {
  const int n = static_cast<int>(logs.size()) - 1;
  dd acc{0.0, 0.0};
  double sign = 1.0;
  for (int k = 0; k <= n; ++k) {
    const double c = static_cast<double>(binomial_coefficient(n, k));
    acc = dd_add(acc, two_prod(sign * c, logs[k]));
    sign = -sign;
  }
  return acc.hi + acc.lo;
}

inline void check_diff_args(double a, const GReal& h, int n) {
  if (!(a > 0.0)) throw domain_error("difference: requires a > 0");
  if (h.log_value() == 0.0) {
    throw domain_error("difference: step must differ from the geometric zero");
  }
  if (n < 0) throw order_error("difference: order must be nonnegative");
}

}  // namespace detail

inline GReal forward_diff(const GFunction& f, double a, const GReal& h, int n) {
  detail::check_diff_args(a, h, n);
  const double lh = h.log_value();
  std::vector<double> logs(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    logs[k] = detail::node_log_value(f, a * std::exp(static_cast<double>(n - k) * lh));
  }
  return GReal::from_log(detail::signed_binomial_log_sum(logs));
}

inline GReal backward_diff(const GFunction& f, double a, const GReal& h, int n) {
  detail::check_diff_args(a, h, n);
  const double lh = h.log_value();
  std::vector<double> logs(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    logs[k] = detail::node_log_value(f, a * std::exp(-static_cast<double>(k) * lh));
  }
  return GReal::from_log(detail::signed_binomial_log_sum(logs));
}

// Definition-level recursions, primarily for cross-checking the closed forms.
inline GReal forward_diff_recursive(const GFunction& f, double a, const GReal& h, int n) {
  detail::check_diff_args(a, h, n);
  if (n == 0) return GReal::from_log(detail::node_log_value(f, a));
  const double ah = a * std::exp(h.log_value());
  return g_sub(forward_diff_recursive(f, ah, h, n - 1),
               forward_diff_recursive(f, a, h, n - 1));
}

inline GReal backward_diff_recursive(const GFunction& f, double a, const GReal& h, int n) {
  detail::check_diff_args(a, h, n);
  if (n == 0) return GReal::from_log(detail::node_log_value(f, a));
  const double behind = a * std::exp(-h.log_value());
  return g_sub(backward_diff_recursive(f, a, h, n - 1),
               backward_diff_recursive(f, behind, h, n - 1));
}

struct DiffTable {
  double base;
  GReal step;
  DiffDirection direction;
  // rows[0] = f at the nodes (outward from base); rows[k] has one fewer
  // entry, with rows[k][0] equal to the order-k difference at base.
  std::vector<std::vector<GReal>> rows;
};

inline DiffTable diff_table(const GFunction& f, double a, const GReal& h, int n,
                            DiffDirection dir) {
  detail::check_diff_args(a, h, n);
  const double lh = h.log_value();
  DiffTable t{a, h, dir, {}};
  std::vector<GReal> nodes;
  nodes.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    const double step = dir == DiffDirection::forward ? static_cast<double>(i)
                                                      : -static_cast<double>(i);
    nodes.push_back(GReal::from_log(detail::node_log_value(f, a * std::exp(step * lh))));
  }
  t.rows.push_back(std::move(nodes));
  for (int k = 1; k <= n; ++k) {
    const std::vector<GReal>& prev = t.rows.back();
    std::vector<GReal> row;
    row.reserve(prev.size() - 1);
    for (std::size_t i = 0; i + 1 < prev.size(); ++i) {
      row.push_back(dir == DiffDirection::forward ? g_sub(prev[i + 1], prev[i])
                                                  : g_sub(prev[i], prev[i + 1]));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace bigeo
