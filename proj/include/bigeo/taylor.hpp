#pragma once

// Multiplicative Taylor expansions.  Around a base point a > 0,
//   f(x) ~ prod_k f^{[k]}(a) ^ { ln^k(x/a) / k! },
// where f^{[k]} is the k-th multiplicative derivative.  Everything is
// evaluated in log-domain: factors like e^120 appear at modest orders, so the
// product is a sum of ln-factor * ln-power terms.

#include <cmath>
#include <string>
#include <vector>

#include "bigeo/derivative.hpp"
#include "bigeo/errors.hpp"
#include "bigeo/expr.hpp"
#include "bigeo/gfunction.hpp"
#include "bigeo/greal.hpp"

namespace bigeo {

struct TaylorExpansion {
  double base;   // expansion point a > 0
  int order;     // highest derivative order n
  std::vector<GReal> factors;  // factors[k] = f^{[k]}(base), k = 0..order
};

inline TaylorExpansion taylor_factors(const GFunction& f, double a, int n) {
  if (!(a > 0.0)) throw domain_error("taylor_factors: requires a > 0");
  if (n < 0) throw order_error("taylor_factors: order must be nonnegative");
  if (!f.has_expr()) throw domain_error("taylor_factors: requires a symbolic body");
  TaylorExpansion t{a, n, {}};
  t.factors.reserve(static_cast<std::size_t>(n) + 1);
  t.factors.push_back(GReal::from_value(f(a)));
  if (n >= 1) {
    Expr u = log_gderiv_expr(f.expr());
    for (int k = 1; k <= n; ++k) {
      if (k > 1) u = detail::s_mul(Expr::variable(), differentiate(u));
      try {
        t.factors.push_back(GReal::from_log(evaluate(u, a)));
      } catch (const domain_error& e) {
        throw domain_error("taylor_factors: order " + std::to_string(k) + ": " + e.what());
      }
    }
  }
  return t;
}

// Exponent of the truncated product at x: sum_k ln(factors[k]) ln^k(x/a)/k!.
inline double taylor_eval_log(const TaylorExpansion& t, double x) {
  if (!(x > 0.0)) throw domain_error("taylor_eval: requires x > 0");
  const double u = std::log(x / t.base);
  double sum = 0.0, pw = 1.0;
  for (std::size_t k = 0; k < t.factors.size(); ++k) {
    if (k > 0) pw *= u / static_cast<double>(k);
    sum += t.factors[k].log_value() * pw;
  }
  return sum;
}

inline double taylor_eval(const TaylorExpansion& t, double x) {
  return std::exp(taylor_eval_log(t, x));
}

struct TaylorRemainder {
  double theta;  // in (1, e)
  int p;         // free parameter, 1..n; p = n is the classical form
  GReal value;
};

namespace detail {

inline void check_remainder_args(double a, double h, int n, int p, double theta) {
  if (!(a > 0.0)) throw domain_error("taylor_remainder: requires a > 0");
  if (!(h > 1.0)) throw domain_error("taylor_remainder: requires h > 1");
  if (n < 1) throw order_error("taylor_remainder: order must be >= 1");
  if (p < 1 || p > n) throw order_error("taylor_remainder: requires 1 <= p <= n");
  if (!(theta > 1.0 && theta < 2.71828182845904523536)) {
    throw domain_error("taylor_remainder: theta must lie in (1, e)");
  }
}

inline double remainder_coeff(double h, int n, int p, double theta) {
  const double lt = std::log(theta);
  double fact = 1.0;
  for (int i = 2; i <= n - 1; ++i) fact *= static_cast<double>(i);
  return std::pow(1.0 - lt, static_cast<double>(n - p)) *
         std::pow(std::log(h), static_cast<double>(n)) / (fact * static_cast<double>(p));
}

}  // namespace detail

// Remainder factor [f^{[n]}(a h^{ln theta})]^{(1-ln theta)^{n-p} ln^n h / ((n-1)! p)}.
inline TaylorRemainder taylor_remainder(const GFunction& f, double a, double h, int n,
                                        int p, double theta) {
  detail::check_remainder_args(a, h, n, p, theta);
  if (!f.has_expr()) throw domain_error("taylor_remainder: requires a symbolic body");
  const double z = a * std::pow(h, std::log(theta));
  const double lfn = g_derivative_n_analytic(f.expr(), z, n).log_value();
  return TaylorRemainder{theta, p, GReal::from_log(lfn * detail::remainder_coeff(h, n, p, theta))};
}

struct RemainderSearch {
  double theta_star;
  TaylorRemainder remainder;
  double residual;  // |f(ah) - partial_product * remainder|
};

// Golden-section search for the theta making the order-(n-1) partial product
// times the remainder factor reproduce f(ah).
inline RemainderSearch remainder_theta_search(const GFunction& f, double a, double h,
                                              int n, int p = 0) {
  if (p == 0) p = n;
  detail::check_remainder_args(a, h, n, p, 1.5);
  const double target = f(a * h);
  if (!(target > 0.0)) throw sign_error("remainder_theta_search: f(a h) must be positive");
  const double lpartial = taylor_eval_log(taylor_factors(f, a, n - 1), a * h);

  Expr u = log_gderiv_expr(f.expr());
  for (int k = 2; k <= n; ++k) u = detail::s_mul(Expr::variable(), differentiate(u));
  auto resid = [&](double theta) {
    double z = a * std::pow(h, std::log(theta));
    double lr = evaluate(u, z) * detail::remainder_coeff(h, n, p, theta);
    return std::fabs(target - std::exp(lpartial + lr));
  };

  const double gr = 0.6180339887498949;
  double lo = 1.0 + 1e-6;
  double hi = 2.71828182845904523536 - 1e-6;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = resid(x1), f2 = resid(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = resid(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = resid(x2);
    }
  }
  const double ts = 0.5 * (lo + hi);
  return RemainderSearch{ts, taylor_remainder(f, a, h, n, p, ts), resid(ts)};
}

// Ordinary first-order approximation f(a) + (x-a) f'(a).
inline double linear_approx(const GFunction& f, double a, double x) {
  const double fa = f(a);
  const double dfa =
      f.has_expr() ? evaluate(differentiate(f.expr()), a) : ordinary_from_g(f, a);
  return fa + (x - a) * dfa;
}

// Truncated multiplicative expansion of the given order evaluated at x;
// order 1 is the exponential counterpart of linear_approx.
inline double exp_approx(const GFunction& f, double a, int order, double x) {
  return taylor_eval(taylor_factors(f, a, order), x);
}

}  // namespace bigeo
