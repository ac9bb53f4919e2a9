#pragma once

// A named positive-valued function of one variable, with an optional symbolic
// body.  When the body is present the analytic derivative path is available;
// callable-only functions (e.g. the multiplicative absolute value) are limited
// to numeric probing.

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bigeo/expr.hpp"

namespace bigeo {

class GFunction {
 public:
  GFunction(std::string name, Expr body, double lo, double hi)
      : name_(std::move(name)), expr_(std::move(body)), lo_(lo), hi_(hi) {}

  GFunction(std::string name, std::function<double(double)> fn, double lo, double hi)
      : name_(std::move(name)), fn_(std::move(fn)), lo_(lo), hi_(hi) {}

  double operator()(double x) const { return expr_ ? evaluate(*expr_, x) : fn_(x); }

  const std::string& name() const { return name_; }
  bool has_expr() const { return expr_.has_value(); }
  const Expr& expr() const {
    if (!expr_) throw std::logic_error("GFunction: no symbolic body");
    return *expr_;
  }

  // Interval on which the function is claimed sign-consistent; evaluation
  // outside it is permitted but the caller should treat results as unvouched.
  double domain_lo() const { return lo_; }
  double domain_hi() const { return hi_; }
  bool in_claimed_domain(double x) const { return x >= lo_ && x <= hi_; }

 private:
  std::string name_;
  std::optional<Expr> expr_;
  std::function<double(double)> fn_;
  double lo_, hi_;
};

inline GFunction make_gfunction(const std::string& source, double lo, double hi) {
  return GFunction(source, parse(source), lo, hi);
}

// exp(|ln x|): equals x for x >= 1 and 1/x below; the standard example of a
// function whose two one-sided G-derivatives at x=1 disagree.
inline GFunction geometric_abs() {
  return GFunction(
      "gabs", [](double x) { return std::exp(std::fabs(std::log(x))); }, 0.25, 4.0);
}

inline const std::vector<GFunction>& standard_registry() {
  static const std::vector<GFunction> reg = {
      make_gfunction("exp(x)", 0.5, 3.0),
      make_gfunction("sin(x)", 0.3, 2.9),
      make_gfunction("x", 0.5, 5.0),
      make_gfunction("x^3", 0.5, 5.0),
      make_gfunction("x^7", 0.5, 5.0),
      make_gfunction("x^ln(x)", 0.5, 5.0),
      make_gfunction("3*2^x", 0.1, 5.0),
      make_gfunction("exp(-1/x^2)/(x^2*sin(x))", 0.3, 2.9),
  };
  return reg;
}

}  // namespace bigeo
