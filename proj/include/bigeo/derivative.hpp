#pragma once

// Multiplicative limits, continuity, and derivatives.
//
// The multiplicative derivative of f at x is lim_{h->1} [f(hx)/f(x)]^{1/ln h};
// in log form that is the slope of t -> ln|f(e^t)| at t = ln x.  The numeric
// path estimates that limit on a shrinking probe schedule; the analytic path
// uses the bridge exp(x f'(x)/f(x)) with the symbolic ordinary derivative.
// Higher orders iterate the bridge: with u1 = x f'/f, each further order is
// u_{k+1} = x u_k'.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>

#include "bigeo/errors.hpp"
#include "bigeo/expr.hpp"
#include "bigeo/gfunction.hpp"
#include "bigeo/greal.hpp"

namespace bigeo {

enum class DerivMethod { numeric_limit, analytic_bridge };

struct GDerivativeResult {
  // Exactly one of value / one_sided is set: two-sided result, or the
  // (left, right) pair by direction of approach when the sides disagree.
  std::optional<GReal> value;
  DerivMethod method = DerivMethod::numeric_limit;
  int order = 1;
  std::optional<std::pair<GReal, GReal>> one_sided;
};

namespace detail {

// Accepted log-slope from one side (sgn=+1: h->1+, sgn=-1: h->1-).
// Probes u = sgn*10^-k, k=2..8; Richardson extrapolation over the schedule,
// accepting the first consecutive pair agreeing to rel. 1e-7.
inline double side_log_slope(const GFunction& f, double x, double fx, int sgn) {
  double s[7];
  for (int k = 2; k <= 8; ++k) {
    double u = sgn * std::pow(10.0, -k);
    double fv = f(x * std::exp(u));
    double ratio = fv / fx;
    if (!(ratio > 0.0)) {
      throw sign_error("g-derivative: function changes sign or vanishes in the probe window");
    }
    s[k - 2] = std::log(ratio) / u;
  }
  double r[6];
  for (int i = 0; i < 6; ++i) r[i] = (10.0 * s[i + 1] - s[i]) / 9.0;
  for (int i = 0; i + 1 < 6; ++i) {
    if (std::fabs(r[i + 1] - r[i]) <= 1e-7 * std::max(1.0, std::fabs(r[i + 1]))) {
      return r[i + 1];
    }
  }
  int best = 1;
  double best_gap = std::fabs(r[1] - r[0]);
  for (int i = 1; i + 1 < 6; ++i) {
    double gap = std::fabs(r[i + 1] - r[i]);
    if (gap < best_gap) {
      best_gap = gap;
      best = i + 1;
    }
  }
  return r[best];
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Limits and continuity

// Numeric estimate of the multiplicative limit of f at a, probing x = a*e^{±u}
// over u = 10^-2..10^-8.  For a function continuous at a this equals the
// ordinary limit.
inline double g_limit_estimate(const GFunction& f, double a) {
  if (!(a > 0.0)) throw domain_error("g_limit_estimate: requires a > 0");
  auto side = [&](int sgn) {
    double v[7];
    for (int k = 2; k <= 8; ++k) {
      v[k - 2] = f(a * std::exp(sgn * std::pow(10.0, -k)));
    }
    for (int i = 0; i < 7; ++i) {
      if (v[i] == 0.0 || !std::isfinite(v[i]) || (v[i] > 0.0) != (v[0] > 0.0)) {
        throw sign_error("g_limit_estimate: sign change in the probe window");
      }
    }
    double r[6];
    for (int i = 0; i < 6; ++i) r[i] = (10.0 * v[i + 1] - v[i]) / 9.0;
    for (int i = 0; i + 1 < 6; ++i) {
      if (std::fabs(r[i + 1] - r[i]) <= 1e-7 * std::max(1.0, std::fabs(r[i + 1]))) {
        return r[i + 1];
      }
    }
    return r[5];
  };
  double l = side(-1);
  double r = side(+1);
  if (std::fabs(l - r) > 1e-6 * std::max({1.0, std::fabs(l), std::fabs(r)})) {
    throw no_limit_error("g_limit_estimate: one-sided limits disagree");
  }
  return 0.5 * (l + r);
}

// True iff f(x)/f(a) -> 1 as x -> a geometrically from both sides.
inline bool g_continuity_check(const GFunction& f, double a) {
  if (!(a > 0.0)) throw domain_error("g_continuity_check: requires a > 0");
  double fa = f(a);
  if (fa == 0.0) throw domain_error("g_continuity_check: f(a) = 0");
  for (int sgn : {-1, 1}) {
    double ratio = f(a * std::exp(sgn * 1e-8)) / fa;
    if (!(std::fabs(ratio - 1.0) <= 1e-6)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// First-order derivatives

inline GDerivativeResult g_derivative_numeric(const GFunction& f, double x) {
  if (!(x > 0.0)) throw domain_error("g_derivative_numeric: requires x > 0");
  double fx = f(x);
  if (fx == 0.0) throw domain_error("g_derivative_numeric: f(x) = 0");
  if (!std::isfinite(fx)) throw range_error("g_derivative_numeric: f(x) not finite");
  double left = detail::side_log_slope(f, x, fx, -1);
  double right = detail::side_log_slope(f, x, fx, +1);
  GDerivativeResult res;
  res.method = DerivMethod::numeric_limit;
  res.order = 1;
  if (std::fabs(left - right) <=
      1e-6 * std::max({1.0, std::fabs(left), std::fabs(right)})) {
    res.value = GReal::from_log(0.5 * (left + right));
  } else {
    res.one_sided = std::make_pair(GReal::from_log(left), GReal::from_log(right));
  }
  return res;
}

// exp(x f'(x)/f(x)) with the symbolic ordinary derivative.
inline GReal g_derivative_analytic(const Expr& f, double x) {
  if (!(x > 0.0)) throw domain_error("g_derivative_analytic: requires x > 0");
  double fx = evaluate(f, x);
  if (fx == 0.0) throw domain_error("g_derivative_analytic: f(x) = 0");
  double dfx = evaluate(differentiate(f), x);
  return GReal::from_log(x * dfx / fx);
}

inline GReal g_derivative_analytic(const GFunction& f, double x) {
  if (!f.has_expr()) {
    throw domain_error("g_derivative_analytic: function has no symbolic body");
  }
  return g_derivative_analytic(f.expr(), x);
}

// Log of the first multiplicative derivative as an expression: x*f'/f.
inline Expr log_gderiv_expr(const Expr& f) {
  return detail::s_div(detail::s_mul(Expr::variable(), differentiate(f)), f);
}

namespace detail {

inline double gderiv_log_auto(const GFunction& f, double x) {
  if (f.has_expr()) return g_derivative_analytic(f.expr(), x).log_value();
  GDerivativeResult res = g_derivative_numeric(f, x);
  if (!res.value) {
    throw no_limit_error("g-derivative: one-sided values disagree at the requested point");
  }
  return res.value->log_value();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Higher orders

inline GReal g_derivative_n_analytic(const Expr& f, double x, int n) {
  if (n < 1) throw order_error("g_derivative_n: order must be a positive integer");
  if (!(x > 0.0)) throw domain_error("g_derivative_n: requires x > 0");
  Expr u = log_gderiv_expr(f);
  for (int k = 2; k <= n; ++k) {
    u = detail::s_mul(Expr::variable(), differentiate(u));
  }
  return GReal::from_log(evaluate(u, x));
}

// Centered n-th difference of t -> ln|f(e^t)| at t = ln x, Richardson-refined
// over a halving step schedule.  Noise grows as eps/u^n, so the order is
// capped at 4.
inline GReal g_derivative_n_numeric(const GFunction& f, double x, int n) {
  if (n < 1) throw order_error("g_derivative_n: order must be a positive integer");
  if (n > 4) throw order_error("g_derivative_n: numeric path supports order <= 4");
  if (!(x > 0.0)) throw domain_error("g_derivative_n: requires x > 0");
  if (n == 1) {
    GDerivativeResult res = g_derivative_numeric(f, x);
    if (!res.value) {
      throw no_limit_error("g_derivative_n: one-sided values disagree at the requested point");
    }
    return *res.value;
  }
  double fx = f(x);
  if (fx == 0.0) throw domain_error("g_derivative_n: f(x) = 0");
  const double t = std::log(x);
  auto stencil = [&](double u) {
    double acc = 0.0;
    double sign = 1.0;
    for (int j = 0; j <= n; ++j) {
      double node = f(std::exp(t + (0.5 * n - j) * u));
      if (!(node * fx > 0.0)) {
        throw sign_error("g_derivative_n: sign change across the difference stencil");
      }
      double c = 1.0;
      for (int i = 0; i < j; ++i) c = c * double(n - i) / double(i + 1);
      acc += sign * c * std::log(std::fabs(node));
      sign = -sign;
    }
    return acc / std::pow(u, n);
  };
  constexpr int K = 5;
  double d[K];
  for (int k = 0; k < K; ++k) d[k] = stencil(0.2 / double(1 << k));
  double r1[K - 1];
  for (int k = 0; k + 1 < K; ++k) r1[k] = (4.0 * d[k + 1] - d[k]) / 3.0;
  double r2[K - 2];
  for (int k = 0; k + 2 < K; ++k) r2[k] = (16.0 * r1[k + 1] - r1[k]) / 15.0;
  for (int k = 0; k + 3 < K; ++k) {
    if (std::fabs(r2[k + 1] - r2[k]) <= 1e-8 * std::max(1.0, std::fabs(r2[k + 1]))) {
      return GReal::from_log(r2[k + 1]);
    }
  }
  int best = 1;
  double best_gap = std::fabs(r2[1] - r2[0]);
  for (int k = 1; k + 3 < K; ++k) {
    double gap = std::fabs(r2[k + 1] - r2[k]);
    if (gap < best_gap) {
      best_gap = gap;
      best = k + 1;
    }
  }
  if (best_gap > 1e-3 * std::max(1.0, std::fabs(r2[best]))) {
    throw no_limit_error("g_derivative_n: difference quotients do not converge");
  }
  return GReal::from_log(r2[best]);
}

inline GReal g_derivative_n(const GFunction& f, double x, int n) {
  if (f.has_expr()) return g_derivative_n_analytic(f.expr(), x, n);
  return g_derivative_n_numeric(f, x, n);
}

// ---------------------------------------------------------------------------
// Bridge back to the ordinary derivative: f'(x) = f(x) ln(f^G(x)) / x.

inline double ordinary_from_g(const GFunction& f, double x) {
  if (!(x > 0.0)) throw domain_error("ordinary_from_g: requires x > 0");
  double fx = f(x);
  if (fx == 0.0) throw domain_error("ordinary_from_g: f(x) = 0");
  return fx * detail::gderiv_log_auto(f, x) / x;
}

// ---------------------------------------------------------------------------
// Monotonicity

enum class Monotonicity { increasing, decreasing, stationary };

inline Monotonicity monotonicity_classify(const GFunction& f, double x) {
  constexpr double tau = 1e-9;
  double lg = detail::gderiv_log_auto(f, x);
  if (lg > tau) return Monotonicity::increasing;
  if (lg < -tau) return Monotonicity::decreasing;
  return Monotonicity::stationary;
}

// ---------------------------------------------------------------------------
// Witness finders

// Finds c in ]a,b[ with f^G(c) = k (log residual <= 1e-10) by bisection on
// g(x) = ln f^G(x) - ln k.  Throws bracket_error when k is not attained.
inline double g_intermediate_witness(const GFunction& f, double a, double b, const GReal& k) {
  if (!(0.0 < a && a < b)) throw domain_error("g_intermediate_witness: requires 0 < a < b");
  const double lk = k.log_value();
  std::function<double(double)> g;
  if (f.has_expr()) {
    Expr u = log_gderiv_expr(f.expr());
    g = [u, lk](double x) { return evaluate(u, x) - lk; };
  } else {
    const GFunction* fp = &f;
    g = [fp, lk](double x) {
      GDerivativeResult res = g_derivative_numeric(*fp, x);
      if (!res.value) throw no_limit_error("one-sided derivative inside the bracket");
      return res.value->log_value() - lk;
    };
  }
  constexpr double resid_tol = 1e-10;
  auto sgn = [](double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); };
  try {
    double ga = g(a), gb = g(b);
    int sa = sgn(ga), sb = sgn(gb);
    if ((sa == 0 && sb == 0) || (sa != 0 && sa == sb)) {
      // Flat (constant-derivative) case, or no sign change at all.
      double mid = 0.5 * (a + b);
      if (std::fabs(g(mid)) <= resid_tol) return mid;
      throw bracket_error("g_intermediate_witness: k is not bracketed on [a,b]");
    }
    if (sa == 0) sa = -sb;
    double lo = a, hi = b;
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      double gm = g(mid);
      if (std::fabs(gm) <= resid_tol) return mid;
      if (sgn(gm) == sa) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    throw bracket_error("g_intermediate_witness: no witness located within the iteration budget");
  } catch (const sign_error& e) {
    throw bracket_error(std::string("g_intermediate_witness: ") + e.what());
  } catch (const no_limit_error& e) {
    throw bracket_error(std::string("g_intermediate_witness: ") + e.what());
  }
}

struct MvtWitness {
  std::optional<double> c;  // absent when the mean-value hypothesis fails
  GReal quotient;           // [f(b)/f(a)]^{1/ln(b/a)}
};

inline MvtWitness mvt_witness(const GFunction& f, double a, double b) {
  if (!(0.0 < a && a < b)) throw domain_error("mvt_witness: requires 0 < a < b");
  double fa = f(a), fb = f(b);
  if (fa == 0.0 || !(fb / fa > 0.0)) {
    throw sign_error("mvt_witness: f(a) and f(b) must be nonzero with the same sign");
  }
  MvtWitness out{std::nullopt, GReal::from_log(std::log(fb / fa) / std::log(b / a))};
  try {
    out.c = g_intermediate_witness(f, a, b, out.quotient);
  } catch (const bracket_error&) {
    // Hypotheses violated somewhere on [a,b]; report the quotient alone.
  }
  return out;
}

}  // namespace bigeo
