#pragma once

// Arithmetic on the positive reals generated by exp:
//   x (+) y = x*y, x (-) y = x/y, x (*) y = x^(ln y), x (/) y = x^(1/ln y).
// The additive neutral element is 1, the multiplicative one is e.  A value is
// stored as its natural log, so (+)/(-) become ordinary +/- and (*)/(/)
// become ordinary *// on the log; that keeps quantities like e^120 exact-ish
// and overflow-free.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "bigeo/errors.hpp"

namespace bigeo {

namespace detail {

// Double-double helpers: an unevaluated sum hi+lo with |lo| <= ulp(hi)/2.
// Used where a plain double accumulation would lose the cancellation-heavy
// alternating sums (binomial expansion totals).
struct dd {
  double hi = 0.0;
  double lo = 0.0;
};

inline dd two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline dd two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline dd dd_add(dd x, dd y) {
  dd s = two_sum(x.hi, y.hi);
  double lo = x.lo + y.lo + s.lo;
  return two_sum(s.hi, lo);
}

inline dd dd_mul(dd x, dd y) {
  dd p = two_prod(x.hi, y.hi);
  double lo = x.hi * y.lo + x.lo * y.hi + p.lo;
  return two_sum(p.hi, lo);
}

inline dd dd_mul(dd x, double y) { return dd_mul(x, dd{y, 0.0}); }

inline double checked_log(double lv, const char* op) {
  if (!std::isfinite(lv)) {
    throw range_error(std::string(op) + ": log value left the finite range");
  }
  return lv;
}

}  // namespace detail

// A positive real viewed as an element of the geometric field, stored as its
// natural log.  log_value is always finite.
class GReal {
 public:
  // Default is the geometric zero (raw value 1).
  GReal() = default;

  static GReal from_value(double v) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw domain_error("GReal: raw value must be a finite positive real");
    }
    return GReal(std::log(v));
  }

  static GReal from_log(double lv) {
    detail::checked_log(lv, "GReal::from_log");
    return GReal(lv);
  }

  double log_value() const noexcept { return log_; }
  double value() const noexcept { return std::exp(log_); }

  friend bool operator==(GReal a, GReal b) noexcept { return a.log_ == b.log_; }
  friend bool operator!=(GReal a, GReal b) noexcept { return a.log_ != b.log_; }
  // Ordering matches ordinary ordering of the raw values.
  friend bool operator<(GReal a, GReal b) noexcept { return a.log_ < b.log_; }
  friend bool operator<=(GReal a, GReal b) noexcept { return a.log_ <= b.log_; }
  friend bool operator>(GReal a, GReal b) noexcept { return a.log_ > b.log_; }
  friend bool operator>=(GReal a, GReal b) noexcept { return a.log_ >= b.log_; }

 private:
  explicit GReal(double lv) : log_(lv) {}
  double log_ = 0.0;
};

inline GReal geometric_zero() { return GReal(); }               // 1
inline GReal geometric_identity() { return GReal::from_log(1); }  // e

// Tolerant comparison for tests and reports: relative on the log values with
// an absolute floor of `tol` near the geometric zero.
inline bool g_close(GReal a, GReal b, double tol = 1e-12) {
  double la = a.log_value(), lb = b.log_value();
  double scale = std::max(1.0, std::max(std::fabs(la), std::fabs(lb)));
  return std::fabs(la - lb) <= tol * scale;
}

inline GReal g_add(GReal x, GReal y) {
  return GReal::from_log(detail::checked_log(x.log_value() + y.log_value(), "g_add"));
}

inline GReal g_sub(GReal x, GReal y) {
  return GReal::from_log(detail::checked_log(x.log_value() - y.log_value(), "g_sub"));
}

inline GReal g_mul(GReal x, GReal y) {
  return GReal::from_log(detail::checked_log(x.log_value() * y.log_value(), "g_mul"));
}

inline GReal g_div(GReal x, GReal y) {
  if (y.log_value() == 0.0) {
    throw domain_error("g_div: division by the geometric zero (raw value 1)");
  }
  return GReal::from_log(detail::checked_log(x.log_value() / y.log_value(), "g_div"));
}

// Geometric power x^(n_G) = x (*) x (*) ... (*) x, n factors; log is (ln x)^n.
// n = 0 gives the multiplicative identity e for every x.
inline GReal g_pow(GReal x, int n) {
  if (n == 0) return geometric_identity();
  if (n < 0 && x.log_value() == 0.0) {
    throw domain_error("g_pow: negative geometric power of the geometric zero");
  }
  return GReal::from_log(
      detail::checked_log(std::pow(x.log_value(), static_cast<double>(n)), "g_pow"));
}

// |x| in the geometric sense: x for x >= 1, 1/x for x < 1; log is |ln x|.
inline GReal g_abs(GReal x) { return GReal::from_log(std::fabs(x.log_value())); }

// Geometric factorial: e^(n!).
inline GReal g_factorial(int n) {
  if (n < 0) throw domain_error("g_factorial: order must be non-negative");
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  if (!std::isfinite(f)) {
    throw range_error("g_factorial: factorial exceeds the log range");
  }
  return GReal::from_log(f);
}

// Exact integer binomial coefficient; orders above 20 are refused rather than
// silently rounded.
inline std::uint64_t binomial_coefficient(int n, int k) {
  if (n < 0 || k < 0 || k > n) {
    throw domain_error("binomial_coefficient: need 0 <= k <= n");
  }
  if (n > 20) {
    throw range_error("binomial_coefficient: exact integer coefficients are kept only up to n = 20");
  }
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return c;
}

struct BinomialExpansion {
  std::vector<GReal> terms;  // n+1 terms, k = 0..n
  GReal total;               // their geometric sum
};

// Expansion of (a (+) b)^(n_G), or (a (-) b)^(n_G) when `signed_variant`:
// term k has log (+-1)^k * C(n,k) * (ln a)^(n-k) * (ln b)^k.  The total is
// accumulated in double-double so it tracks the direct power even when the
// alternating sum cancels heavily.
inline BinomialExpansion g_binomial_expand(GReal a, GReal b, int n,
                                           bool signed_variant = false) {
  if (n < 0) throw domain_error("g_binomial_expand: order must be non-negative");
  binomial_coefficient(n, 0);  // range-checks n
  const double la = a.log_value(), lb = b.log_value();

  std::vector<detail::dd> pa(static_cast<std::size_t>(n) + 1);
  std::vector<detail::dd> pb(static_cast<std::size_t>(n) + 1);
  pa[0] = pb[0] = detail::dd{1.0, 0.0};
  for (int i = 1; i <= n; ++i) {
    pa[static_cast<std::size_t>(i)] = detail::dd_mul(pa[static_cast<std::size_t>(i - 1)], la);
    pb[static_cast<std::size_t>(i)] = detail::dd_mul(pb[static_cast<std::size_t>(i - 1)], lb);
  }

  BinomialExpansion out;
  out.terms.reserve(static_cast<std::size_t>(n) + 1);
  detail::dd sum{0.0, 0.0};
  for (int k = 0; k <= n; ++k) {
    detail::dd t = detail::dd_mul(pa[static_cast<std::size_t>(n - k)], pb[static_cast<std::size_t>(k)]);
    t = detail::dd_mul(t, static_cast<double>(binomial_coefficient(n, k)));
    if (signed_variant && (k % 2) == 1) {
      t.hi = -t.hi;
      t.lo = -t.lo;
    }
    out.terms.push_back(GReal::from_log(detail::checked_log(t.hi + t.lo, "g_binomial_expand")));
    sum = detail::dd_add(sum, t);
  }
  out.total = GReal::from_log(detail::checked_log(sum.hi + sum.lo, "g_binomial_expand"));
  return out;
}

// Display: raw decimal at 6 significant digits while the raw value is
// comfortable, the e^k log form once |log| exceeds 20.
inline std::string to_string(GReal x) {
  char buf[64];
  if (std::fabs(x.log_value()) > 20.0) {
    std::snprintf(buf, sizeof buf, "e^%.6g", x.log_value());
  } else {
    std::snprintf(buf, sizeof buf, "%.6g", x.value());
  }
  return buf;
}

inline std::ostream& operator<<(std::ostream& os, GReal x) { return os << to_string(x); }

}  // namespace bigeo
