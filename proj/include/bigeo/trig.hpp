#pragma once

// Multiplicative trigonometry.  Angles stay ordinary radians; only the ratio
// values live in the multiplicative field, via the bridge  value = e^{ratio}.
// A triplet (h, p, b) with (ln h)^2 = (ln p)^2 + (ln b)^2 plays the role of a
// right triangle with every side above the multiplicative zero 1.

#include <cmath>

#include "bigeo/errors.hpp"
#include "bigeo/greal.hpp"

namespace bigeo {

enum class TrigKind { sing, cosg, tang, cotg, secg, cscg };

namespace detail {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfPi = 1.57079632679489661923;

inline bool at_cos_zero(double theta) {
  return std::fabs(std::remainder(theta - kHalfPi, kPi)) < 1e-12;
}
inline bool at_sin_zero(double theta) {
  return std::fabs(std::remainder(theta, kPi)) < 1e-12;
}

}  // namespace detail

inline GReal g_trig(TrigKind kind, double theta) {
  switch (kind) {
    case TrigKind::sing:
      return GReal::from_log(std::sin(theta));
    case TrigKind::cosg:
      return GReal::from_log(std::cos(theta));
    case TrigKind::tang:
      if (detail::at_cos_zero(theta)) throw domain_error("g_trig: tangent pole");
      return GReal::from_log(std::tan(theta));
    case TrigKind::cotg:
      if (detail::at_sin_zero(theta)) throw domain_error("g_trig: cotangent pole");
      return GReal::from_log(std::cos(theta) / std::sin(theta));
    case TrigKind::secg:
      if (detail::at_cos_zero(theta)) throw domain_error("g_trig: secant pole");
      return GReal::from_log(1.0 / std::cos(theta));
    case TrigKind::cscg:
      if (detail::at_sin_zero(theta)) throw domain_error("g_trig: cosecant pole");
      return GReal::from_log(1.0 / std::sin(theta));
  }
  throw std::logic_error("g_trig: bad kind");
}

inline bool triplet_check(const GReal& x, const GReal& y, const GReal& z) {
  const double lx = x.log_value(), ly = y.log_value(), lz = z.log_value();
  const double lhs = lx * lx;
  const double rhs = ly * ly + lz * lz;
  return std::fabs(lhs - rhs) <= 1e-10 * std::max({1.0, lhs, rhs});
}

class GTriplet {
 public:
  GTriplet(GReal hyp, GReal opp, GReal adj) : h_(hyp), p_(opp), b_(adj) {
    if (!(h_.log_value() > 0.0 && p_.log_value() > 0.0 && b_.log_value() > 0.0)) {
      throw domain_error("GTriplet: each side must exceed 1");
    }
    const double lhs = h_.log_value() * h_.log_value();
    const double rhs =
        p_.log_value() * p_.log_value() + b_.log_value() * b_.log_value();
    if (std::fabs(lhs - rhs) > 1e-12 * std::max({1.0, lhs, rhs})) {
      throw domain_error("GTriplet: sides violate the multiplicative Pythagorean relation");
    }
  }

  const GReal& hyp() const { return h_; }
  const GReal& opp() const { return p_; }
  const GReal& adj() const { return b_; }

 private:
  GReal h_, p_, b_;
};

// {e^{m^2+1}, e^{m^2-1}, e^{2m}} from the ordinary parametric family.
inline GTriplet triplet_generate(long long m) {
  if (m < 2) throw domain_error("triplet_generate: requires m >= 2");
  if (m > 94906265LL) {
    throw range_error("triplet_generate: m^2 is not exactly representable");
  }
  const double m2 = static_cast<double>(m) * static_cast<double>(m);
  return GTriplet(GReal::from_log(m2 + 1.0), GReal::from_log(m2 - 1.0),
                  GReal::from_log(2.0 * static_cast<double>(m)));
}

inline GReal g_trig_from_triangle(const GTriplet& t, TrigKind kind) {
  switch (kind) {
    case TrigKind::sing:
      return g_div(t.opp(), t.hyp());
    case TrigKind::cosg:
      return g_div(t.adj(), t.hyp());
    case TrigKind::tang:
      return g_div(t.opp(), t.adj());
    case TrigKind::cotg:
      return g_div(t.adj(), t.opp());
    case TrigKind::secg:
      return g_div(t.hyp(), t.adj());
    case TrigKind::cscg:
      return g_div(t.hyp(), t.opp());
  }
  throw std::logic_error("g_trig_from_triangle: bad kind");
}

// ln(base) * ln(altitude) / 2, an ordinary real.
inline double g_triangle_area(const GReal& base, const GReal& altitude) {
  if (!(base.log_value() > 0.0 && altitude.log_value() > 0.0)) {
    throw domain_error("g_triangle_area: sides must exceed 1");
  }
  return base.log_value() * altitude.log_value() / 2.0;
}

}  // namespace bigeo
