#pragma once

// Growth and economics helpers built on the multiplicative derivative.
// For y = a b^x the multiplicative derivative is b^x, the total growth at x;
// for a demand curve, ln of the multiplicative derivative is the price
// elasticity, and e^{elasticity} the resiliency.

#include "bigeo/derivative.hpp"
#include "bigeo/errors.hpp"
#include "bigeo/gfunction.hpp"
#include "bigeo/greal.hpp"

namespace bigeo {

inline GReal total_growth(const GFunction& f, double x) {
  if (!(x > 0.0)) throw domain_error("total_growth: requires x > 0");
  return GReal::from_log(detail::gderiv_log_auto(f, x));
}

struct ElasticityReport {
  double price;
  double elasticity;   // E_p = price * y'/y = ln(g_derivative)
  GReal g_derivative;  // e^{E_p}
  GReal resiliency;    // equal to g_derivative
  DerivMethod method;
};

inline ElasticityReport price_elasticity(const GFunction& demand, double price) {
  if (!(price > 0.0)) throw domain_error("price_elasticity: requires price > 0");
  if (demand(price) == 0.0) {
    throw domain_error("price_elasticity: demand vanishes at the given price");
  }
  const double ep = detail::gderiv_log_auto(demand, price);
  const GReal gd = GReal::from_log(ep);
  return ElasticityReport{price, ep, gd, gd,
                          demand.has_expr() ? DerivMethod::analytic_bridge
                                            : DerivMethod::numeric_limit};
}

}  // namespace bigeo
