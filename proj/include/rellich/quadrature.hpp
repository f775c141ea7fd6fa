#pragma once

#include "rellich/profiles.hpp"

#include <functional>

namespace rellich {

enum class IntegralStatus {
  converged,          // error estimate within tolerance
  divergent,          // endpoint analysis proves the integral is infinite
  tolerance_not_met,  // finite, but the requested tolerance was not certified
};

struct QuadratureResult {
  double value = 0;  // 0 (not inf) when status == divergent, so the field stays finite
  double abs_error_estimate = 0;
  int subdivisions = 0;
  IntegralStatus status = IntegralStatus::converged;
  bool ok() const { return status == IntegralStatus::converged; }
};

/** Weight r^{r_power} (log(a R/r))^{log_power} with a >= 1. */
struct WeightSpec {
  Rational r_power = 0;
  Rational log_power = 0;
  Rational a = 1;
};

/**
 * integral_0^R |f(r)|^{p_exp} r^{w.r_power} (log(a R/r))^{w.log_power} dr.
 *
 * Works in t = log(R/r): each closed-form piece maps to a t-interval, both
 * endpoint behaviors are classified exactly in rational arithmetic (order of
 * vanishing at t -> 0 via exact Taylor expansion of the piece; decay exponents
 * at t -> infinity from the factored leading term), divergence is flagged
 * analytically rather than by runaway refinement, slowly decaying power tails
 * are mapped to (0,1] by t -> T/x, and everything else goes through adaptive
 * Gauss-Kronrod / tanh-sinh panels whose error estimates are accumulated.
 */
QuadratureResult integrate_power(const RadialProfile& f, const Rational& p_exp,
                                 const WeightSpec& w, double tol = 1e-10);

/**
 * Plain adaptive integral of g on (lo, hi); hi may be +infinity. No analytic
 * divergence detection — a non-finite estimate is reported as divergent.
 */
QuadratureResult integrate_function(const std::function<double(double)>& g, double lo, double hi,
                                    double tol = 1e-10);

/** The profile c * u (every piece scaled). */
RadialProfile scale_profile(const RadialProfile& u, const Rational& c);

} // namespace rellich
