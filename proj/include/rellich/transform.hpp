#pragma once

#include "rellich/profiles.hpp"
#include "rellich/quadrature.hpp"

#include <string>
#include <utility>
#include <vector>

namespace rellich {

/** Two independently computed sides of one integral identity. */
struct IdentityCheck {
  std::string identity_id;
  double lhs = 0;
  double rhs = 0;
  double rel_err = 0;     // |lhs - rhs| / max(|lhs|, |rhs|)
  double quad_error = 0;  // accumulated absolute error estimates of all integrals
  std::vector<std::pair<std::string, double>> params_used;
};

/** Decaying radial profile on (0, inf): w(t) = q(t^2) e^{-t^2}, q given by ascending coefficients. */
struct GaussianPolyProfile {
  std::vector<Rational> even_coeffs{1};
};

double eval_gaussian_poly(const GaussianPolyProfile& w, double t);

/**
 * Parameters of the change of variable t = (r^{-alpha} - R^{-alpha})^{-1/alpha}
 * mapping (0, R) onto (0, inf). Requires 1 < p < N/2 and alpha > 0.
 */
struct TransformParams {
  int N = 5;
  Rational p = 2;
  Rational alpha = 1;
  Rational R = 1;
  double tol = 1e-10;
};

/** Weight exponent beta = ((2p-1)(alpha+1)+1-N)/alpha of the image energy. */
Rational transform_beta(const TransformParams& tp);

/** alpha = (N-2p)/(p-1): the image weight exponent equals p. */
Rational alpha_matching_power_weight(int N, const Rational& p);

/** alpha = (N-2p)/(2p-1): the image energy weight is identically 1. */
Rational alpha_flattening_weight(int N, const Rational& p);

/**
 * Second-order energies agree: int |w'' + (N-1)w'/t|^p t^{N-1} dt over (0, inf)
 * equals int |L u|^p (1-(r/R)^alpha)^beta r^{N-1} dr over (0, R), where
 * u(r) = w(t(r)) and L u = u'' + u'/r [(alpha+1) + (N-alpha-2)/(1-(r/R)^alpha)].
 * Both sides by independent quadratures.
 */
IdentityCheck transform_energy_identity(const GaussianPolyProfile& w, const TransformParams& tp);

/**
 * Potential integrals agree: int |w|^p t^{N-1-2p} dt equals
 * int |u|^p r^{N-1-2p} (1-(r/R)^alpha)^{-(N-2p+alpha)/alpha} dr.
 */
IdentityCheck transform_potential_identity(const GaussianPolyProfile& w, const TransformParams& tp);

/**
 * The energy/potential quotient computed on (0, inf) equals the image quotient
 * on (0, R); params_used carries both second-order margins against the sharp
 * subcritical constant (N(p-1)(N-2p)/p^2)^p, which must be nonnegative.
 */
IdentityCheck transform_quotient_identity(const GaussianPolyProfile& w, const TransformParams& tp);

/**
 * Weighted-log integral of the stretched profile u_lambda(r) = lambda^a u(s),
 * s = r^lambda R^{1-lambda}: int |u_lambda|^p r^{-1} log(R/r)^{-gamma} dr
 * equals lambda^{ap+gamma-1} times the same integral of u. The left side is
 * integrated pointwise over the stretched piece images, the right side through
 * the closed-form path, so the exponent law is cross-checked by two
 * independent integrators. Profiles vanishing near the origin keep every image
 * on a compact interval.
 */
IdentityCheck scaling_log_identity(const RadialProfile& u, const Rational& p,
                                   const Rational& gamma, const Rational& lambda,
                                   const Rational& a_exp);

/**
 * First-order quotient int |u'|^N r^{N-1} dr / int |u|^N r^{-1} log^{-N} dr is
 * invariant under u_lambda(r) = lambda^{-(N-1)/N} u(s). The gradient integral
 * keeps no residual r-weight exactly when the exponent equals the dimension,
 * which is where the invariance is exact and checked.
 */
IdentityCheck scaling_quotient_invariance(const RadialProfile& u, int N, const Rational& lambda);

/**
 * Second-order energy of the stretched profile: int |lap u_lambda|^p r^{N-1} dr
 * equals lambda^{ap+N-1} int |u''(s) + ((N-2)/lambda + 1) u'(s)/s|^p s^{N-1} ds.
 * Requires p = N/2: only then does the change of variables carry the r-weight
 * into the s-weight without a residual power, making the law exact.
 */
IdentityCheck scaling_lap_identity(const RadialProfile& u, int N, const Rational& p,
                                   const Rational& lambda, const Rational& a_exp);

struct ScalingBoundSample {
  Rational lambda;
  double energy;    // int |lap u_lambda|^p r^{N-1} dr
  double envelope;  // C_u * max(lambda^{ap+N-1}, lambda^{ap+p-1})
};

/**
 * Samples the second-order energy of u_lambda against the explicit envelope
 * C_u max(lambda^{ap+N-1}, lambda^{ap+p-1}) with
 * C_u = 2^{p-1} (int |u''+u'/s|^p s^{N-1} + (N-2)^p int |u'|^p s^{N-1-p}).
 * The two envelope exponents coincide with the energy's growth orders exactly
 * at p = N/2, which is required.
 */
std::vector<ScalingBoundSample> scaling_lap_bound(const RadialProfile& u, int N, const Rational& p,
                                                  const Rational& a_exp,
                                                  const std::vector<Rational>& lambdas);

} // namespace rellich
