#pragma once

#include "rellich/log_terms.hpp"

#include <vector>

namespace rellich {

/**
 * Polynomial transition window: the bump is identically 1 deep inside,
 * identically 0 near the rim, and a C^q smoothstep of degree 2q+1 in between.
 *
 * radial:      inner/outer are radii; the smoothstep argument is
 *              (r - inner)/(outer - inner), so the bump is 1 on (0, inner].
 * logarithmic: inner/outer are values of t = log(R/r); the smoothstep argument
 *              is (t - inner)/(outer - inner), so the bump is 1 for t >= outer
 *              (r <= R e^{-outer}) and 0 for t <= inner (r >= R e^{-inner}).
 *              Rational t-breakpoints keep the transition polynomial exact; the
 *              corresponding radii R e^{-t} are irrational and stored as
 *              doubles. The gentle slope in t makes high derivatives of the
 *              window cheap, which is what the quotient sweeps need.
 */
struct CutoffSpec {
  enum class Window { radial, logarithmic };
  Rational inner;
  Rational outer;
  int q = 3;
  Window window = Window::radial;
};

/** Coefficients (ascending) of the degree-2q+1 smoothstep S_q with S_q(0)=0, S_q(1)=1. */
std::vector<Rational> smoothstep_coeffs(int q);

/** p(c0 + c1*y) for p given by ascending coefficients. */
std::vector<Rational> poly_compose_affine(const std::vector<Rational>& poly, const Rational& c0,
                                          const Rational& c1);

struct ProfilePiece {
  double r_lo = 0;
  double r_hi = 0;
  TermSum form;  // closed form on (r_lo, r_hi); zero TermSum means the piece vanishes
};

/**
 * Piecewise closed-form radial function on (0, R). Every piece is a TermSum in
 * (r, log R/r) with one symbolic exponent slot; `alpha` is the value that slot
 * takes for this profile. Pieces are ordered and cover (0, R) without overlap.
 */
struct RadialProfile {
  Rational R = 1;
  Rational alpha = 0;
  std::vector<ProfilePiece> pieces;
  // Highest derivative that exists piecewise without distributional parts at
  // the junctions: one more than the number of globally continuous derivatives.
  int derivative_order_available = 0;
};

/**
 * (log R/r)^{(p-1)/p - eps} times the cutoff: full log power on (0, inner],
 * smoothstep transition, zero beyond outer. Throws std::domain_error unless
 * 0 < eps < (p-1)/p and the transition is at least C^{k+1}.
 */
RadialProfile make_phi_eps(int N, int k, const Rational& R, const Rational& eps,
                           const CutoffSpec& cutoff);

/** (log R/r)^{(N-1)/p + eps} times (1 - cutoff): supported near the rim. Requires eps > 0. */
RadialProfile make_psi_eps(int N, int k, const Rational& R, const Rational& eps,
                           const CutoffSpec& cutoff);

/**
 * First-order family: 1 on (0, R/e], (log R/r)^g on (R/e, R). Continuous but
 * only piecewise smooth; requires g > (p-1)/p. The interior breakpoint R/e is
 * irrational, so it is stored in double precision only.
 */
RadialProfile make_psi_gamma_hardy(int N, int k, const Rational& R, const Rational& gamma_exp);

/** Pure log power (log R/r)^{(p-1)/p} on all of (0, R) (origin-concentrating shape). */
RadialProfile make_v1(int N, int k, const Rational& R);
/** Pure log power (log R/r)^{(N-1)/p} on all of (0, R) (rim-concentrating shape). */
RadialProfile make_v2(int N, int k, const Rational& R);

/** Single piece (0, R) holding an arbitrary closed form. */
RadialProfile make_single_piece(const Rational& R, TermSum form, const Rational& alpha,
                                int derivative_order);

/**
 * Piecewise closed form of the k-th derivative object: Lap^m u for k = 2m, the
 * signed radial derivative (Lap^m u)' for k = 2m+1. Throws std::domain_error
 * if the profile's smoothness budget is below k.
 */
RadialProfile kth_derivative_profile(const RadialProfile& u, int k, int N);

/** Value at radius r; zero-extended for r >= R, throws for r <= 0. */
double evaluate(const RadialProfile& u, double r);

} // namespace rellich
