#pragma once

#include "rellich/rayleigh.hpp"

#include <Eigen/SparseCore>

#include <functional>
#include <optional>
#include <vector>

namespace rellich {

/**
 * Truncated window in t = log(R/r). Both singular endpoints (rim t -> 0,
 * origin t -> infinity) are cut off; nodes are spaced geometrically in t
 * (uniformly in log t), which resolves concentration at either endpoint with
 * the same node budget.
 */
struct DiscreteGrid {
  double t_min = 1e-3;
  double t_max = 30.0;
  int n = 1024;
};

/** Quotient parameters for the discrete minimization; the exponent is p = N/k. */
struct MinimizeParams {
  int N = 4;
  int k = 2;
  Rational gamma = 2;
  double a = 1.0;  // denominator weight (t + log a)^{-gamma}
};

/**
 * Discrete quadratic form of the quotient at p = 2 (which forces N = 2k):
 * stiffness encodes the energy integral, mass the weighted denominator, both
 * reduced to the free nodes. The first k node values are pinned to zero (rim
 * trace of the k-th order zero-boundary class). The last max(1, k/2) values
 * are pinned as well: the factored operator annihilates growing exponentials
 * whose mass sits entirely at t_max, and on a truncated window those would
 * masquerade as zero-energy modes; in the untruncated problem the weighted
 * denominator diverges on them, so they are not admissible competitors.
 */
struct DiscreteProblem {
  MinimizeParams params;
  DiscreteGrid grid;
  Eigen::SparseMatrix<double> stiffness;  // free x free
  Eigen::VectorXd mass;                   // diagonal, free nodes
  std::vector<double> t;                  // all node positions, ascending
  std::vector<int> free_nodes;            // node index of each free dof
};

/**
 * Outcome of one discrete minimization. profile holds all node values
 * (pinned zeros included) normalized to unit weighted norm with nonnegative
 * weighted mean. origin_mass_fraction is the share of the weighted mass at
 * radii inside the first radial decade (r < R/10, i.e. t > log 10);
 * boundary_mass_fraction is the complementary share. concentration_indicator
 * reports the endpoint the quotient parameter gamma is closest to, the
 * numerical signature distinguishing escaping from settled minimizers.
 */
struct MinimizationResult {
  double value = 0;
  std::vector<double> profile;
  int iterations = 0;
  double residual = 0;
  bool converged = false;
  double origin_mass_fraction = 0;
  double boundary_mass_fraction = 0;
  double concentration_indicator = 0;
  std::optional<double> second_value;  // reported when the lowest pair is near-degenerate
};

/** Build the reduced quadratic forms; throws std::domain_error unless p = 2 (N = 2k). */
DiscreteProblem assemble(const MinimizeParams& prm, const DiscreteGrid& grid);

/**
 * Smallest generalized eigenvalue of (stiffness, mass) by inverse iteration
 * with Rayleigh-shifted refactorizations; the returned residual satisfies
 * |K v - value M v| <= 1e-10 |K v|. A near-degenerate second eigenvalue is
 * deflated against the first and reported alongside.
 */
MinimizationResult min_eigen(const DiscreteProblem& problem);

/** (4 v_{2n} - v_n) / 3 on a fixed window: second-order stencils leave an h^2 error. */
double richardson_value(const MinimizeParams& prm, const DiscreteGrid& grid);

struct StudyRow {
  int level = 0;
  int n = 0;
  double t_min = 0;
  double t_max = 0;
  double value = 0;
  double indicator = 0;
};

/**
 * Eigenvalue study over nested windows: level l squares both base window ends
 * (requires t_min < 1 < t_max) and doubles the nodes, so the log-length of
 * the window doubles per level at constant node spacing. Escaping regimes
 * advance only logarithmically in t; the window must widen multiplicatively
 * in the log coordinate, not just refine, before the trend shows.
 */
std::vector<StudyRow> refinement_study(const MinimizeParams& prm, const DiscreteGrid& base,
                                       int levels);

/**
 * Cosine of the angle between a discrete profile and the shape t^q in the
 * weighted inner product of the problem's denominator, restricted to the band
 * of nodes holding the [mass_lo, mass_hi] quantiles of the profile's own
 * weighted mass. The band keeps the comparison away from both truncation
 * ends, where pinning and the finite window distort an escaping profile.
 */
double shape_cosine(const DiscreteProblem& problem, const std::vector<double>& profile, double q,
                    double mass_lo = 0.25, double mass_hi = 0.75);

/**
 * Direct minimization of the general-p quotient over a spline space: degree-k
 * B-splines on a uniform knot vector over t in [0, T], first and last k
 * coefficients pinned (k-fold zeros at both window ends keep the profile in
 * the zero-boundary class after zero extension). The quotient is evaluated
 * through the exact piecewise machinery and descended by BFGS with analytic
 * integrand derivatives; the result is an upper bound on the infimum, not a
 * certified value. init is sampled at the Greville points of the basis; pass
 * an empty function for the built-in log-power seed.
 */
MinimizationResult minimize_quotient_general_p(const MinimizeParams& prm, int basis_size,
                                               std::function<double(double)> init = {},
                                               double window = 12.0);

/** The spline iterate of the general-p path as a piecewise profile (R = 1). */
RadialProfile spline_profile(int k, double window, const std::vector<double>& coeffs);

} // namespace rellich
