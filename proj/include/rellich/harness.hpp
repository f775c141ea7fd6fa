#pragma once

#include "rellich/quadrature.hpp"

#include <string>
#include <utility>
#include <vector>

namespace rellich {

/**
 * Two sides of one weighted inequality evaluated on a concrete function.
 * slack = rhs - lhs; the inequality holds when slack >= -quad_error up to
 * the quadrature tolerance. quad_error accumulates the absolute error
 * estimates of every integral, weighted by its constant.
 */
struct Margin {
  std::string inequality_id;
  double lhs = 0;
  double rhs = 0;
  double slack = 0;
  double quad_error = 0;
  std::vector<std::pair<std::string, double>> params_used;
};

/**
 * Shared parameters of the inequality checks. p is free (not tied to N/k);
 * k and a are read only by the checks that use them.
 */
struct HarnessParams {
  int N = 4;
  int k = 2;
  Rational p = 2;
  Rational R = 1;
  Rational a = 1;
  double tol = 1e-10;
};

/**
 * Weighted first-order bound with both endpoint singularities, including its
 * (N-p)-weighted remainder:
 *   ((p-1)/p)^p I[|u|^p r^{-p} log^{-p}] + (N-p)((p-1)/p)^{p-1} I[|u|^p r^{-p} log^{-(p-1)}]
 *     <= I[|u'|^p],
 * all against r^{N-1} dr. Requires 1 < p <= N.
 */
Margin check_new_hardy(const RadialProfile& u, const HarnessParams& hp);

/**
 * Doubly weighted first-order bound with remainder
 *   ((b+p-1)/p)^p I[|u|^p r^{-a-p} log^{-(b+p)}]
 *     + (N-p-a)((b+p-1)/p)^{p-1} I[|u|^p r^{-a-p} log^{-(b+p-1)}]  <= I[|u'|^p r^{-a} log^{-b}].
 * Requires beta >= 1-p, and alpha <= N-p unless u vanishes near the origin
 * (pass origin_vanishing = true to assert that).
 */
Margin check_gh(const RadialProfile& u, const HarnessParams& hp, const Rational& alpha,
                const Rational& beta, bool origin_vanishing = false);

/**
 * Second-to-first-order bound for radial u, with the signed two-term lower
 * bound that the first-order chain produces:
 *   ((b+p-1)/p)^p I[|u'|^p r^{-a-p} log^{-(b+p)}]
 *     + (N-a-Np)((b+p-1)/p)^{p-1} I[|u'|^p r^{-a-p} log^{-(b+p-1)}]  <= I[|lap u|^p r^{-a} log^{-b}].
 */
Margin check_lap_hardy(const RadialProfile& u, const HarnessParams& hp, const Rational& alpha,
                       const Rational& beta);

/** The p = 2, alpha = beta = 0 instance with its (N-2)/2 remainder term. */
Margin check_lap_hardy2(const RadialProfile& u, const HarnessParams& hp);

/**
 * The four k-th order lower-bound chains (k = 2m even, k = 2m+1 odd; rim-type
 * potentials carry log^{-kp}, origin-type carry log^{-p}).
 */
enum class ChainVariant { even_rim, even_origin, odd_rim, odd_origin };

/**
 * Margin of the selected chain on a radial function, remainder included.
 * Admissible ranges: even_rim / odd_rim need alpha <= N - kp; even_origin
 * needs 2(1-p) < alpha <= N-2mp; odd_origin needs 2-3p < alpha <= N-(2m+1)p.
 * When the remainder's inner weight exponent hits N-p its sharp constant is
 * unknown, so that remainder is dropped (margin of the main term only).
 */
Margin check_gene_main(const RadialProfile& u, const HarnessParams& hp, ChainVariant variant,
                       int m, const Rational& alpha);

/**
 * Subcritical polyharmonic bound I[|u|^p r^{-b}] <= C(N,m,p,b)^p I[|lap^m u|^p r^{-b+2mp}]
 * for 2(1+(m-1)p) < beta < N. Valid with or without origin vanishing.
 */
Margin check_davies_hinz(const RadialProfile& u, const HarnessParams& hp, int m,
                         const Rational& beta);

/** |N-(N+d)/p|^p I[|u'|^p r^{d-p}] <= I[|lap u|^p r^{d}] for radial u. */
Margin check_musina(const RadialProfile& u, const HarnessParams& hp, const Rational& delta);

/** ((N+d)/p - 1)^p I[|u|^p r^{d-p}] <= I[|u'|^p r^{d}], requires p < N+d. */
Margin check_h1to0(const RadialProfile& u, const HarnessParams& hp, const Rational& delta);

/**
 * One-dimensional weighted bound |(a+1-p)/p|^p int r^{a-p}|w|^p <= int r^a |w'|^p
 * (no surface factor) for w with w(0) = w(R) = 0.
 */
Margin check_1dim_hardy(const RadialProfile& w, const HarnessParams& hp, const Rational& a_exp);

/**
 * k-th order critical bound with the shifted weight log(aR/r), a >= 1, whose
 * constant is the gamma = p sharp value independently of a.
 */
Margin check_nonsharp_critical(const RadialProfile& u, const HarnessParams& hp);

/**
 * Limiting first-order form at p = N/2:
 *   (2A/N)^{N/2} I[|u|^{N/2} r^{-1} log^{-(1+A)}] <= I[|u'|^{N/2} r^{N/2-1} log^{N/2-A-1}]
 * (the r^{N-1} dr density is folded in). Requires A > 0 and hp.p = N/2.
 */
Margin check_lim_ineq(const RadialProfile& u, const HarnessParams& hp, const Rational& A_exp);

/**
 * The N = 8, R = 1 chain comparison: second-to-first order step, the weighted
 * second-order step with its non-radial constant 25, the weighted log bound,
 * the curl-free improvement 77, and the radial two-step improvement 144.
 */
std::vector<Margin> section5_chain_check(const RadialProfile& u, double tol = 1e-10);

} // namespace rellich
