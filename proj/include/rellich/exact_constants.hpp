#pragma once

#include "rellich/rational.hpp"

#include <string>
#include <vector>

namespace rellich {

/**
 * A constant kept in exact form base^exponent (both rational).
 * Comparisons are exact within an equal-exponent family; decimal output is
 * computed in extended precision.
 */
struct ExactConstant {
  Rational base;
  Rational exponent;

  double value() const;
  BigFloat value_big() const;
  /** Decimal expansion of base^exponent with at least `digits` significant digits. */
  std::string to_decimal(int digits = 30) const;

  bool same_family(const ExactConstant& o) const { return exponent == o.exponent; }
  /** Exact equality; requires equal exponents unless one side has base 0/1. */
  bool equals(const ExactConstant& o) const;
  bool operator==(const ExactConstant& o) const { return equals(o); }
};

/** Best constant of the k-th order subcritical inequality (kp < N); exponent p. */
ExactConstant subcritical_rellich_constant(int N, int k, const Rational& p);

/**
 * Best constant of the critical quotient with weight gamma = p = N/k
 * (origin-side virtual minimizer); exponent p. Requires N > k >= 2.
 */
ExactConstant critical_origin_constant(int N, int k);

/**
 * Best constant of the critical quotient with weight gamma = N
 * (boundary-side virtual minimizer); exponent p = N/k. Requires N > k >= 1.
 */
ExactConstant critical_boundary_constant(int N, int k);

/** Weighted polyharmonic chain constant C(N,m,p,beta); exponent 1. Requires 2(1+(m-1)p) < beta < N. */
ExactConstant davies_hinz_constant(int N, int m, const Rational& p, const Rational& beta);

/** Even-order chain constant D(N,m,p,alpha); exponent 1. Requires 2(1-p) < alpha <= N-2mp. */
ExactConstant chain_constant_D(int N, int m, const Rational& p, const Rational& alpha);

/** Odd-order chain constant E(N,m,p,alpha) = D(N,m,p,alpha+p)*(N-alpha-p)/p; exponent 1. */
ExactConstant chain_constant_E(int N, int m, const Rational& p, const Rational& alpha);

/** Earlier literature constant A(N,m) for N = 4m, m >= 2; exponent 2. */
ExactConstant adimurthi_santra_constant(int N, int m);

/** ((beta+p-1)/p)^p, the sharp one-dimensional Hardy weight constant. */
ExactConstant hardy_weight_constant(const Rational& p, const Rational& beta);

/** One multiplicative step of a lower-bound chain, kept as an exact factor. */
struct ChainFactor {
  std::string label;
  ExactConstant factor;
};

/**
 * Comparison of the sharp radial constant at (k,p) = (2m,2), N = 4m against the
 * earlier non-radial chain bound, with the two chains' factors for m = 2.
 */
struct GapAnalysis {
  int m = 0;
  int N = 0;
  ExactConstant sharp;            // critical_origin_constant(4m, 2m), exponent 2
  ExactConstant earlier;          // adimurthi_santra_constant(4m, m), exponent 2
  Rational ratio;                 // sharp value / earlier value (exact, both squared)
  Rational earlier_over_product;  // A(N,m) / prod_{i=1..m}(N-2i), the closeness diagnostic
  std::vector<ChainFactor> sharp_chain;    // populated for m == 2
  std::vector<ChainFactor> earlier_chain;  // populated for m == 2
  Rational sharp_chain_product;
  Rational earlier_chain_product;
};

GapAnalysis gap_analysis(int m);

} // namespace rellich
