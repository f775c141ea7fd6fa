#pragma once

#include "rellich/alpha_poly.hpp"

#include <compare>
#include <map>
#include <vector>

namespace rellich {

/**
 * Identifies a term  c(alpha) * r^{r_power} * (log R/r)^{E}  where the log
 * exponent E is either alpha + log_offset (has_alpha) or the plain integer
 * log_offset. Pure powers of r are terms with has_alpha = false, log_offset = 0.
 */
struct TermKey {
  int r_power = 0;
  bool has_alpha = false;
  int log_offset = 0;
  auto operator<=>(const TermKey&) const = default;
};

/** One term frozen at a concrete alpha: c * r^s * t^e with t = log(R/r). */
struct FrozenTerm {
  Rational c;
  int s = 0;
  Rational e;  // combined log exponent; e == 0 means no log factor
  double cd = 0, ed = 0;
};

/**
 * Finite sum of log-power terms with polynomial-in-alpha coefficients,
 * closed under radial differentiation. Merging happens on the term key and
 * zero coefficients are dropped, so equality is a polynomial identity in alpha.
 */
class TermSum {
 public:
  TermSum() = default;

  static TermSum zero() { return {}; }
  /** The constant 1. */
  static TermSum one();
  /** (log R/r)^(alpha + off). */
  static TermSum log_power_alpha(int off = 0);
  /** (log R/r)^off (integer exponent). */
  static TermSum log_power_int(int off);
  static TermSum monomial(AlphaPoly coeff, TermKey key);
  /** polynomial sum_i coeffs[i] * r^i */
  static TermSum polynomial_in_r(const std::vector<Rational>& coeffs);

  bool is_zero() const { return terms_.empty(); }
  const std::map<TermKey, AlphaPoly>& terms() const { return terms_; }
  bool operator==(const TermSum& o) const { return terms_ == o.terms_; }

  TermSum operator+(const TermSum& o) const;
  TermSum operator-(const TermSum& o) const;
  /** Product; throws std::domain_error if two alpha-carrying exponents would combine. */
  TermSum operator*(const TermSum& o) const;
  TermSum scaled(const Rational& s) const;
  TermSum scaled(const AlphaPoly& s) const;
  /** multiply by r^dr */
  TermSum shifted_r(int dr) const;

  /** d/dr, using d/dr (log R/r)^E = -E r^-1 (log R/r)^(E-1). */
  TermSum radial_diff() const;
  /** f'' + (N-1)/r f' */
  TermSum radial_laplacian(int N) const;
  /**
   * m-fold radial Laplacian, followed by d/dr when odd is set: the radial
   * profile of the m-th polyharmonic (or its gradient magnitude up to sign).
   */
  TermSum polyharmonic(int m, bool odd, int N) const;

  /** Substitute a concrete alpha; drops terms whose coefficient vanishes there. */
  std::vector<FrozenTerm> freeze(const Rational& alpha) const;

  std::string to_string() const;

 private:
  void add_term(const TermKey& k, const AlphaPoly& c);
  std::map<TermKey, AlphaPoly> terms_;
};

/** Evaluate a frozen sum at consistent (r, t = log(R/r)), in double precision. */
double eval_frozen(const std::vector<FrozenTerm>& f, double r, double t);
/**
 * Substitute alpha and evaluate at radius r; throws std::domain_error unless
 * 0 < r < R. Uses log1p so the log factor stays accurate as r -> R, and
 * reruns the sum in extended precision when the double accumulation cancels
 * away more than three digits, so vanishing tails keep relative accuracy.
 */
double evaluate_at(const TermSum& f, const Rational& alpha, double r, double R);
/** Same in extended precision (used near endpoints and in oracles). */
BigFloat eval_frozen_big(const std::vector<FrozenTerm>& f, const BigFloat& r, const BigFloat& t);

} // namespace rellich
