#pragma once

#include "rellich/rational.hpp"

#include <string>
#include <vector>

namespace rellich {

/** Polynomial in the symbolic log-exponent parameter, with exact rational coefficients. */
class AlphaPoly {
 public:
  AlphaPoly() = default;
  explicit AlphaPoly(Rational c) : c_{std::move(c)} { normalize(); }
  /** a + b*alpha */
  AlphaPoly(Rational a, Rational b) : c_{std::move(a), std::move(b)} { normalize(); }

  static AlphaPoly alpha() { return AlphaPoly(Rational(0), Rational(1)); }
  /** prod_{i=0}^{n-1} (alpha - i); n = 0 gives 1. */
  static AlphaPoly falling_factorial(int n);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const std::vector<Rational>& coeffs() const { return c_; }

  AlphaPoly operator+(const AlphaPoly& o) const;
  AlphaPoly operator-(const AlphaPoly& o) const;
  AlphaPoly operator*(const AlphaPoly& o) const;
  AlphaPoly operator*(const Rational& s) const;
  AlphaPoly operator-() const { return *this * Rational(-1); }
  bool operator==(const AlphaPoly& o) const { return c_ == o.c_; }

  Rational evaluate(const Rational& alpha) const;
  /** e.g. "3/2 - 2*a + a^2" */
  std::string to_string() const;

 private:
  void normalize();
  std::vector<Rational> c_;  // c_[i] * alpha^i, no trailing zeros
};

} // namespace rellich
