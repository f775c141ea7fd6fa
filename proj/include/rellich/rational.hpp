#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <string>

namespace rellich {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
// ~50 significant decimal digits; used wherever double rounding would be visible.
using BigFloat = boost::multiprecision::cpp_bin_float_50;

double to_double(const Rational& q);
BigFloat to_bigfloat(const Rational& q);

/** Parse "3/4", "-2", "0.025", "1e-3" into an exact rational. Throws std::invalid_argument. */
Rational parse_rational(const std::string& s);

/** "num/den" (or just "num" when den == 1). */
std::string format_rational(const Rational& q);

/** Decimal expansion of q with `digits` significant digits. */
std::string decimal_string(const Rational& q, int digits);

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

/** Floor of a rational as BigInt. */
BigInt rational_floor(const Rational& q);

} // namespace rellich
