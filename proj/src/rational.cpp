#include "rellich/rational.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace rellich {

double to_double(const Rational& q) { return q.convert_to<double>(); }

BigFloat to_bigfloat(const Rational& q) {
  return BigFloat(numerator(q)) / BigFloat(denominator(q));
}

namespace {

// "123", "-4" -> BigInt; empty or junk throws.
BigInt parse_int(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty integer");
  size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) throw std::invalid_argument("bare sign: " + s);
  size_t first = i;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw std::invalid_argument("not an integer: " + s);
  // strip leading zeros: cpp_int would read them as an octal prefix
  std::string digits = s.substr(first);
  size_t nz = digits.find_first_not_of('0');
  digits = (nz == std::string::npos) ? "0" : digits.substr(nz);
  BigInt v(digits);
  return (first == 1 && s[0] == '-') ? BigInt(-v) : v;
}

BigInt pow10(long e) {
  BigInt r = 1;
  for (long i = 0; i < e; ++i) r *= 10;
  return r;
}

} // namespace

Rational parse_rational(const std::string& s0) {
  std::string s = s0;
  // strip whitespace
  s.erase(0, s.find_first_not_of(" \t"));
  if (!s.empty()) s.erase(s.find_last_not_of(" \t") + 1);
  if (s.empty()) throw std::invalid_argument("empty rational");

  if (auto slash = s.find('/'); slash != std::string::npos) {
    BigInt num = parse_int(s.substr(0, slash));
    BigInt den = parse_int(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + s);
    return Rational(num, den);
  }

  // decimal with optional exponent: [sign] digits [. digits] [eE [sign] digits]
  bool neg = false;
  size_t i = 0;
  if (s[0] == '+' || s[0] == '-') { neg = s[0] == '-'; i = 1; }
  std::string int_part, frac_part;
  long exp10 = 0;
  for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) int_part += s[i];
  if (i < s.size() && s[i] == '.') {
    ++i;
    for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) frac_part += s[i];
  }
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    std::string e = s.substr(i + 1);
    if (e.empty()) throw std::invalid_argument("bad exponent: " + s0);
    exp10 = std::stol(e);
    i = s.size();
  }
  if (i != s.size() || (int_part.empty() && frac_part.empty()))
    throw std::invalid_argument("not a rational: " + s0);

  BigInt digits = parse_int((int_part.empty() ? "0" : int_part) + frac_part);
  long shift = exp10 - static_cast<long>(frac_part.size());
  Rational r = shift >= 0 ? Rational(digits * pow10(shift))
                          : Rational(digits, pow10(-shift));
  return neg ? -r : r;
}

std::string format_rational(const Rational& q) {
  std::ostringstream os;
  os << numerator(q);
  if (denominator(q) != 1) os << "/" << denominator(q);
  return os.str();
}

std::string decimal_string(const Rational& q, int digits) {
  BigFloat v = to_bigfloat(q);
  std::ostringstream os;
  os.precision(digits);
  os << v;
  return os.str();
}

BigInt rational_floor(const Rational& q) {
  BigInt n = numerator(q), d = denominator(q);
  BigInt quot = n / d;
  if (n < 0 && quot * d != n) --quot;
  return quot;
}

} // namespace rellich
