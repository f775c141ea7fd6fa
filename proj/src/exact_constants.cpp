#include "rellich/exact_constants.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rellich {

namespace {

BigFloat pow_big(const Rational& base, const Rational& expo) {
  if (base == 0) return BigFloat(0);
  BigFloat b = to_bigfloat(base);
  if (is_integer(expo)) {
    // exact integer power, cheap and avoids log for negative bases
    BigInt e = numerator(expo);
    bool inv = e < 0;
    if (inv) e = -e;
    BigFloat r = 1;
    BigFloat acc = b;
    for (BigInt i = e; i > 0; i >>= 1) {
      if ((i & 1) != 0) r *= acc;
      acc *= acc;
    }
    return inv ? BigFloat(1) / r : r;
  }
  if (base < 0) throw std::domain_error("fractional power of a negative base");
  return exp(to_bigfloat(expo) * log(b));
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::domain_error(msg);
}

} // namespace

double ExactConstant::value() const { return value_big().convert_to<double>(); }

BigFloat ExactConstant::value_big() const { return pow_big(base, exponent); }

std::string ExactConstant::to_decimal(int digits) const {
  std::ostringstream os;
  os.precision(digits);
  os << value_big();
  return os.str();
}

bool ExactConstant::equals(const ExactConstant& o) const {
  if (base == o.base && exponent == o.exponent) return true;
  // 0^e == 0^f and 1^e == 1^f regardless of family
  if ((base == 0 && o.base == 0) || (base == 1 && o.base == 1)) return true;
  if (exponent != o.exponent)
    throw std::domain_error("exact comparison across exponent families");
  return false;
}

ExactConstant subcritical_rellich_constant(int N, int k, const Rational& p) {
  require(N >= 2 && k >= 1, "need N >= 2, k >= 1");
  require(p > 1, "need p > 1");
  require(p * k < N, "need kp < N (subcritical range)");
  Rational base;
  if (k % 2 == 0) {
    int m = k / 2;
    base = 1;
    for (int l = 1; l <= m; ++l)
      base *= (N - 2 * l * p) * (N * (p - 1) + 2 * (l - 1) * p) / (p * p);
  } else {
    int m = (k - 1) / 2;
    base = (N - p) / p;
    for (int l = 1; l <= m; ++l)
      base *= (N - (2 * l + 1) * p) * (N * (p - 1) + (2 * l - 1) * p) / (p * p);
  }
  return {base, p};
}

ExactConstant critical_origin_constant(int N, int k) {
  require(k >= 2, "origin-side constant needs k >= 2");
  require(N > k, "need N > k");
  Rational p = Rational(N, k);
  int m = k / 2;
  Rational prod = 1;
  for (int j = 1; j <= m; ++j) prod *= Rational(2 * j) * (N - 2 * j);
  Rational base = (k % 2 == 0) ? Rational(N - k, BigInt(k) * N) * prod
                               : Rational(N - k, N) * prod;
  return {base, p};
}

ExactConstant critical_boundary_constant(int N, int k) {
  require(k >= 1, "need k >= 1");
  require(N > k, "need N > k");
  Rational p = Rational(N, k);
  Rational base = 1;
  for (int j = 1; j <= k; ++j) base *= Rational(BigInt(j) * N - k, N);
  return {base, p};
}

ExactConstant davies_hinz_constant(int N, int m, const Rational& p, const Rational& beta) {
  require(m >= 0, "need m >= 0");
  require(p > 1, "need p > 1");
  if (m > 0) {
    require(beta > 2 * (1 + (m - 1) * p), "beta below chain validity range");
    require(beta < N, "need beta < N");
  }
  Rational c = 1;
  for (int j = 0; j <= m - 1; ++j) {
    Rational den = (N - beta + 2 * j * p) * ((p - 1) * (N - 2) + beta - 2 * (1 + j * p));
    require(den != 0, "degenerate chain factor");
    c *= p * p / den;
  }
  return {c, 1};
}

ExactConstant chain_constant_D(int N, int m, const Rational& p, const Rational& alpha) {
  require(m >= 1, "need m >= 1");
  require(p > 1, "need p > 1");
  require(alpha > 2 * (1 - p), "alpha below validity range");
  require(alpha <= N - 2 * m * p, "alpha above validity range");
  Rational d = 1;
  for (int j = 1; j <= m - 1; ++j)
    d *= (2 * p * j + N - 2 * m * p - alpha) * (p * (N - 2 - 2 * j) - N + 2 * m * p + alpha) / (p * p);
  d *= (p - 1) * ((N - 2) * p - N + 2 * m * p + alpha) / (p * p);
  return {d, 1};
}

ExactConstant chain_constant_E(int N, int m, const Rational& p, const Rational& alpha) {
  require(alpha > 2 - 3 * p, "alpha below validity range");
  require(alpha <= N - (2 * m + 1) * p, "alpha above validity range");
  ExactConstant d = chain_constant_D(N, m, p, alpha + p);
  return {d.base * (N - alpha - p) / p, 1};
}

ExactConstant adimurthi_santra_constant(int N, int m) {
  require(m >= 2, "need m >= 2");
  require(N == 4 * m, "defined for N = 4m only");
  Rational a = Rational(N, 4) / boost::multiprecision::pow(BigInt(2), 2 * m - 2);
  for (int i = 0; i <= m - 2; ++i)
    a *= Rational(4 * i + 2) * (8 * m - 4 * i - 6);
  return {a, 2};
}

ExactConstant hardy_weight_constant(const Rational& p, const Rational& beta) {
  require(p > 1, "need p > 1");
  require(beta >= 1 - p, "need beta + p - 1 >= 0");
  return {(beta + p - 1) / p, p};
}

GapAnalysis gap_analysis(int m) {
  require(m >= 2, "chain comparison needs m >= 2");
  GapAnalysis g;
  g.m = m;
  g.N = 4 * m;
  g.sharp = critical_origin_constant(g.N, 2 * m);
  g.earlier = adimurthi_santra_constant(g.N, m);
  require(g.sharp.exponent == 2, "chain comparison lives at p = 2");
  g.ratio = (g.sharp.base * g.sharp.base) / (g.earlier.base * g.earlier.base);
  Rational prod = 1;
  for (int i = 1; i <= m; ++i) prod *= (g.N - 2 * i);
  g.earlier_over_product = g.earlier.base / prod;

  if (m == 2) {
    const Rational N = g.N;
    // both chains end with the same first-order step of constant 1/4
    Rational s1 = (N * (N - 4) / 4) * (N * (N - 4) / 4);
    Rational s2 = (N - (N - 4) / 2) * (N - (N - 4) / 2);
    g.sharp_chain = {
        {"fourth-to-second order, weight |x|^-4: (N(N-4)/4)^2", {s1, 1}},
        {"second-to-first order, weight |x|^-6: (N-(N-4)/2)^2", {s2, 1}},
        {"first-order critical step: 1/4", {Rational(1, 4), 1}},
    };
    Rational a1 = N * N / 4;
    Rational a2 = ((N - 6) * (N + 2) / 4) * ((N - 6) * (N + 2) / 4);
    g.earlier_chain = {
        {"fourth-to-third order: N^2/4", {a1, 1}},
        {"third-to-first order, weight |x|^-2: ((N-6)(N+2)/4)^2", {a2, 1}},
        {"first-order critical step: 1/4", {Rational(1, 4), 1}},
    };
    g.sharp_chain_product = s1 * s2 / 4;
    g.earlier_chain_product = a1 * a2 / 4;
  } else {
    g.sharp_chain_product = g.sharp.base * g.sharp.base;
    g.earlier_chain_product = g.earlier.base * g.earlier.base;
  }
  return g;
}

} // namespace rellich
