#include "rellich/log_terms.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rellich {

TermSum TermSum::one() { return monomial(AlphaPoly(Rational(1)), {0, false, 0}); }

TermSum TermSum::log_power_alpha(int off) {
  return monomial(AlphaPoly(Rational(1)), {0, true, off});
}

TermSum TermSum::log_power_int(int off) {
  return monomial(AlphaPoly(Rational(1)), {0, false, off});
}

TermSum TermSum::monomial(AlphaPoly coeff, TermKey key) {
  TermSum s;
  s.add_term(key, coeff);
  return s;
}

TermSum TermSum::polynomial_in_r(const std::vector<Rational>& coeffs) {
  TermSum s;
  for (size_t i = 0; i < coeffs.size(); ++i)
    s.add_term({static_cast<int>(i), false, 0}, AlphaPoly(coeffs[i]));
  return s;
}

void TermSum::add_term(const TermKey& k, const AlphaPoly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TermSum TermSum::operator+(const TermSum& o) const {
  TermSum r = *this;
  for (const auto& [k, c] : o.terms_) r.add_term(k, c);
  return r;
}

TermSum TermSum::operator-(const TermSum& o) const { return *this + o.scaled(Rational(-1)); }

TermSum TermSum::operator*(const TermSum& o) const {
  TermSum r;
  for (const auto& [ka, ca] : terms_)
    for (const auto& [kb, cb] : o.terms_) {
      if (ka.has_alpha && kb.has_alpha)
        throw std::domain_error("product would square the symbolic log exponent");
      TermKey k{ka.r_power + kb.r_power, ka.has_alpha || kb.has_alpha,
                ka.log_offset + kb.log_offset};
      r.add_term(k, ca * cb);
    }
  return r;
}

TermSum TermSum::scaled(const Rational& s) const {
  TermSum r;
  for (const auto& [k, c] : terms_) r.add_term(k, c * s);
  return r;
}

TermSum TermSum::scaled(const AlphaPoly& s) const {
  TermSum r;
  for (const auto& [k, c] : terms_) r.add_term(k, c * s);
  return r;
}

TermSum TermSum::shifted_r(int dr) const {
  TermSum r;
  for (const auto& [k, c] : terms_) r.add_term({k.r_power + dr, k.has_alpha, k.log_offset}, c);
  return r;
}

TermSum TermSum::radial_diff() const {
  TermSum r;
  for (const auto& [k, c] : terms_) {
    if (k.r_power != 0)
      r.add_term({k.r_power - 1, k.has_alpha, k.log_offset}, c * Rational(k.r_power));
    // exponent factor: alpha + off (symbolic) or the integer off
    AlphaPoly e = k.has_alpha ? AlphaPoly(Rational(k.log_offset), Rational(1))
                              : AlphaPoly(Rational(k.log_offset));
    r.add_term({k.r_power - 1, k.has_alpha, k.log_offset - 1}, -(c * e));
  }
  return r;
}

TermSum TermSum::radial_laplacian(int N) const {
  TermSum d1 = radial_diff();
  return d1.radial_diff() + d1.shifted_r(-1).scaled(Rational(N - 1));
}

TermSum TermSum::polyharmonic(int m, bool odd, int N) const {
  TermSum f = *this;
  for (int i = 0; i < m; ++i) f = f.radial_laplacian(N);
  return odd ? f.radial_diff() : f;
}

std::vector<FrozenTerm> TermSum::freeze(const Rational& alpha) const {
  // merge on (r_power, concrete log exponent): alpha may collide with integers
  std::map<std::pair<int, Rational>, Rational> merged;
  for (const auto& [k, c] : terms_) {
    Rational e = k.has_alpha ? alpha + k.log_offset : Rational(k.log_offset);
    Rational v = c.evaluate(alpha);
    if (v == 0) continue;
    merged[{k.r_power, e}] += v;
  }
  std::vector<FrozenTerm> out;
  out.reserve(merged.size());
  for (const auto& [key, v] : merged) {
    if (v == 0) continue;
    FrozenTerm t;
    t.c = v;
    t.s = key.first;
    t.e = key.second;
    t.cd = to_double(v);
    t.ed = to_double(t.e);
    out.push_back(std::move(t));
  }
  return out;
}

std::string TermSum::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")";
    if (k.r_power != 0) os << "*r^" << k.r_power;
    if (k.has_alpha) {
      os << "*L^(a";
      if (k.log_offset > 0) os << "+" << k.log_offset;
      if (k.log_offset < 0) os << k.log_offset;
      os << ")";
    } else if (k.log_offset != 0) {
      os << "*L^" << k.log_offset;
    }
  }
  return os.str();
}

namespace {
double ipow(double r, int s) {
  if (s == 0) return 1.0;
  double b = s > 0 ? r : 1.0 / r;
  int n = s > 0 ? s : -s;
  double acc = 1.0;
  while (n) {
    if (n & 1) acc *= b;
    b *= b;
    n >>= 1;
  }
  return acc;
}
} // namespace

double eval_frozen(const std::vector<FrozenTerm>& f, double r, double t) {
  double v = 0;
  for (const auto& term : f) {
    double x = term.cd * ipow(r, term.s);
    if (term.ed != 0.0) x *= std::pow(t, term.ed);
    v += x;
  }
  return v;
}

double evaluate_at(const TermSum& f, const Rational& alpha, double r, double R) {
  if (!(r > 0.0) || !(r < R)) throw std::domain_error("radius must lie strictly inside (0, R)");
  // log1p keeps full precision near the rim; the plain form is exact elsewhere
  double t = r > 0.5 * R ? -std::log1p((r - R) / R) : std::log(R) - std::log(r);
  std::vector<FrozenTerm> frozen = f.freeze(alpha);
  double v = 0, amp = 0;
  for (const auto& term : frozen) {
    double x = term.cd * ipow(r, term.s);
    if (term.ed != 0.0) x *= std::pow(t, term.ed);
    v += x;
    amp += std::fabs(x);
  }
  // Expanded transition-window coefficients are huge and cancel almost
  // completely where the profile vanishes; redo heavy cancellations in
  // extended precision so tails return a value instead of rounding noise.
  if (std::fabs(v) >= 1e-3 * amp || amp == 0) return v;
  return static_cast<double>(eval_frozen_big(frozen, BigFloat(r), BigFloat(t)));
}

BigFloat eval_frozen_big(const std::vector<FrozenTerm>& f, const BigFloat& r, const BigFloat& t) {
  BigFloat v = 0;
  for (const auto& term : f) {
    BigFloat x = to_bigfloat(term.c) * pow(r, term.s);
    if (term.e != 0) x *= pow(t, to_bigfloat(term.e));
    v += x;
  }
  return v;
}

} // namespace rellich
