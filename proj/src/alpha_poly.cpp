#include "rellich/alpha_poly.hpp"

#include <sstream>

namespace rellich {

void AlphaPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

AlphaPoly AlphaPoly::falling_factorial(int n) {
  AlphaPoly r{Rational(1)};
  for (int i = 0; i < n; ++i) r = r * AlphaPoly(Rational(-i), Rational(1));
  return r;
}

AlphaPoly AlphaPoly::operator+(const AlphaPoly& o) const {
  AlphaPoly r;
  r.c_.resize(std::max(c_.size(), o.c_.size()), Rational(0));
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r.c_[i] += o.c_[i];
  r.normalize();
  return r;
}

AlphaPoly AlphaPoly::operator-(const AlphaPoly& o) const { return *this + (-o); }

AlphaPoly AlphaPoly::operator*(const AlphaPoly& o) const {
  if (is_zero() || o.is_zero()) return AlphaPoly();
  AlphaPoly r;
  r.c_.assign(c_.size() + o.c_.size() - 1, Rational(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
  r.normalize();
  return r;
}

AlphaPoly AlphaPoly::operator*(const Rational& s) const {
  AlphaPoly r = *this;
  for (auto& x : r.c_) x *= s;
  r.normalize();
  return r;
}

Rational AlphaPoly::evaluate(const Rational& alpha) const {
  Rational v = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * alpha + *it;
  return v;
}

std::string AlphaPoly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    Rational v = c_[i];
    if (first) {
      if (v < 0) { os << "-"; v = -v; }
    } else {
      os << (v < 0 ? " - " : " + ");
      if (v < 0) v = -v;
    }
    first = false;
    if (i == 0 || v != 1) os << format_rational(v);
    if (i > 0) {
      if (v != 1) os << "*";
      os << "a";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

} // namespace rellich
