#include "rellich/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rellich {

namespace {

BigInt binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt v = 1;
  for (int i = 1; i <= k; ++i) {
    v *= n - k + i;
    v /= i;
  }
  return v;
}

Rational critical_p(int N, int k) { return Rational(N, k); }

void require(bool ok, const char* what) {
  if (!ok) throw std::domain_error(what);
}

/** 1 - S_q((r - inner)/(outer - inner)) as ascending coefficients in r. */
std::vector<Rational> descending_window_poly(const CutoffSpec& c) {
  std::vector<Rational> s = smoothstep_coeffs(c.q);
  Rational den = c.outer - c.inner;
  std::vector<Rational> in_r = poly_compose_affine(s, -c.inner / den, Rational(1) / den);
  std::vector<Rational> w(in_r.size());
  for (size_t i = 0; i < in_r.size(); ++i) w[i] = -in_r[i];
  w[0] += 1;
  return w;
}

struct WindowParts {
  double r_deep = 0;  // pure log-power region is (0, r_deep]
  double r_zero = 0;  // zero region is [r_zero, R)
  TermSum bump;       // transition factor on (r_deep, r_zero): 1 deep, 0 outside
};

WindowParts window_parts(const CutoffSpec& c, const Rational& R) {
  require(c.inner > 0 && c.inner < c.outer, "transition window bounds must be ordered");
  WindowParts w;
  if (c.window == CutoffSpec::Window::radial) {
    require(c.outer < R, "transition window must sit strictly inside (0, R)");
    w.r_deep = to_double(c.inner);
    w.r_zero = to_double(c.outer);
    w.bump = TermSum::polynomial_in_r(descending_window_poly(c));
    return w;
  }
  // logarithmic: S_q((t - inner)/(outer - inner)) rises from 0 at t = inner to
  // 1 at t = outer, i.e. descends in r; a polynomial in t with exact rational
  // coefficients since the breakpoints are rational in t
  Rational den = c.outer - c.inner;
  std::vector<Rational> in_t =
      poly_compose_affine(smoothstep_coeffs(c.q), -c.inner / den, Rational(1) / den);
  for (size_t j = 0; j < in_t.size(); ++j)
    if (in_t[j] != 0)
      w.bump = w.bump + TermSum::monomial(AlphaPoly(in_t[j]), TermKey{0, false, int(j)});
  w.r_deep = to_double(R) * std::exp(-to_double(c.outer));
  w.r_zero = to_double(R) * std::exp(-to_double(c.inner));
  return w;
}

} // namespace

std::vector<Rational> smoothstep_coeffs(int q) {
  // S_q(x) = x^{q+1} * sum_{i=0}^q binom(q+i, i) binom(2q+1, q-i) (-x)^i
  std::vector<Rational> c(2 * q + 2, Rational(0));
  for (int i = 0; i <= q; ++i) {
    Rational v(binom(q + i, i) * binom(2 * q + 1, q - i));
    if (i % 2 == 1) v = -v;
    c[q + 1 + i] = v;
  }
  return c;
}

std::vector<Rational> poly_compose_affine(const std::vector<Rational>& poly, const Rational& c0,
                                          const Rational& c1) {
  // Horner: result = p_n, then result*(c0 + c1 y) + p_{n-1}, ...
  std::vector<Rational> acc;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) {
    std::vector<Rational> next(acc.size() + 1, Rational(0));
    for (size_t i = 0; i < acc.size(); ++i) {
      next[i] += acc[i] * c0;
      next[i + 1] += acc[i] * c1;
    }
    if (next.empty()) next.resize(1, Rational(0));
    next[0] += *it;
    acc = std::move(next);
  }
  while (acc.size() > 1 && acc.back() == 0) acc.pop_back();
  return acc;
}

RadialProfile make_phi_eps(int N, int k, const Rational& R, const Rational& eps,
                           const CutoffSpec& cutoff) {
  Rational p = critical_p(N, k);
  Rational beta = (p - 1) / p - eps;
  require(eps > 0 && beta > 0, "exponent offset must satisfy 0 < eps < (p-1)/p");
  require(cutoff.q >= k - 1, "cutoff must keep k-1 derivatives continuous across the junctions");
  WindowParts w = window_parts(cutoff, R);
  RadialProfile u;
  u.R = R;
  u.alpha = beta;
  u.derivative_order_available = cutoff.q + 1;
  TermSum lp = TermSum::log_power_alpha();
  u.pieces.push_back({0.0, w.r_deep, lp});
  u.pieces.push_back({w.r_deep, w.r_zero, lp * w.bump});
  u.pieces.push_back({w.r_zero, to_double(R), TermSum::zero()});
  return u;
}

RadialProfile make_psi_eps(int N, int k, const Rational& R, const Rational& eps,
                           const CutoffSpec& cutoff) {
  Rational p = critical_p(N, k);
  require(eps > 0, "exponent offset must be positive");
  require(cutoff.q >= k - 1, "cutoff must keep k-1 derivatives continuous across the junctions");
  WindowParts w = window_parts(cutoff, R);
  RadialProfile u;
  u.R = R;
  u.alpha = Rational(N - 1) / p + eps;
  u.derivative_order_available = cutoff.q + 1;
  TermSum lp = TermSum::log_power_alpha();
  TermSum anti = TermSum::one() - w.bump;  // rises from 0 deep inside to 1 at the rim side
  u.pieces.push_back({0.0, w.r_deep, TermSum::zero()});
  u.pieces.push_back({w.r_deep, w.r_zero, lp * anti});
  u.pieces.push_back({w.r_zero, to_double(R), lp});
  return u;
}

RadialProfile make_psi_gamma_hardy(int N, int k, const Rational& R, const Rational& gamma_exp) {
  Rational p = critical_p(N, k);
  require(gamma_exp > (p - 1) / p, "log exponent must exceed (p-1)/p");
  RadialProfile u;
  u.R = R;
  u.alpha = gamma_exp;
  // Continuous at the junction with a kink: the weak first derivative exists
  // (piecewise form, jump allowed inside integrals) but no higher order does.
  u.derivative_order_available = 1;
  double rb = to_double(R) / std::exp(1.0);
  u.pieces.push_back({0.0, rb, TermSum::one()});
  u.pieces.push_back({rb, to_double(R), TermSum::log_power_alpha()});
  return u;
}

RadialProfile make_v1(int N, int k, const Rational& R) {
  Rational p = critical_p(N, k);
  // smooth on all of (0, R): no junction, unlimited derivative budget
  return make_single_piece(R, TermSum::log_power_alpha(), (p - 1) / p, 1 << 20);
}

RadialProfile make_v2(int N, int k, const Rational& R) {
  Rational p = critical_p(N, k);
  return make_single_piece(R, TermSum::log_power_alpha(), Rational(N - 1) / p, 1 << 20);
}

RadialProfile make_single_piece(const Rational& R, TermSum form, const Rational& alpha,
                                int derivative_order) {
  RadialProfile u;
  u.R = R;
  u.alpha = alpha;
  u.derivative_order_available = derivative_order;
  u.pieces.push_back({0.0, to_double(R), std::move(form)});
  return u;
}

RadialProfile kth_derivative_profile(const RadialProfile& u, int k, int N) {
  if (u.derivative_order_available < k)
    throw std::domain_error("profile smoothness budget is below the requested order");
  RadialProfile d = u;
  d.derivative_order_available -= k;
  int m = k / 2;
  bool odd = (k % 2 != 0);
  for (auto& piece : d.pieces)
    if (m > 0 || odd) piece.form = piece.form.polyharmonic(m, odd, N);
  return d;
}

double evaluate(const RadialProfile& u, double r) {
  double R = to_double(u.R);
  if (!(r > 0)) throw std::domain_error("radius must be positive");
  if (r >= R) return 0.0;
  for (const auto& piece : u.pieces) {
    // closed forms extend to the piece closure; attribute boundary to the left piece
    if (r <= piece.r_hi || &piece == &u.pieces.back()) {
      if (piece.form.is_zero()) return 0.0;
      return evaluate_at(piece.form, u.alpha, r, R);
    }
  }
  return 0.0;
}

} // namespace rellich
