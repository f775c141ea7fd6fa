#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rellich/profiles.hpp"

#include <cmath>

using namespace rellich;

namespace {

CutoffSpec half_window(const Rational& R, int q) { return {R / 2, R * Rational(3, 4), q}; }

/** j-th derivative value of piece form at radius r (uses the symbolic algebra). */
double piece_derivative(const RadialProfile& u, const TermSum& form, int j, double r) {
  TermSum d = form;
  for (int i = 0; i < j; ++i) d = d.radial_diff();
  return d.is_zero() ? 0.0 : evaluate_at(d, u.alpha, r, to_double(u.R));
}

} // namespace

TEST_CASE("smoothstep polynomials") {
  auto s1 = smoothstep_coeffs(1);  // 3x^2 - 2x^3
  REQUIRE(s1.size() == 4);
  CHECK(s1[2] == Rational(3));
  CHECK(s1[3] == Rational(-2));
  auto s2 = smoothstep_coeffs(2);  // 10x^3 - 15x^4 + 6x^5
  CHECK(s2[3] == Rational(10));
  CHECK(s2[4] == Rational(-15));
  CHECK(s2[5] == Rational(6));
  for (int q : {1, 2, 3, 4, 5}) {
    auto s = smoothstep_coeffs(q);
    Rational at1(0);
    for (const auto& c : s) at1 += c;
    CHECK(at1 == Rational(1));  // S_q(1) = 1
    // S_q'(1) = 0: derivative coefficients i*c_i summed
    Rational d1(0);
    for (size_t i = 1; i < s.size(); ++i) d1 += s[i] * Rational(static_cast<int>(i));
    CHECK(d1 == Rational(0));
  }
}

TEST_CASE("affine composition") {
  // p(y) = y^2, y = 1 + 2x -> 1 + 4x + 4x^2
  auto c = poly_compose_affine({Rational(0), Rational(0), Rational(1)}, Rational(1), Rational(2));
  REQUIRE(c.size() == 3);
  CHECK(c[0] == Rational(1));
  CHECK(c[1] == Rational(4));
  CHECK(c[2] == Rational(4));
}

TEST_CASE("origin family shape") {
  const int N = 4, k = 2;
  Rational R(1), eps(1, 10);
  RadialProfile u = make_phi_eps(N, k, R, eps, half_window(R, k + 1));
  // alpha = (p-1)/p - eps with p = 2
  CHECK(u.alpha == Rational(2, 5));
  // pure log power inside the window
  double r = 0.3;
  CHECK(evaluate(u, r) == doctest::Approx(std::pow(std::log(1.0 / r), 0.4)).epsilon(1e-14));
  // zero beyond the window, zero extension past R
  CHECK(evaluate(u, 0.8) == 0.0);
  CHECK(evaluate(u, 1.7) == 0.0);
  CHECK_THROWS_AS(evaluate(u, 0.0), std::domain_error);
  // strictly between the breakpoints the value interpolates
  double mid = evaluate(u, 0.6);
  CHECK(mid > 0.0);
  CHECK(mid < std::pow(std::log(1.0 / 0.6), 0.4));
  // parameter validation
  CHECK_THROWS_AS(make_phi_eps(N, k, R, Rational(1), half_window(R, k + 1)), std::domain_error);
  CHECK_THROWS_AS(make_phi_eps(N, k, R, eps, half_window(R, k - 2)), std::domain_error);
}

TEST_CASE("rim family shape") {
  const int N = 6, k = 3;
  Rational R(2), eps(1, 20);
  RadialProfile u = make_psi_eps(N, k, R, eps, half_window(R, k + 1));
  CHECK(u.alpha == Rational(N - 1) * Rational(k, N) + eps);
  CHECK(evaluate(u, 0.9) == 0.0);  // inside the dead zone
  double r = 1.9;
  double a = to_double(u.alpha);
  CHECK(evaluate(u, r) == doctest::Approx(std::pow(std::log(2.0 / r), a)).epsilon(1e-12));
  // vanishes toward the rim
  CHECK(std::abs(evaluate(u, 2.0 - 1e-12)) < 1e-30);
}

TEST_CASE("first-order log family") {
  const int N = 5, k = 1;
  Rational R(1);
  RadialProfile u = make_psi_gamma_hardy(N, k, R, Rational(2));
  double rb = 1.0 / std::exp(1.0);
  // both sides of the junction equal 1
  CHECK(evaluate(u, rb - 1e-12) == doctest::Approx(1.0));
  CHECK(evaluate(u, rb + 1e-12) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(evaluate(u, 1.0 - 1e-9) < 1e-15);
  // derivative vanishes on the constant piece
  RadialProfile d = kth_derivative_profile(u, 1, N);
  CHECK(evaluate(d, 0.2) == 0.0);
  // but no second-derivative budget across the kink
  CHECK_THROWS_AS(kth_derivative_profile(u, 2, N), std::domain_error);
  CHECK_THROWS_AS(make_psi_gamma_hardy(N, k, R, Rational(1, 10)), std::domain_error);
}

TEST_CASE("junction smoothness matches the window class") {
  const int N = 4, k = 2;
  Rational R(1), eps(1, 8);
  const int q = k + 1;
  RadialProfile u = make_phi_eps(N, k, R, eps, half_window(R, q));
  double rb = 0.5;   // inner junction
  double rc = 0.75;  // outer junction
  // derivatives up to q agree across both junctions
  for (int j = 0; j <= q; ++j) {
    double li = piece_derivative(u, u.pieces[0].form, j, rb);
    double ri = piece_derivative(u, u.pieces[1].form, j, rb);
    CHECK(std::abs(li - ri) < 1e-6 * (1 + std::abs(li)));
    double lo = piece_derivative(u, u.pieces[1].form, j, rc);
    double ro = piece_derivative(u, u.pieces[2].form, j, rc);
    CHECK(std::abs(lo - ro) < 1e-6 * (1 + std::abs(lo)));
  }
  // negative control: order q+1 jumps
  double lq = piece_derivative(u, u.pieces[0].form, q + 1, rb);
  double rq = piece_derivative(u, u.pieces[1].form, q + 1, rb);
  CHECK(std::abs(lq - rq) > 1e-3);
}

TEST_CASE("derivative profile of a pure log power matches the symbolic operator") {
  const int N = 8, k = 4;
  RadialProfile v1 = make_v1(N, k, Rational(1));
  RadialProfile d = kth_derivative_profile(v1, k, N);
  TermSum want = TermSum::log_power_alpha().polyharmonic(2, false, N);
  REQUIRE(d.pieces.size() == 1);
  CHECK(d.pieces[0].form == want);
  CHECK(d.derivative_order_available == v1.derivative_order_available - k);
}

TEST_CASE("derivative profile leading term carries the top coefficient") {
  // |D^k V| for the origin family behaves like |E_k| * alpha * r^-k (log)^(alpha-1):
  // the slowest-decaying log power carries the product-form top coefficient.
  const int N = 6, k = 2;
  Rational R(1), eps(1, 16);
  RadialProfile u = make_phi_eps(N, k, R, eps, half_window(R, k + 1));
  RadialProfile d = kth_derivative_profile(u, k, N);
  auto frozen = d.pieces[0].form.freeze(u.alpha);
  // find the term with log exponent alpha - 1
  Rational want_e = u.alpha - 1;
  bool found = false;
  for (const auto& t : frozen)
    if (t.e == want_e) {
      found = true;
      CHECK(t.s == -k);
      // magnitude = |top entry| * alpha; top entry for m=1 is N-2
      CHECK(abs(t.c) == Rational(N - 2) * u.alpha);
    }
  CHECK(found);
}

TEST_CASE("composition order equals a single higher-order application") {
  const int N = 7, k = 1;
  RadialProfile v = make_v2(N, 3, Rational(1));
  RadialProfile once = kth_derivative_profile(kth_derivative_profile(v, 2, N), 0, N);
  RadialProfile twice = kth_derivative_profile(v, 2, N);
  CHECK(once.pieces[0].form == twice.pieces[0].form);
  (void)k;
}
