#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rellich/exact_constants.hpp"

#include <stdexcept>

using namespace rellich;

namespace {
Rational Q(long n, long d = 1) { return Rational(n, d); }
// independent oracle: integer power of a rational
Rational rpow(Rational b, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}
} // namespace

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("3/4") == Q(3, 4));
  CHECK(parse_rational("-2") == Q(-2));
  CHECK(parse_rational("0.025") == Q(1, 40));
  CHECK(parse_rational("1e-3") == Q(1, 1000));
  CHECK(parse_rational("2.5e2") == Q(250));
  CHECK(format_rational(Q(45, 8)) == "45/8");
  CHECK(format_rational(Q(4)) == "4");
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
}

TEST_CASE("subcritical constant: frozen values") {
  auto a = subcritical_rellich_constant(5, 2, Q(2));
  CHECK(a.base == Q(5, 4));
  CHECK(a.exponent == Q(2));

  auto b = subcritical_rellich_constant(7, 3, Q(2));
  CHECK(b.base == Q(45, 8));
  CHECK(b.exponent == Q(2));

  // second-order case collapses to N(N-4)/(p^2) * (p-1)N/p ... check the
  // p = 2 closed form N(N-4)/4 across a range of N
  for (int N = 5; N <= 14; ++N) {
    auto c = subcritical_rellich_constant(N, 2, Q(2));
    CHECK(c.base == Q(N) * (N - 4) / 4);
  }
}

TEST_CASE("subcritical constant: domain rejection") {
  CHECK_THROWS_AS(subcritical_rellich_constant(5, 2, Q(1)), std::domain_error);
  CHECK_THROWS_AS(subcritical_rellich_constant(5, 2, Q(5, 2)), std::domain_error);
  CHECK_THROWS_AS(subcritical_rellich_constant(5, 2, Q(3)), std::domain_error);
}

TEST_CASE("critical origin constant: frozen values") {
  auto a = critical_origin_constant(4, 2);
  CHECK(a.base == Q(1));
  CHECK(a.exponent == Q(2));

  auto b = critical_origin_constant(8, 4);
  CHECK(b.base == Q(24));
  CHECK(b.exponent == Q(2));
  CHECK(rpow(b.base, 2) == Q(576));

  auto c = critical_origin_constant(6, 3);
  CHECK(c.base == Q(4));
  CHECK(c.exponent == Q(2));

  // k = 2: base is (N-2)^2/N for every N > 2, exponent N/2
  for (int N = 3; N <= 12; ++N) {
    auto d = critical_origin_constant(N, 2);
    CHECK(d.base == Q(N - 2) * (N - 2) / N);
    CHECK(d.exponent == Q(N, 2));
  }

  CHECK_THROWS_AS(critical_origin_constant(4, 1), std::domain_error);
  CHECK_THROWS_AS(critical_origin_constant(2, 2), std::domain_error);
}

TEST_CASE("critical boundary constant: frozen values") {
  auto a = critical_boundary_constant(4, 2);
  CHECK(a.base == Q(3, 4));
  CHECK(a.exponent == Q(2));
  CHECK(rpow(a.base, 2) == Q(9, 16));

  auto b = critical_boundary_constant(6, 3);
  CHECK(b.base == Q(15, 8));
  CHECK(b.exponent == Q(2));

  // N = 2k: value is prod (2j-1)^2 / 4^k (oracle product computed directly)
  for (int k = 2; k <= 8; ++k) {
    auto c = critical_boundary_constant(2 * k, k);
    Rational oracle = 1;
    for (int j = 1; j <= k; ++j) oracle *= Q(2 * j - 1) * (2 * j - 1);
    oracle /= rpow(Q(4), k);
    CHECK(c.exponent == Q(2));
    CHECK(rpow(c.base, 2) == oracle);
  }

  // k = 1 is the first-order critical constant ((N-1)/N)^N
  auto h = critical_boundary_constant(5, 1);
  CHECK(h.base == Q(4, 5));
  CHECK(h.exponent == Q(5));
}

TEST_CASE("davies-hinz chain constant") {
  auto a = davies_hinz_constant(8, 1, Q(2), Q(6));
  CHECK(a.base == Q(1, 5));
  CHECK(a.exponent == Q(1));

  auto b = davies_hinz_constant(8, 1, Q(2), Q(4));
  CHECK(b.base == Q(1, 8));

  // m = 0 convention: empty product
  CHECK(davies_hinz_constant(8, 0, Q(2), Q(0)).base == Q(1));

  CHECK_THROWS_AS(davies_hinz_constant(8, 1, Q(2), Q(2)), std::domain_error);
  CHECK_THROWS_AS(davies_hinz_constant(8, 1, Q(2), Q(8)), std::domain_error);
  CHECK_THROWS_AS(davies_hinz_constant(8, 2, Q(2), Q(5)), std::domain_error);
}

TEST_CASE("even/odd chain constants D and E") {
  // D(N,1,N/2,0) = (N-2)^2/N, matching the k = 2 origin-side base
  for (int N = 5; N <= 12; ++N) {
    auto d = chain_constant_D(N, 1, Q(N, 2), Q(0));
    CHECK(d.base == critical_origin_constant(N, 2).base);
  }

  auto e = chain_constant_E(8, 1, Q(2), Q(0));
  CHECK(e.base == Q(15, 2));

  CHECK_THROWS_AS(chain_constant_D(8, 2, Q(2), Q(1)), std::domain_error);  // alpha > N-2mp
  CHECK_THROWS_AS(chain_constant_E(8, 1, Q(2), Q(7)), std::domain_error);
}

TEST_CASE("earlier fourth-order constant and gap") {
  auto a = adimurthi_santra_constant(8, 2);
  CHECK(a.base == Q(10));
  CHECK(a.exponent == Q(2));

  auto b = adimurthi_santra_constant(12, 3);
  CHECK(b.base == Q(567));

  CHECK_THROWS_AS(adimurthi_santra_constant(9, 2), std::domain_error);
  CHECK_THROWS_AS(adimurthi_santra_constant(4, 1), std::domain_error);

  auto g = gap_analysis(2);
  CHECK(g.N == 8);
  CHECK(g.sharp_chain_product == Q(576));
  CHECK(g.earlier_chain_product == Q(100));
  CHECK(g.ratio == Q(144, 25));
  REQUIRE(g.sharp_chain.size() == 3);
  CHECK(g.sharp_chain[0].factor.base == Q(64));
  CHECK(g.sharp_chain[1].factor.base == Q(36));
  CHECK(g.sharp_chain[2].factor.base == Q(1, 4));
  CHECK(g.earlier_chain[0].factor.base == Q(16));
  CHECK(g.earlier_chain[1].factor.base == Q(25));

  auto g3 = gap_analysis(3);
  CHECK(g3.earlier.base == Q(567));
  CHECK(g3.earlier_over_product == Q(189, 160));
}

TEST_CASE("hardy weight constant") {
  auto h = hardy_weight_constant(Q(2), Q(0));
  CHECK(h.base == Q(1, 2));
  CHECK(h.exponent == Q(2));
  CHECK(hardy_weight_constant(Q(2), Q(-1)).base == Q(0));
  CHECK_THROWS_AS(hardy_weight_constant(Q(2), Q(-2)), std::domain_error);
  CHECK_THROWS_AS(hardy_weight_constant(Q(1), Q(0)), std::domain_error);
}

TEST_CASE("decimal expansion") {
  ExactConstant c{Q(5, 4), Q(2)};
  CHECK(c.to_decimal(30).substr(0, 6) == "1.5625");
  CHECK(c.value() == doctest::Approx(1.5625).epsilon(1e-15));

  ExactConstant b{Q(225, 64), Q(1)};
  CHECK(b.to_decimal(30).substr(0, 8) == "3.515625");

  // fractional exponent goes through extended precision
  ExactConstant f = critical_boundary_constant(5, 2);
  CHECK(f.base == Q(24, 25));
  CHECK(f.exponent == Q(5, 2));
  double expect = std::pow(24.0 / 25.0, 2.5);
  CHECK(f.value() == doctest::Approx(expect).epsilon(1e-14));
  CHECK(f.to_decimal(30).size() >= 30);

  // zero-base family
  ExactConstant z{Q(0), Q(2)};
  CHECK(z.value() == 0.0);
}

TEST_CASE("exact comparison semantics") {
  ExactConstant a{Q(3, 4), Q(2)}, b{Q(3, 4), Q(2)}, c{Q(9, 16), Q(2)};
  CHECK(a.equals(b));
  CHECK_FALSE(a.equals(c));
  ExactConstant other_family{Q(3, 4), Q(3)};
  CHECK_THROWS_AS(a.equals(other_family), std::domain_error);
}
