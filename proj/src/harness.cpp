#include "rellich/harness.hpp"

#include "rellich/exact_constants.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace rellich {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::domain_error(msg);
}

/** Collects coeff * integral terms on either side, tracking absolute error. */
class MarginBuilder {
 public:
  MarginBuilder(std::string id, double tol) : tol_(tol) { m_.inequality_id = std::move(id); }

  void param(const std::string& name, double v) { m_.params_used.emplace_back(name, v); }

  void lhs(double coeff, const RadialProfile& f, const Rational& p, const WeightSpec& w) {
    add(m_.lhs, coeff, f, p, w);
  }
  void rhs(double coeff, const RadialProfile& f, const Rational& p, const WeightSpec& w) {
    add(m_.rhs, coeff, f, p, w);
  }

  Margin finish() {
    m_.slack = m_.rhs - m_.lhs;
    return std::move(m_);
  }

 private:
  void add(double& side, double coeff, const RadialProfile& f, const Rational& p,
           const WeightSpec& w) {
    if (coeff == 0) return;  // a vanishing constant must not force its integral to exist
    QuadratureResult q = integrate_power(f, p, w, tol_);
    if (q.status == IntegralStatus::divergent)
      throw std::domain_error(m_.inequality_id + ": integral diverges");
    side += coeff * q.value;
    m_.quad_error += std::fabs(coeff) * q.abs_error_estimate;
  }

  Margin m_;
  double tol_;
};

/** prod_{j=1}^{count} (jp-1)/p */
Rational factor_product(const Rational& p, int count) {
  Rational out = 1;
  for (int j = 1; j <= count; ++j) out = out * (Rational(j) * p - 1) / p;
  return out;
}

double rational_power(const Rational& base, const Rational& e) {
  return ExactConstant{base, e}.value();
}

WeightSpec weight(Rational r_power, Rational log_power = 0, Rational a = 1) {
  WeightSpec w;
  w.r_power = std::move(r_power);
  w.log_power = std::move(log_power);
  w.a = std::move(a);
  return w;
}

/**
 * Adds outer * (the first-order remainder functional) to the lhs: the
 * (N-p-A)-weighted integral of |u|^p r^{-p-A} log^{-(B+p-1)}.  At A = N-p the
 * sharp remainder constant is unknown and the term is dropped entirely.
 */
void add_remainder(MarginBuilder& b, const RadialProfile& u, const HarnessParams& hp,
                   const Rational& A, const Rational& B, double outer) {
  const Rational& p = hp.p;
  if (A == Rational(hp.N) - p) return;
  double coeff = outer * to_double(Rational(hp.N) - p - A) *
                 rational_power((B + p - 1) / p, p - 1);
  b.lhs(coeff, u, p, weight(Rational(hp.N) - 1 - p - A, -(B + p - 1)));
}

} // namespace

Margin check_new_hardy(const RadialProfile& u, const HarnessParams& hp) {
  const Rational& p = hp.p;
  const int N = hp.N;
  require(p > 1 && p <= N, "exponent must lie in (1, N]");
  MarginBuilder b("first_order_log_refined", hp.tol);
  b.param("N", N);
  b.param("p", to_double(p));
  const Rational c = (p - 1) / p;
  b.lhs(rational_power(c, p), u, p, weight(N - 1 - p, -p));
  b.lhs(to_double(Rational(N) - p) * rational_power(c, p - 1), u, p, weight(N - 1 - p, -(p - 1)));
  RadialProfile du = kth_derivative_profile(u, 1, N);
  b.rhs(1.0, du, p, weight(N - 1));
  return b.finish();
}

Margin check_gh(const RadialProfile& u, const HarnessParams& hp, const Rational& alpha,
                const Rational& beta, bool origin_vanishing) {
  const Rational& p = hp.p;
  const int N = hp.N;
  require(p > 1, "exponent must exceed 1");
  require(beta >= 1 - p, "log exponent must be at least 1 - p");
  require(alpha <= Rational(N) - p || origin_vanishing,
          "power weights beyond N - p need a profile vanishing near the origin");
  MarginBuilder b("first_order_two_weight", hp.tol);
  b.param("N", N);
  b.param("p", to_double(p));
  b.param("alpha", to_double(alpha));
  b.param("beta", to_double(beta));
  const Rational c = (beta + p - 1) / p;
  b.lhs(rational_power(c, p), u, p, weight(Rational(N) - 1 - alpha - p, -(beta + p)));
  b.lhs(to_double(Rational(N) - p - alpha) * rational_power(c, p - 1), u, p,
        weight(Rational(N) - 1 - alpha - p, -(beta + p - 1)));
  RadialProfile du = kth_derivative_profile(u, 1, N);
  b.rhs(1.0, du, p, weight(Rational(N) - 1 - alpha, -beta));
  return b.finish();
}

Margin check_lap_hardy(const RadialProfile& u, const HarnessParams& hp, const Rational& alpha,
                       const Rational& beta) {
  const Rational& p = hp.p;
  const int N = hp.N;
  require(p > 1, "exponent must exceed 1");
  require(beta >= 1 - p, "log exponent must be at least 1 - p");
  MarginBuilder b("second_to_first_two_weight", hp.tol);
  b.param("N", N);
  b.param("p", to_double(p));
  b.param("alpha", to_double(alpha));
  b.param("beta", to_double(beta));
  RadialProfile du = kth_derivative_profile(u, 1, N);
  RadialProfile ddu = kth_derivative_profile(u, 2, N);
  const Rational c = (beta + p - 1) / p;
  b.lhs(rational_power(c, p), du, p, weight(Rational(N) - 1 - alpha - p, -(beta + p)));
  // the companion coefficient N - alpha - N p is negative; the derivation
  // absorbs a boundary term that vanishes because r^{N-1} u' does at 0
  b.lhs(to_double(Rational(N) - alpha - Rational(N) * p) * rational_power(c, p - 1), du, p,
        weight(Rational(N) - 1 - alpha - p, -(beta + p - 1)));
  b.rhs(1.0, ddu, p, weight(Rational(N) - 1 - alpha, -beta));
  return b.finish();
}

Margin check_lap_hardy2(const RadialProfile& u, const HarnessParams& hp) {
  const int N = hp.N;
  require(hp.p == 2, "this refinement is quadratic only");
  MarginBuilder b("second_to_first_quadratic", hp.tol);
  b.param("N", N);
  RadialProfile du = kth_derivative_profile(u, 1, N);
  RadialProfile ddu = kth_derivative_profile(u, 2, N);
  b.lhs(0.25, du, 2, weight(N - 3, -2));
  b.lhs(0.5 * (N - 2), du, 2, weight(N - 3, -1));
  b.rhs(1.0, ddu, 2, weight(N - 1));
  return b.finish();
}

Margin check_gene_main(const RadialProfile& u, const HarnessParams& hp, ChainVariant variant,
                       int m, const Rational& alpha) {
  const Rational& p = hp.p;
  const int N = hp.N;
  require(p > 1, "exponent must exceed 1");
  require(m >= 1, "chain order must be at least 1");
  const bool odd = variant == ChainVariant::odd_rim || variant == ChainVariant::odd_origin;
  const int k = odd ? 2 * m + 1 : 2 * m;
  require(alpha <= Rational(N) - Rational(k) * p,
          "power weight must leave the highest-order integral finite");
  RadialProfile dku = kth_derivative_profile(u, k, N);

  const char* id = nullptr;
  switch (variant) {
    case ChainVariant::even_rim: id = "higher_order_boundary_chain"; break;
    case ChainVariant::even_origin: id = "higher_order_origin_chain"; break;
    case ChainVariant::odd_rim: id = "odd_order_boundary_chain"; break;
    case ChainVariant::odd_origin: id = "odd_order_origin_chain"; break;
  }
  MarginBuilder b(id, hp.tol);
  b.param("N", N);
  b.param("p", to_double(p));
  b.param("m", m);
  b.param("alpha", to_double(alpha));

  switch (variant) {
    case ChainVariant::even_rim: {
      b.lhs(rational_power(factor_product(p, 2 * m), p), u, p,
            weight(Rational(N) - 1 - alpha - Rational(2 * m) * p, -Rational(2 * m) * p));
      add_remainder(b, u, hp, alpha + Rational(2 * m - 1) * p, Rational(2 * m - 1) * p,
                    rational_power(factor_product(p, 2 * m - 1), p));
      break;
    }
    case ChainVariant::even_origin: {
      require(alpha > 2 * (1 - p), "power weight must keep the origin factors positive");
      ExactConstant D = chain_constant_D(N, m, p, alpha);
      b.lhs(rational_power(D.base, p), u, p,
            weight(Rational(N) - 1 - alpha - Rational(2 * m) * p, -p));
      Rational inner = (Rational(N) * p - N + alpha + Rational(2 * (m - 1)) * p) / p;
      Rational c_prev =
          m == 1 ? Rational(1)
                 : davies_hinz_constant(N, m - 1, p, Rational(2 * (m - 1)) * p + alpha).base;
      add_remainder(b, u, hp, alpha + Rational(2 * m - 1) * p, 0,
                    rational_power(inner / c_prev, p));
      break;
    }
    case ChainVariant::odd_rim: {
      b.lhs(rational_power(factor_product(p, 2 * m + 1), p), u, p,
            weight(Rational(N) - 1 - alpha - Rational(2 * m + 1) * p, -Rational(2 * m + 1) * p));
      add_remainder(b, u, hp, alpha + Rational(2 * m) * p, Rational(2 * m) * p,
                    rational_power(factor_product(p, 2 * m), p));
      break;
    }
    case ChainVariant::odd_origin: {
      require(alpha > 2 - 3 * p, "power weight must keep the origin factors positive");
      ExactConstant E = chain_constant_E(N, m, p, alpha);
      b.lhs(rational_power(E.base, p), u, p,
            weight(Rational(N) - 1 - alpha - Rational(2 * m + 1) * p, -p));
      Rational inner = (Rational(N) * p - N + alpha + Rational(2 * m) * p - p) *
                       (Rational(N) - alpha - p) / (p * p);
      Rational c_prev =
          m == 1 ? Rational(1)
                 : davies_hinz_constant(N, m - 1, p, Rational(2 * m - 1) * p + alpha).base;
      add_remainder(b, u, hp, alpha + Rational(2 * m) * p, 0,
                    rational_power(inner / c_prev, p));
      break;
    }
  }
  b.rhs(1.0, dku, p, weight(Rational(N) - 1 - alpha));
  return b.finish();
}

Margin check_davies_hinz(const RadialProfile& u, const HarnessParams& hp, int m,
                         const Rational& beta) {
  const Rational& p = hp.p;
  const int N = hp.N;
  ExactConstant C = davies_hinz_constant(N, m, p, beta);
  MarginBuilder b("polyharmonic_power_weight", hp.tol);
  b.param("N", N);
  b.param("p", to_double(p));
  b.param("m", m);
  b.param("beta", to_double(beta));
  RadialProfile dku = kth_derivative_profile(u, 2 * m, N);
  b.lhs(1.0, u, p, weight(Rational(N) - 1 - beta));
  b.rhs(rational_power(C.base, p), dku, p, weight(Rational(N) - 1 - beta + Rational(2 * m) * p));
  return b.finish();
}

Margin check_musina(const RadialProfile& u, const HarnessParams& hp, const Rational& delta) {
  const Rational& p = hp.p;
  const int N = hp.N;
  require(p > 1, "exponent must exceed 1");
  MarginBuilder b("second_to_first_power_weight", hp.tol);
  b.param("N", N);
  b.param("p", to_double(p));
  b.param("delta", to_double(delta));
  RadialProfile du = kth_derivative_profile(u, 1, N);
  RadialProfile ddu = kth_derivative_profile(u, 2, N);
  Rational base = Rational(N) - (Rational(N) + delta) / p;
  if (base < 0) base = -base;
  b.lhs(rational_power(base, p), du, p, weight(Rational(N) - 1 + delta - p));
  b.rhs(1.0, ddu, p, weight(Rational(N) - 1 + delta));
  return b.finish();
}

Margin check_h1to0(const RadialProfile& u, const HarnessParams& hp, const Rational& delta) {
  const Rational& p = hp.p;
  const int N = hp.N;
  require(p < Rational(N) + delta, "exponent must stay below the weighted dimension");
  MarginBuilder b("zeroth_to_first_power_weight", hp.tol);
  b.param("N", N);
  b.param("p", to_double(p));
  b.param("delta", to_double(delta));
  RadialProfile du = kth_derivative_profile(u, 1, N);
  b.lhs(rational_power((Rational(N) + delta) / p - 1, p), u, p,
        weight(Rational(N) - 1 + delta - p));
  b.rhs(1.0, du, p, weight(Rational(N) - 1 + delta));
  return b.finish();
}

Margin check_1dim_hardy(const RadialProfile& w, const HarnessParams& hp, const Rational& a_exp) {
  const Rational& p = hp.p;
  require(p > 1, "exponent must exceed 1");
  MarginBuilder b("one_dimensional_hardy", hp.tol);
  b.param("p", to_double(p));
  b.param("a", to_double(a_exp));
  Rational base = (a_exp + 1 - p) / p;
  if (base < 0) base = -base;
  // the measure here is dr itself, so the weights below carry no extra r^{N-1}
  RadialProfile dw = kth_derivative_profile(w, 1, 1);
  b.lhs(rational_power(base, p), w, p, weight(a_exp - p));
  b.rhs(1.0, dw, p, weight(a_exp));
  return b.finish();
}

Margin check_nonsharp_critical(const RadialProfile& u, const HarnessParams& hp) {
  const int N = hp.N;
  const int k = hp.k;
  const Rational p(N, k);
  require(hp.p == p, "exponent must equal N / k");
  require(hp.a >= 1, "log scale must be at least 1");
  MarginBuilder b("critical_outside_scale", hp.tol);
  b.param("N", N);
  b.param("k", k);
  b.param("a", to_double(hp.a));
  ExactConstant R = critical_origin_constant(N, k);
  RadialProfile dku = kth_derivative_profile(u, k, N);
  b.lhs(R.value(), u, p, weight(-1, -p, hp.a));
  b.rhs(1.0, dku, p, weight(N - 1));
  return b.finish();
}

Margin check_lim_ineq(const RadialProfile& u, const HarnessParams& hp, const Rational& A_exp) {
  const int N = hp.N;
  const Rational p(N, 2);
  require(hp.p == p, "exponent must equal N / 2");
  require(A_exp > 0, "log exponent shift must be positive");
  MarginBuilder b("first_order_log_family", hp.tol);
  b.param("N", N);
  b.param("A", to_double(A_exp));
  RadialProfile du = kth_derivative_profile(u, 1, N);
  b.lhs(rational_power(2 * A_exp / N, p), u, p, weight(-1, -(A_exp + 1)));
  b.rhs(1.0, du, p, weight(Rational(N) - 1 - p, p - A_exp - 1));
  return b.finish();
}

std::vector<Margin> section5_chain_check(const RadialProfile& u, double tol) {
  require(u.R == 1, "the worked chain uses the unit ball");
  const Rational p = 2;

  RadialProfile du = kth_derivative_profile(u, 1, 8);
  RadialProfile ddu = kth_derivative_profile(u, 2, 8);
  RadialProfile dddu = kth_derivative_profile(u, 3, 8);

  std::vector<Margin> out;

  {
    MarginBuilder b("chain_second_to_first", tol);
    b.param("constant", 16);
    b.lhs(16.0, du, p, weight(5));
    b.rhs(1.0, ddu, p, weight(7));
    out.push_back(b.finish());
  }
  {
    MarginBuilder b("chain_second_to_zeroth", tol);
    b.param("constant", 25);
    b.lhs(25.0, u, p, weight(1));
    b.rhs(1.0, ddu, p, weight(5));
    out.push_back(b.finish());
  }
  {
    MarginBuilder b("chain_first_to_log", tol);
    b.param("constant", 0.25);
    b.lhs(0.25, u, p, weight(-1, -2));
    b.rhs(1.0, du, p, weight(1));
    out.push_back(b.finish());
  }
  {
    MarginBuilder b("chain_third_to_first_sharp", tol);
    b.param("constant", 77);
    b.lhs(77.0, du, p, weight(1));
    b.rhs(1.0, dddu, p, weight(5));
    out.push_back(b.finish());
  }
  {
    MarginBuilder b("chain_third_to_first_split", tol);
    b.param("constant", 144);
    b.lhs(144.0, du, p, weight(1));
    b.rhs(1.0, dddu, p, weight(5));
    out.push_back(b.finish());
  }
  return out;
}

} // namespace rellich
