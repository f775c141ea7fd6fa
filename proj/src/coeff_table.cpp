#include "rellich/coeff_table.hpp"

#include <json.hpp>

#include <stdexcept>

namespace rellich {

namespace {
Rational at(const std::vector<Rational>& v, int j) {
  if (j < 0 || j >= static_cast<int>(v.size())) return Rational(0);
  return v[j];
}
} // namespace

CoeffTable coeff_table(int m, int N) {
  if (m < 1) throw std::domain_error("order must be >= 1");
  CoeffTable t;
  t.m = m;
  t.N = N;
  t.C.resize(m + 1);
  t.D.resize(m + 1);
  t.C[1] = {Rational(1), Rational(N - 2)};
  for (int mu = 2; mu <= m; ++mu) {
    const auto& prev = t.C[mu - 1];
    t.C[mu].resize(2 * mu);
    Rational b(N + 2 - 4 * mu);
    Rational c(-2 * (mu - 1) * (N - 2 * mu));
    for (int j = 0; j < 2 * mu; ++j)
      t.C[mu][j] = at(prev, j) + b * at(prev, j - 1) + c * at(prev, j - 2);
  }
  for (int mu = 1; mu <= m; ++mu) {
    t.D[mu].resize(2 * mu + 1);
    for (int j = 0; j <= 2 * mu; ++j)
      t.D[mu][j] = at(t.C[mu], j) - Rational(2 * mu) * at(t.C[mu], j - 1);
  }
  return t;
}

Rational coeff_top_closed_form(int m, int N) {
  Rational p(1);
  for (int j = 1; j <= m; ++j) p *= Rational(2 * j * (N - 2 * j));
  p /= Rational(2 * m);
  if (m % 2 == 0) p = -p;
  return p;
}

TermSum table_even_form(const CoeffTable& t, int mu) {
  // The tabulated magnitudes are stated for a log kernel with derivative +1/r;
  // log R/r has derivative -1/r, and the j-th column survives 2mu - j log
  // differentiations, so reconstructing the actual operator needs (-1)^j
  // (globally (-1)^{2mu} = 1 times (-1)^{-j}).
  TermSum s;
  for (int j = 0; j < 2 * mu; ++j) {
    Rational sign((j % 2 == 0) ? 1 : -1);
    AlphaPoly c = AlphaPoly::falling_factorial(2 * mu - j) * (t.C[mu][j] * sign);
    s = s + TermSum::monomial(c, {-2 * mu, true, j - 2 * mu});
  }
  return s;
}

TermSum table_odd_form(const CoeffTable& t, int mu) {
  // Odd order 2mu + 1: one more log differentiation, hence (-1)^{j+1}.
  TermSum s;
  for (int j = 0; j <= 2 * mu; ++j) {
    Rational sign((j % 2 == 0) ? -1 : 1);
    AlphaPoly c = AlphaPoly::falling_factorial(2 * mu - j + 1) * (t.D[mu][j] * sign);
    s = s + TermSum::monomial(c, {-2 * mu - 1, true, j - 2 * mu - 1});
  }
  return s;
}

std::optional<TableMismatch> verify_table(int m_max, int N) {
  CoeffTable t = coeff_table(m_max, N);
  TermSum lp = TermSum::log_power_alpha();
  for (int mu = 1; mu <= m_max; ++mu) {
    TermSum even = lp.polyharmonic(mu, false, N);
    TermSum from_table = table_even_form(t, mu);
    if (!(even == from_table))
      return TableMismatch{mu, false, from_table.to_string(), even.to_string()};
    TermSum odd = lp.polyharmonic(mu, true, N);
    TermSum odd_table = table_odd_form(t, mu);
    if (!(odd == odd_table))
      return TableMismatch{mu, true, odd_table.to_string(), odd.to_string()};
  }
  return std::nullopt;
}

std::string coeff_table_json(const CoeffTable& t) {
  nlohmann::ordered_json j;
  j["N"] = t.N;
  j["m"] = t.m;
  for (int mu = 1; mu <= t.m; ++mu)
    for (int k = 0; k < static_cast<int>(t.C[mu].size()); ++k)
      j["C[" + std::to_string(mu) + "][" + std::to_string(k) + "]"] =
          format_rational(t.C[mu][k]);
  for (int mu = 1; mu <= t.m; ++mu)
    for (int k = 0; k < static_cast<int>(t.D[mu].size()); ++k)
      j["D[" + std::to_string(mu) + "][" + std::to_string(k) + "]"] =
          format_rational(t.D[mu][k]);
  return j.dump(2);
}

} // namespace rellich
