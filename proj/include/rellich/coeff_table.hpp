#pragma once

#include "rellich/log_terms.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rellich {

/**
 * Exact coefficients C[mu][j] (j = 0..2mu-1) and D[mu][j] (j = 0..2mu) of the
 * closed polyharmonic forms of a pure log power: for even order 2mu,
 *   Lap^mu (log R/r)^a = sum_j C[mu][j] FF(a, 2mu-j) r^-2mu (log R/r)^(a-2mu+j),
 * and for the radial derivative of order 2mu+1,
 *   d/dr Lap^mu (log R/r)^a = sum_j D[mu][j] FF(a, 2mu-j+1) r^-2mu-1 (log R/r)^(a-2mu+j-1),
 * with FF(a, n) the falling factorial. Built by the two-term recursion; the
 * top entry doubles as a closed-form cross-check.
 */
struct CoeffTable {
  int m = 0;
  int N = 0;
  std::vector<std::vector<Rational>> C;  // C[mu] has 2mu entries, mu = 1..m (C[0] unused)
  std::vector<std::vector<Rational>> D;  // D[mu] has 2mu+1 entries
};

CoeffTable coeff_table(int m, int N);

/** (-1)^(m-1)/(2m) * prod_{j=1..m} 2j(N-2j); equals C[m][2m-1]. */
Rational coeff_top_closed_form(int m, int N);

/** The even-order table form as a TermSum (for comparison against the generic algebra). */
TermSum table_even_form(const CoeffTable& t, int mu);
/** The odd-order table form as a TermSum. */
TermSum table_odd_form(const CoeffTable& t, int mu);

struct TableMismatch {
  int mu = 0;
  bool odd = false;
  std::string expected;  // table form
  std::string got;       // generic algebra
};

/**
 * Re-derives every order mu <= m_max generically (repeated radial Laplacian of
 * the symbolic log power) and compares with the table form as a polynomial
 * identity in alpha. Returns the first mismatch, or nullopt when all match.
 */
std::optional<TableMismatch> verify_table(int m_max, int N);

/** {"N":…, "m":…, "C[1][0]":"1", …} with exact fraction strings, stable order. */
std::string coeff_table_json(const CoeffTable& t);

} // namespace rellich
