#pragma once

#include "rellich/quadrature.hpp"

#include <vector>

namespace rellich {

struct RayleighParams {
  int N = 4;
  int k = 2;
  Rational gamma = 2;
  Rational R = 1;
  Rational a = 1;  // weight uses log(aR/r)
  double tol = 1e-10;
};

/** N/k — the only exponent at which the quotient is dilation invariant. */
Rational critical_exponent(const RayleighParams& prm);

struct RayleighResult {
  double numerator = 0;
  double denominator = 0;
  double quotient = 0;  // 0 when the denominator diverges (quotient collapses)
  double quad_error = 0;  // combined relative error estimate of the ratio
  IntegralStatus num_status = IntegralStatus::converged;
  IntegralStatus den_status = IntegralStatus::converged;
  bool ok() const {
    return num_status == IntegralStatus::converged && den_status == IntegralStatus::converged;
  }
};

/**
 * (int |D^k u|^p r^{N-1} dr) / (int |u|^p r^{-1} (log aR/r)^{-gamma} dr) at
 * p = N/k. A divergent denominator yields quotient 0 (the probe kills the
 * infimum); a divergent numerator yields quotient 0 with num_status set (the
 * probe is inadmissible) — callers decide which flags are errors.
 */
RayleighResult rayleigh_quotient(const RadialProfile& u, const RayleighParams& prm);

struct SweepRow {
  Rational epsilon;
  double quotient = 0;
  double quad_error = 0;
  IntegralStatus num_status = IntegralStatus::converged;
  IntegralStatus den_status = IntegralStatus::converged;
};

enum class SweepFamily { origin, rim };

struct SweepResult {
  std::vector<SweepRow> rows;
  double extrapolated = 0;   // limit from the last three usable rows (NaN if not fitted)
  double observed_order = 0; // fitted epsilon-power (NaN if not fitted)
};

/** Logarithmic transition window (1 <= log R/r <= 9) of class C^{k+1} for the sweep families. */
CutoffSpec default_cutoff(const Rational& R, int k);

/**
 * Quotient per epsilon plus a Richardson-style fit Q(eps) = Q_inf + C eps^q on
 * the final three rows (requires a geometric eps list). Divergent-denominator
 * rows keep quotient 0 and are excluded from the fit.
 */
SweepResult epsilon_sweep(SweepFamily fam, const RayleighParams& prm,
                          const std::vector<Rational>& eps_list);

/** Geometric list 1/5, 1/10, ..., 1/2560. */
std::vector<Rational> default_eps_list();

} // namespace rellich
