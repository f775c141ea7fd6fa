#include "rellich/rayleigh.hpp"

#include "rellich/profiles.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rellich {

Rational critical_exponent(const RayleighParams& prm) {
  if (prm.k <= 0 || prm.N <= prm.k) throw std::domain_error("need 0 < k < N");
  return Rational(prm.N, prm.k);
}

RayleighResult rayleigh_quotient(const RadialProfile& u, const RayleighParams& prm) {
  const Rational p = critical_exponent(prm);

  RadialProfile du = kth_derivative_profile(u, prm.k, prm.N);

  WeightSpec num_w;
  num_w.r_power = prm.N - 1;
  num_w.log_power = 0;
  num_w.a = 1;
  QuadratureResult num = integrate_power(du, p, num_w, prm.tol);

  WeightSpec den_w;
  den_w.r_power = -1;
  den_w.log_power = -prm.gamma;
  den_w.a = prm.a;
  QuadratureResult den = integrate_power(u, p, den_w, prm.tol);

  RayleighResult out;
  out.numerator = num.value;
  out.denominator = den.value;
  out.num_status = num.status;
  out.den_status = den.status;
  if (den.status == IntegralStatus::divergent || num.status == IntegralStatus::divergent) {
    out.quotient = 0;
    out.quad_error = 0;
    return out;
  }
  if (den.value <= 0) {
    out.quotient = 0;
    out.quad_error = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  out.quotient = num.value / den.value;
  double rel_num = num.abs_error_estimate / std::max(std::fabs(num.value), 1e-300);
  double rel_den = den.abs_error_estimate / std::max(den.value, 1e-300);
  out.quad_error = out.quotient * (rel_num + rel_den);
  return out;
}

CutoffSpec default_cutoff(const Rational&, int k) {
  // Logarithmic window over 1 <= log(R/r) <= 9: the slow transition in t keeps
  // the k-th derivative of the cutoff small, so the divergent head term of the
  // sweep families dominates the window correction and the extrapolation to
  // eps = 0 converges. Scale-free in R by construction.
  CutoffSpec c;
  c.window = CutoffSpec::Window::logarithmic;
  c.inner = 1;
  c.outer = 9;
  c.q = k + 1;
  return c;
}

std::vector<Rational> default_eps_list() {
  std::vector<Rational> eps;
  for (int i = 0; i < 10; ++i) eps.push_back(Rational(1, 5 * (1 << i)));
  return eps;
}

SweepResult epsilon_sweep(SweepFamily fam, const RayleighParams& prm,
                          const std::vector<Rational>& eps_list) {
  SweepResult out;
  out.extrapolated = std::numeric_limits<double>::quiet_NaN();
  out.observed_order = std::numeric_limits<double>::quiet_NaN();
  CutoffSpec cutoff = default_cutoff(prm.R, prm.k);
  if (fam == SweepFamily::rim) {
    // The rim profile grows toward deep t and the derivative chain feeds that
    // growth back as a window-region cost ~ t^(2 alpha - 1) per unit length, so
    // the window must hug the rim.  The lowest admissible smoothness keeps the
    // transition polynomial's coefficients (and its derivative norms) small.
    cutoff.inner = Rational(1, 4);
    cutoff.outer = Rational(9, 4);
    cutoff.q = std::max(prm.k - 1, 1);
  }

  for (const Rational& eps : eps_list) {
    RadialProfile u = (fam == SweepFamily::origin)
                          ? make_phi_eps(prm.N, prm.k, prm.R, eps, cutoff)
                          : make_psi_eps(prm.N, prm.k, prm.R, eps, cutoff);
    RayleighResult r = rayleigh_quotient(u, prm);
    SweepRow row;
    row.epsilon = eps;
    row.quotient = r.quotient;
    row.quad_error = r.quad_error;
    row.num_status = r.num_status;
    row.den_status = r.den_status;
    out.rows.push_back(row);
  }

  // Fit Q(eps) = Q_inf + C eps^q on the last three usable rows, which needs a
  // shared ratio rho = eps_{i+1}/eps_i between consecutive usable rows.  A row
  // enters the fit when both integrals exist and the achieved relative error
  // is far below the extrapolation targets, even if a requested tolerance was
  // stricter than the evaluation noise floor of the cutoff polynomial allows.
  constexpr double kFitRelTol = 1e-6;
  std::vector<const SweepRow*> usable;
  for (const SweepRow& row : out.rows)
    if (row.num_status != IntegralStatus::divergent &&
        row.den_status != IntegralStatus::divergent && row.quotient > 0 &&
        row.quad_error <= kFitRelTol * row.quotient)
      usable.push_back(&row);
  if (usable.size() < 3) {
    if (!usable.empty()) out.extrapolated = usable.back()->quotient;
    return out;
  }
  const SweepRow* r1 = usable[usable.size() - 3];
  const SweepRow* r2 = usable[usable.size() - 2];
  const SweepRow* r3 = usable[usable.size() - 1];
  Rational rho12 = r2->epsilon / r1->epsilon;
  Rational rho23 = r3->epsilon / r2->epsilon;
  if (rho12 != rho23 || rho12 >= 1 || rho12 <= 0) {
    out.extrapolated = r3->quotient;
    return out;
  }
  double rho = to_double(rho12);
  double d12 = r2->quotient - r1->quotient;
  double d23 = r3->quotient - r2->quotient;
  if (d23 == 0 || d12 == 0 || (d12 > 0) != (d23 > 0) ||
      std::fabs(d23) >= std::fabs(d12)) {
    out.extrapolated = r3->quotient;
    return out;
  }
  double q = std::log(d12 / d23) / std::log(1.0 / rho);
  out.observed_order = q;
  // With sigma = rho^q = d23/d12 < 1:  Q_inf = Q3 + d23 * sigma / (1 - sigma).
  double sigma = d23 / d12;
  out.extrapolated = r3->quotient + d23 * sigma / (1.0 - sigma);
  return out;
}

} // namespace rellich
