#include "rellich/transform.hpp"

#include "rellich/exact_constants.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rellich {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::domain_error(msg);
}

double poly_eval(const std::vector<Rational>& c, double x) {
  double acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + to_double(c[i]);
  return acc;
}

std::vector<Rational> poly_deriv(const std::vector<Rational>& c) {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(Rational(static_cast<int>(i)) * c[i]);
  if (d.empty()) d.push_back(0);
  return d;
}

/** w, w', and w'' + (N-1) w'/t of q(t^2) e^{-t^2} in one closed form. */
struct GaussianEval {
  std::vector<Rational> q, q1, q2;
  explicit GaussianEval(const GaussianPolyProfile& w)
      : q(w.even_coeffs), q1(poly_deriv(q)), q2(poly_deriv(q1)) {}

  double value(double t) const {
    double s = t * t;
    return poly_eval(q, s) * std::exp(-s);
  }
  double deriv(double t) const { return t * deriv_over_t(t); }
  double deriv_over_t(double t) const {  // w'(t)/t, smooth and nonzero at 0
    double s = t * t;
    return 2 * (poly_eval(q1, s) - poly_eval(q, s)) * std::exp(-s);
  }
  double radial_lap(double t, int N) const {  // w'' + (N-1) w'/t, smooth at 0
    double s = t * t;
    double a = poly_eval(q1, s) - poly_eval(q, s);
    double b = poly_eval(q2, s) - 2 * poly_eval(q1, s) + poly_eval(q, s);
    return (2 * N * a + 4 * s * b) * std::exp(-s);
  }
};

/** The map t(r) = (r^{-alpha} - R^{-alpha})^{-1/alpha} in overflow-safe form. */
struct MapPoint {
  double t;      // image variable
  double denom;  // 1 - (r/R)^alpha, computed by expm1 (exact near the rim)
  double X;      // (t/r)^alpha = 1/denom
};

MapPoint map_at(double r, double R, double alpha) {
  MapPoint m;
  m.denom = -std::expm1(alpha * std::log1p((r - R) / R));
  m.X = 1.0 / m.denom;
  m.t = r * std::pow(m.denom, -1.0 / alpha);
  return m;
}

/** Stretching by lambda != 1 moves piece images toward 0 or R; a profile that
 * vanishes on an initial interval keeps every image integral compact. */
void require_origin_gap(const RadialProfile& u) {
  require(!u.pieces.empty() && u.pieces.front().form.is_zero(),
          "profile must vanish near the origin");
}

double rel_gap(double a, double b) {
  double scale = std::max(std::fabs(a), std::fabs(b));
  return scale == 0 ? 0.0 : std::fabs(a - b) / scale;
}

QuadratureResult checked(QuadratureResult q, const char* what) {
  if (q.status == IntegralStatus::divergent)
    throw std::domain_error(std::string(what) + ": integral diverges");
  return q;
}

struct EnergyPair {
  double flat, ball, err_flat, err_ball;
};

/** Both sides of the second-order energy identity. */
EnergyPair energy_sides(const GaussianEval& w, const TransformParams& tp) {
  const int N = tp.N;
  const double p = to_double(tp.p);
  const double alpha = to_double(tp.alpha);
  const double R = to_double(tp.R);
  const double beta = to_double(transform_beta(tp));

  auto flat = checked(integrate_function(
                          [&](double t) {
                            if (p * t * t > 700) return 0.0;  // profile underflowed
                            return std::pow(std::fabs(w.radial_lap(t, N)), p) *
                                   std::pow(t, N - 1);
                          },
                          0, std::numeric_limits<double>::infinity(), tp.tol),
                      "flat energy");

  auto ball = checked(
      integrate_function(
          [&](double r) {
            MapPoint m = map_at(r, R, alpha);
            if (p * m.t * m.t > 700) return 0.0;  // profile underflowed
            // everything in terms of t/r = denom^{-1/alpha}: no division by
            // r or t survives, so the origin endpoint stays finite
            double tr = std::pow(m.denom, -1.0 / alpha);
            double dtdr = tr * m.X;  // (t/r)^{alpha+1}
            double wot = w.deriv_over_t(m.t);
            double up_over_r = tr * wot * dtdr;
            double upp = (w.radial_lap(m.t, N) - (N - 1) * wot) * dtdr * dtdr +
                         wot * (alpha + 1) * m.X * (m.X - 1) * tr * tr;
            double Lu = upp + up_over_r * ((alpha + 1) + (N - alpha - 2) * m.X);
            return std::pow(std::fabs(Lu), p) * std::pow(m.denom, beta) *
                   std::pow(r, N - 1);
          },
          0, R, tp.tol),
      "image energy");
  return {flat.value, ball.value, flat.abs_error_estimate, ball.abs_error_estimate};
}

/** Both sides of the potential identity. */
EnergyPair potential_sides(const GaussianEval& w, const TransformParams& tp) {
  const int N = tp.N;
  const double p = to_double(tp.p);
  const double alpha = to_double(tp.alpha);
  const double R = to_double(tp.R);
  const double tail = -(N - 2 * p + alpha) / alpha;

  auto flat = checked(integrate_function(
                          [&](double t) {
                            if (p * t * t > 700) return 0.0;
                            return std::pow(std::fabs(w.value(t)), p) *
                                   std::pow(t, N - 1 - 2 * p);
                          },
                          0, std::numeric_limits<double>::infinity(), tp.tol),
                      "flat potential");

  auto ball = checked(integrate_function(
                          [&](double r) {
                            MapPoint m = map_at(r, R, alpha);
                            if (p * m.t * m.t > 700) return 0.0;
                            return std::pow(std::fabs(w.value(m.t)), p) *
                                   std::pow(r, N - 1 - 2 * p) * std::pow(m.denom, tail);
                          },
                          0, R, tp.tol),
                      "image potential");
  return {flat.value, ball.value, flat.abs_error_estimate, ball.abs_error_estimate};
}

void validate(const TransformParams& tp) {
  require(tp.p > 1, "exponent must exceed 1");
  require(2 * tp.p < tp.N, "exponent must stay below N/2");
  require(tp.alpha > 0, "map exponent must be positive");
  require(tp.R > 0, "radius must be positive");
}

void push_common(IdentityCheck& c, const TransformParams& tp) {
  c.params_used.emplace_back("N", tp.N);
  c.params_used.emplace_back("p", to_double(tp.p));
  c.params_used.emplace_back("alpha", to_double(tp.alpha));
  c.params_used.emplace_back("beta", to_double(transform_beta(tp)));
}

/** r-images of u's nonzero pieces under s = r^lambda R^{1-lambda}. */
QuadratureResult integrate_over_images(const RadialProfile& u, double lambda,
                                       const std::function<double(double)>& g, double tol) {
  const double R = to_double(u.R);
  QuadratureResult total;
  total.status = IntegralStatus::converged;
  for (const ProfilePiece& piece : u.pieces) {
    if (piece.form.is_zero()) continue;
    double lo = piece.r_lo == 0 ? 0.0 : R * std::pow(piece.r_lo / R, 1.0 / lambda);
    double hi = R * std::pow(piece.r_hi / R, 1.0 / lambda);
    QuadratureResult q = checked(integrate_function(g, lo, hi, tol), "stretched integral");
    total.value += q.value;
    total.abs_error_estimate += q.abs_error_estimate;
    total.subdivisions += q.subdivisions;
    if (q.status == IntegralStatus::tolerance_not_met) total.status = q.status;
  }
  return total;
}

/** Pointwise integral of h(s) over u's own nonzero pieces. */
QuadratureResult integrate_over_pieces(const RadialProfile& u,
                                       const std::function<double(double)>& h, double tol) {
  QuadratureResult total;
  total.status = IntegralStatus::converged;
  for (const ProfilePiece& piece : u.pieces) {
    if (piece.form.is_zero()) continue;
    QuadratureResult q = checked(integrate_function(h, piece.r_lo, piece.r_hi, tol), "integral");
    total.value += q.value;
    total.abs_error_estimate += q.abs_error_estimate;
    total.subdivisions += q.subdivisions;
    if (q.status == IntegralStatus::tolerance_not_met) total.status = q.status;
  }
  return total;
}

double log_R_over(double r, double R) {
  return r > 0.5 * R ? -std::log1p((r - R) / R) : std::log(R) - std::log(r);
}

/** energy of the stretched profile: int |lap u_lambda|^p r^{N-1} dr. */
QuadratureResult scaled_lap_energy(const RadialProfile& u, const RadialProfile& du,
                                   const RadialProfile& ddu, int N, double p, double lambda,
                                   double a, double tol) {
  const double R = to_double(u.R);
  const double amp = std::pow(lambda, a);
  auto g = [&](double r) {
    double s = R * std::pow(r / R, lambda);
    double up = evaluate(du, s);
    double upp = evaluate(ddu, s) - (N - 1) * up / s;
    double sp = lambda * s / r;
    double spp = lambda * (lambda - 1) * s / (r * r);
    double lap = amp * (upp * sp * sp + up * spp) + (N - 1) / r * amp * up * sp;
    return std::pow(std::fabs(lap), p) * std::pow(r, N - 1);
  };
  return integrate_over_images(u, lambda, g, tol);
}

} // namespace

double eval_gaussian_poly(const GaussianPolyProfile& w, double t) {
  return GaussianEval(w).value(t);
}

Rational transform_beta(const TransformParams& tp) {
  return ((2 * tp.p - 1) * (tp.alpha + 1) + 1 - tp.N) / tp.alpha;
}

Rational alpha_matching_power_weight(int N, const Rational& p) {
  return (Rational(N) - 2 * p) / (p - 1);
}

Rational alpha_flattening_weight(int N, const Rational& p) {
  return (Rational(N) - 2 * p) / (2 * p - 1);
}

IdentityCheck transform_energy_identity(const GaussianPolyProfile& w, const TransformParams& tp) {
  validate(tp);
  GaussianEval ge(w);
  EnergyPair e = energy_sides(ge, tp);
  IdentityCheck c;
  c.identity_id = "second_order_energy_image";
  c.lhs = e.flat;
  c.rhs = e.ball;
  c.rel_err = rel_gap(e.flat, e.ball);
  c.quad_error = e.err_flat + e.err_ball;
  push_common(c, tp);
  return c;
}

IdentityCheck transform_potential_identity(const GaussianPolyProfile& w,
                                           const TransformParams& tp) {
  validate(tp);
  GaussianEval ge(w);
  EnergyPair e = potential_sides(ge, tp);
  IdentityCheck c;
  c.identity_id = "potential_image";
  c.lhs = e.flat;
  c.rhs = e.ball;
  c.rel_err = rel_gap(e.flat, e.ball);
  c.quad_error = e.err_flat + e.err_ball;
  push_common(c, tp);
  return c;
}

IdentityCheck transform_quotient_identity(const GaussianPolyProfile& w, const TransformParams& tp) {
  validate(tp);
  GaussianEval ge(w);
  EnergyPair en = energy_sides(ge, tp);
  EnergyPair po = potential_sides(ge, tp);
  IdentityCheck c;
  c.identity_id = "second_order_quotient_image";
  c.lhs = en.flat / po.flat;
  c.rhs = en.ball / po.ball;
  c.rel_err = rel_gap(c.lhs, c.rhs);
  c.quad_error = (en.err_flat + c.lhs * po.err_flat) / po.flat +
                 (en.err_ball + c.rhs * po.err_ball) / po.ball;
  push_common(c, tp);
  double sharp =
      ExactConstant{subcritical_rellich_constant(tp.N, 2, tp.p).base, tp.p}.value();
  c.params_used.emplace_back("sharp_constant", sharp);
  c.params_used.emplace_back("flat_margin", en.flat - sharp * po.flat);
  c.params_used.emplace_back("image_margin", en.ball - sharp * po.ball);
  return c;
}

IdentityCheck scaling_log_identity(const RadialProfile& u, const Rational& p,
                                   const Rational& gamma, const Rational& lambda,
                                   const Rational& a_exp) {
  require(lambda > 0, "stretch factor must be positive");
  require_origin_gap(u);
  const double R = to_double(u.R);
  const double lam = to_double(lambda);
  const double pd = to_double(p);
  const double gd = to_double(gamma);
  const double amp = std::pow(lam, to_double(a_exp));

  auto g = [&](double r) {
    if (r <= 0 || r >= R) return 0.0;
    double s = R * std::pow(r / R, lam);
    double uval = amp * evaluate(u, s);
    if (uval == 0) return 0.0;
    double t = log_R_over(r, R);
    return std::pow(std::fabs(uval), pd) / r * std::pow(t, -gd);
  };
  QuadratureResult lhs = integrate_over_images(u, lam, g, 1e-12);

  WeightSpec wspec;
  wspec.r_power = -1;
  wspec.log_power = -gamma;
  QuadratureResult base = checked(integrate_power(u, p, wspec, 1e-12), "weighted-log integral");
  double factor = std::pow(lam, to_double(a_exp * p + gamma - 1));

  IdentityCheck c;
  c.identity_id = "stretch_log_exponent_law";
  c.lhs = lhs.value;
  c.rhs = factor * base.value;
  c.rel_err = rel_gap(c.lhs, c.rhs);
  c.quad_error = lhs.abs_error_estimate + factor * base.abs_error_estimate;
  c.params_used.emplace_back("p", pd);
  c.params_used.emplace_back("gamma", gd);
  c.params_used.emplace_back("lambda", lam);
  c.params_used.emplace_back("a", to_double(a_exp));
  c.params_used.emplace_back("exponent", to_double(a_exp * p + gamma - 1));
  return c;
}

IdentityCheck scaling_quotient_invariance(const RadialProfile& u, int N, const Rational& lambda) {
  require(lambda > 0, "stretch factor must be positive");
  require_origin_gap(u);
  require(N >= 2, "dimension must be at least 2");
  const double R = to_double(u.R);
  const double lam = to_double(lambda);
  const double amp = std::pow(lam, -(N - 1.0) / N);
  RadialProfile du = kth_derivative_profile(u, 1, N);

  auto g_num = [&](double r) {
    if (r <= 0 || r >= R) return 0.0;
    double s = R * std::pow(r / R, lam);
    double val = amp * evaluate(du, s) * lam * s / r;
    return std::pow(std::fabs(val), N) * std::pow(r, N - 1);
  };
  auto g_den = [&](double r) {
    if (r <= 0 || r >= R) return 0.0;
    double s = R * std::pow(r / R, lam);
    double val = amp * evaluate(u, s);
    if (val == 0) return 0.0;
    double t = log_R_over(r, R);
    return std::pow(std::fabs(val), N) / r * std::pow(t, -static_cast<double>(N));
  };
  QuadratureResult num_s = integrate_over_images(u, lam, g_num, 1e-12);
  QuadratureResult den_s = integrate_over_images(u, lam, g_den, 1e-12);

  WeightSpec grad_w;
  grad_w.r_power = N - 1;
  WeightSpec log_w;
  log_w.r_power = -1;
  log_w.log_power = -N;
  QuadratureResult num = checked(integrate_power(du, N, grad_w, 1e-12), "gradient integral");
  QuadratureResult den = checked(integrate_power(u, N, log_w, 1e-12), "weighted-log integral");

  IdentityCheck c;
  c.identity_id = "first_order_quotient_invariance";
  c.lhs = num_s.value / den_s.value;
  c.rhs = num.value / den.value;
  c.rel_err = rel_gap(c.lhs, c.rhs);
  c.quad_error = (num_s.abs_error_estimate + c.lhs * den_s.abs_error_estimate) / den_s.value +
                 (num.abs_error_estimate + c.rhs * den.abs_error_estimate) / den.value;
  c.params_used.emplace_back("N", N);
  c.params_used.emplace_back("lambda", lam);
  return c;
}

IdentityCheck scaling_lap_identity(const RadialProfile& u, int N, const Rational& p,
                                   const Rational& lambda, const Rational& a_exp) {
  require(lambda > 0, "stretch factor must be positive");
  require(2 * p == Rational(N), "the energy rescales cleanly only at p = N/2");
  require_origin_gap(u);
  const double lam = to_double(lambda);
  const double pd = to_double(p);
  const double ad = to_double(a_exp);
  RadialProfile du = kth_derivative_profile(u, 1, N);
  RadialProfile ddu = kth_derivative_profile(u, 2, N);

  QuadratureResult lhs = scaled_lap_energy(u, du, ddu, N, pd, lam, ad, 1e-12);

  auto h = [&](double s) {
    double up = evaluate(du, s);
    double upp = evaluate(ddu, s) - (N - 1) * up / s;
    double val = upp + ((N - 2) / lam + 1) * up / s;
    return std::pow(std::fabs(val), pd) * std::pow(s, N - 1);
  };
  QuadratureResult base = integrate_over_pieces(u, h, 1e-12);
  double factor = std::pow(lam, ad * pd + N - 1);

  IdentityCheck c;
  c.identity_id = "stretch_second_order_energy";
  c.lhs = lhs.value;
  c.rhs = factor * base.value;
  c.rel_err = rel_gap(c.lhs, c.rhs);
  c.quad_error = lhs.abs_error_estimate + factor * base.abs_error_estimate;
  c.params_used.emplace_back("N", N);
  c.params_used.emplace_back("p", pd);
  c.params_used.emplace_back("lambda", lam);
  c.params_used.emplace_back("a", ad);
  return c;
}

std::vector<ScalingBoundSample> scaling_lap_bound(const RadialProfile& u, int N, const Rational& p,
                                                  const Rational& a_exp,
                                                  const std::vector<Rational>& lambdas) {
  require(2 * p == Rational(N), "the envelope exponents match only at p = N/2");
  require_origin_gap(u);
  const double pd = to_double(p);
  const double ad = to_double(a_exp);
  RadialProfile du = kth_derivative_profile(u, 1, N);
  RadialProfile ddu = kth_derivative_profile(u, 2, N);

  auto h1 = [&](double s) {
    double up = evaluate(du, s);
    double upp = evaluate(ddu, s) - (N - 1) * up / s;
    return std::pow(std::fabs(upp + up / s), pd) * std::pow(s, N - 1);
  };
  double i1 = integrate_over_pieces(u, h1, 1e-12).value;
  WeightSpec w2;
  w2.r_power = Rational(N) - 1 - p;
  double i2 = checked(integrate_power(du, p, w2, 1e-12), "gradient integral").value;
  double c_env = std::pow(2.0, pd - 1) * (i1 + std::pow(N - 2.0, pd) * i2);

  std::vector<ScalingBoundSample> out;
  for (const Rational& lambda : lambdas) {
    double lam = to_double(lambda);
    ScalingBoundSample sample;
    sample.lambda = lambda;
    sample.energy = scaled_lap_energy(u, du, ddu, N, pd, lam, ad, 1e-12).value;
    sample.envelope = c_env * std::max(std::pow(lam, ad * pd + N - 1),
                                       std::pow(lam, ad * pd + pd - 1));
    out.push_back(sample);
  }
  return out;
}

} // namespace rellich
