#include "rellich/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace rellich {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Rational rational_pow_int(const Rational& b, int e) {
  Rational acc(1), base = b;
  int n = e;
  while (n > 0) {
    if (n & 1) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double horner(const std::vector<double>& c, double t) {
  double v = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
  return v;
}

struct Bucket {
  double expo_rel = 0;         // ebase - e_min
  std::vector<double> taylor;  // exact Taylor coefficients of the bucket sum
};

/**
 * One piece of the profile mapped to t = log(R/r), with the monomial
 * r^{s_min} t^{e_min} factored out so pointwise evaluation is overflow-free,
 * endpoint exponents resolved exactly, and an exact local series available
 * near t = 0 (direct evaluation there would cancel catastrophically for
 * pieces vanishing to high order at the rim).
 */
struct PreparedPiece {
  double t_lo = 0, t_hi = kInf;
  bool rim = false;     // reaches t = 0 (r = R)
  bool origin = false;  // reaches t = infinity (r = 0)
  std::vector<double> c;    // c_j * R^{s_j - s_min}
  std::vector<BigFloat> cb;  // the same coefficients before rounding
  std::vector<double> ds;   // s_j - s_min >= 0
  std::vector<double> de;   // e_j - e_min >= 0
  std::vector<double> det;  // e_j - e_star (tail normalization)
  double p_d = 1, wlog_d = 0, lna = 0, lnR = 0;
  double emin_p = 0;   // e_min * p_exp
  double estar_p = 0;  // e_star * p_exp
  double kappa_d = 0;  // s_min*p + w_r + 1
  double sigma_d = 0;  // -tau - 1 > 0 for kappa == 0 convergent tails
  double rim_nu = 0;   // exact exponent of the integrand as t -> 0 (rim pieces)
  double demax = 0;
  double t_series = 0;  // below this, evaluate through the exact series
  std::vector<Bucket> buckets;

  double hfac(double t) const {
    if (rim && t < t_series) {
      double v = 0;
      for (const auto& b : buckets)
        v += (b.expo_rel == 0 ? 1.0 : std::pow(t, b.expo_rel)) * horner(b.taylor, t);
      return v;
    }
    double v = 0, amp = 0;
    double lt = std::log(t);
    for (size_t j = 0; j < c.size(); ++j) {
      double x = c[j] * std::exp(-ds[j] * t + de[j] * lt);
      v += x;
      amp += std::fabs(x);
    }
    // Expanded transition-window coefficients are huge and cancel almost
    // completely where the profile vanishes; redo heavy cancellations with
    // the unrounded coefficients so those regions keep relative accuracy.
    if (std::fabs(v) >= 1e-3 * amp || amp == 0.0) return v;
    size_t dmax = 0;
    for (size_t j = 0; j < ds.size(); ++j) dmax = std::max(dmax, static_cast<size_t>(ds[j]));
    std::vector<BigFloat> xp(dmax + 1);
    xp[0] = 1;
    if (dmax > 0) xp[1] = exp(BigFloat(-t));
    for (size_t k = 2; k <= dmax; ++k) xp[k] = xp[k - 1] * xp[1];
    BigFloat vb = 0, ltb(lt);
    for (size_t j = 0; j < c.size(); ++j) {
      BigFloat x = cb[j] * xp[static_cast<size_t>(ds[j])];
      if (de[j] != 0.0) x *= exp(BigFloat(de[j]) * ltb);
      vb += x;
    }
    return static_cast<double>(vb);
  }

  /** log|h| via the exact series, immune to t^{expo} underflow; -inf if h = 0. */
  double hfac_series_log(double t, double lt) const {
    double best = -kInf;
    for (const auto& b : buckets) {
      double hv = horner(b.taylor, t);
      if (hv == 0.0) continue;
      best = std::max(best, b.expo_rel * lt + std::log(std::fabs(hv)));
    }
    if (best == -kInf) return best;
    double s = 0;
    for (const auto& b : buckets) {
      double hv = horner(b.taylor, t);
      if (hv == 0.0) continue;
      s += std::copysign(std::exp(b.expo_rel * lt + std::log(std::fabs(hv)) - best), hv);
    }
    if (s == 0.0) return -kInf;
    return best + std::log(std::fabs(s));
  }

  /** log of the full integrand at ln t = lt, valid on the rim series region. */
  double rim_log(double lt) const {
    double t = std::exp(lt);  // underflow to 0 is harmless: the series is exact there
    double lh = hfac_series_log(t, lt);
    if (lh == -kInf) return -kInf;
    double lw = wlog_d == 0.0 ? 0.0 : wlog_d * (lna == 0.0 ? lt : std::log(t + lna));
    return p_d * lh + emin_p * lt + kappa_d * (lnR - t) + lw;
  }

  /** |h|^p * t^{e_min p} * r^kappa * (t + ln a)^{w_log}, assembled in log space. */
  double integrand(double t) const {
    if (rim && t < t_series) {
      double lf = rim_log(std::log(t));
      return lf < -700.0 ? 0.0 : std::exp(lf);
    }
    double ah = std::fabs(hfac(t));
    if (ah == 0.0) return 0.0;
    double logw = emin_p * std::log(t) + kappa_d * (lnR - t) + wlog_d * std::log(t + lna);
    return std::exp(p_d * std::log(ah) + logw);
  }

  /** log of the integrand at ln t = lt, kappa == 0 pieces only; -inf if it vanishes. */
  double tail_log(double lt) const {
    double t = std::exp(std::min(lt, 700.0));  // exp(-ds t) is 0 past this anyway
    double g = 0;
    for (size_t j = 0; j < c.size(); ++j) g += c[j] * std::exp(-ds[j] * t + det[j] * lt);
    double ag = std::fabs(g);
    if (ag == 0.0) return -kInf;
    double lw = wlog_d == 0.0 ? 0.0 : wlog_d * (lt < 690.0 ? std::log(t + lna) : lt);
    return p_d * std::log(ag) + estar_p * lt + lw;
  }
};

struct PieceAnalysis {
  bool empty = false;
  bool divergent = false;
  PreparedPiece pp;
  // origin-side classification
  bool exp_decay = false;   // kappa > 0
  bool power_tail = false;  // kappa == 0, tau < -1
};

PieceAnalysis prepare_piece(const ProfilePiece& piece, const Rational& alpha, const Rational& R,
                            const Rational& p_exp, const WeightSpec& w) {
  PieceAnalysis an;
  auto frozen = piece.form.freeze(alpha);
  if (frozen.empty()) {
    an.empty = true;
    return an;
  }
  PreparedPiece& pp = an.pp;
  double Rd = to_double(R);
  pp.rim = piece.r_hi >= Rd * (1 - 1e-14);
  pp.origin = piece.r_lo <= 0.0;
  pp.t_lo = pp.rim ? 0.0 : std::log(Rd / piece.r_hi);
  pp.t_hi = pp.origin ? kInf : std::log(Rd / piece.r_lo);
  pp.p_d = to_double(p_exp);
  pp.wlog_d = to_double(w.log_power);
  pp.lna = std::log(to_double(w.a));
  pp.lnR = std::log(Rd);

  int s_min = frozen[0].s;
  Rational e_min = frozen[0].e;
  for (const auto& t : frozen) {
    s_min = std::min(s_min, t.s);
    if (t.e < e_min) e_min = t.e;
  }
  int s_abs_max = 1;
  for (const auto& t : frozen) s_abs_max = std::max(s_abs_max, std::abs(t.s - s_min));
  Rational e_star = e_min;  // max e within the s_min group
  bool have_star = false;
  for (const auto& t : frozen)
    if (t.s == s_min && (!have_star || t.e > e_star)) {
      e_star = t.e;
      have_star = true;
    }

  for (const auto& t : frozen) {
    pp.c.push_back(to_double(t.c * rational_pow_int(R, t.s - s_min)));
    pp.cb.push_back(to_bigfloat(t.c * rational_pow_int(R, t.s - s_min)));
    pp.ds.push_back(double(t.s - s_min));
    pp.de.push_back(to_double(t.e - e_min));
    pp.det.push_back(to_double(t.e - e_star));
    pp.demax = std::max(pp.demax, pp.de.back());
  }
  pp.emin_p = to_double(e_min * p_exp);
  pp.estar_p = to_double(e_star * p_exp);
  Rational kappa = Rational(s_min) * p_exp + w.r_power + 1;
  pp.kappa_d = to_double(kappa);
  pp.t_series = 4.0 / s_abs_max;

  if (pp.rim) {
    // exact local expansion at t = 0: bucket the log exponents by fractional
    // part (integer-offset exponents can cancel jointly; distinct fractional
    // parts cannot), expand each bucket's sum of c * R^{ds} e^{-ds t} t^{shift}
    // exactly, and read off the true vanishing order.
    struct RawBucket {
      Rational ebase;
      std::vector<size_t> idx;
    };
    std::map<Rational, RawBucket> raw;
    for (size_t j = 0; j < frozen.size(); ++j) {
      Rational frac = frozen[j].e - rational_floor(frozen[j].e);
      auto [it, inserted] = raw.try_emplace(frac, RawBucket{frozen[j].e, {}});
      if (!inserted) it->second.ebase = std::min(it->second.ebase, frozen[j].e);
      it->second.idx.push_back(j);
    }
    bool have_mu = false;
    Rational mu(0);
    for (auto& [frac, rb] : raw) {
      int max_shift = 0;
      for (size_t j : rb.idx) {
        Rational sh = frozen[j].e - rb.ebase;
        max_shift = std::max(max_shift, numerator(sh).convert_to<int>());
      }
      int detect = max_shift + int(rb.idx.size());
      int depth = detect + 44;
      std::vector<Rational> taylor(depth + 1, Rational(0));
      for (size_t j : rb.idx) {
        Rational rel = frozen[j].e - rb.ebase;
        int shift = numerator(rel).convert_to<int>();
        Rational q = frozen[j].c * rational_pow_int(R, frozen[j].s - s_min);
        int sigma = frozen[j].s - s_min;
        for (int d = shift; d <= depth; ++d) {
          int n = d - shift;
          taylor[d] += q * rational_pow_int(Rational(-sigma), n) / Rational(factorial(n));
        }
      }
      int ord = -1;
      for (int d = 0; d <= detect; ++d)
        if (taylor[d] != 0) {
          ord = d;
          break;
        }
      if (ord < 0) continue;  // cannot happen (independence bound), defensive
      Rational cand = rb.ebase + ord;
      if (!have_mu || cand < mu) {
        mu = cand;
        have_mu = true;
      }
      Bucket b;
      b.expo_rel = to_double(rb.ebase - e_min);
      b.taylor.reserve(taylor.size());
      for (const auto& q : taylor) b.taylor.push_back(to_double(q));
      pp.buckets.push_back(std::move(b));
    }
    Rational nu = mu * p_exp + (w.a == 1 ? w.log_power : Rational(0));
    if (nu <= -1) {
      an.divergent = true;
      return an;
    }
    pp.rim_nu = to_double(nu);
  }

  if (pp.origin) {
    if (kappa < 0) {
      an.divergent = true;
      return an;
    }
    if (kappa == 0) {
      Rational tau = e_star * p_exp + w.log_power;
      if (tau >= -1) {
        an.divergent = true;
        return an;
      }
      pp.sigma_d = to_double(-1 - tau);
      an.power_tail = true;
    } else {
      an.exp_decay = true;
    }
  }
  return an;
}

struct Accumulator {
  double value = 0, err = 0;
  int panels = 0;
  void add(double v, double e) {
    value += v;
    err += e;
    ++panels;
  }
};

void integrate_piece(const PieceAnalysis& an, double tol, Accumulator& acc, bool& tol_fail) {
  const PreparedPiece& pp = an.pp;
  boost::math::quadrature::tanh_sinh<double> ts(12);
  auto gk = [&](double a, double b, double* e) {
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        [&pp](double t) { return pp.integrand(t); }, a, b, 13, tol * 0.25, e);
  };
  double cur = pp.t_lo;
  if (pp.rim) {
    double t1 = std::isfinite(pp.t_hi) ? std::min(pp.t_series, 0.45 * pp.t_hi) : pp.t_series;
    double e = 0;
    double v = 0;
    if (pp.rim_nu < 0) {
      // z = t^{nu+1} turns the exact leading power A t^{nu} into a constant
      // A/(nu+1); corrections vanish at z = 0, so the endpoint is regular
      double s1 = pp.rim_nu + 1.0;
      double Z = std::pow(t1, s1);
      auto sub = [&pp, s1](double z) {
        if (z <= 0.0) return 0.0;
        double lz = std::log(z);
        double lt = lz / s1;
        double lf = pp.rim_log(lt);
        if (lf == -kInf) return 0.0;
        double ls = lf + lt - lz - std::log(s1);
        return ls < -700.0 ? 0.0 : std::exp(std::min(ls, 700.0));
      };
      v = ts.integrate(sub, 0.0, Z, tol * 0.25, &e);
    } else {
      v = ts.integrate([&pp](double t) { return pp.integrand(t); }, 0.0, t1, tol * 0.25, &e);
    }
    acc.add(v, std::fabs(e));
    cur = t1;
  }
  if (!pp.origin) {
    double e = 0;
    double v = gk(cur, pp.t_hi, &e);
    acc.add(v, e);
    return;
  }
  if (an.power_tail) {
    // find where the leading tail term dominates the rest, then map (T, inf)
    // to (0, 1] by u = (T/t)^sigma, which turns the leading power A t^tau into
    // a constant A T^{tau+1}/sigma with corrections vanishing at u = 0
    double T = std::max({10.0, 1.5 * cur + 5.0});
    auto rest_small = [&pp](double t) {
      double lt = std::log(t);
      double lead = 0, rest = 0;
      for (size_t j = 0; j < pp.c.size(); ++j) {
        double m = std::fabs(pp.c[j]) * std::exp(-pp.ds[j] * t + pp.det[j] * lt);
        if (pp.ds[j] == 0 && pp.det[j] == 0)
          lead += m;
        else
          rest += m;
      }
      return rest * 3 < lead;
    };
    while (!rest_small(T) && T < 3e5) T *= 2;
    double e = 0;
    double v = gk(cur, T, &e);
    acc.add(v, e);
    double lnT = std::log(T);
    double sg = pp.sigma_d;
    auto sub = [&pp, lnT, sg](double u) {
      if (u <= 0.0) return 0.0;
      double lu = std::log(u);
      double lf = pp.tail_log(lnT - lu / sg);
      if (!std::isfinite(lf)) return 0.0;
      double ls = lf + lnT - std::log(sg) + (-1.0 - 1.0 / sg) * lu;
      if (ls < -700.0) return 0.0;
      return std::exp(std::min(ls, 700.0));
    };
    double e2 = 0;
    double v2 = ts.integrate(sub, 0.0, 1.0, tol * 0.25, &e2);
    acc.add(v2, std::fabs(e2));
    return;
  }
  // exponential decay: fixed-length panels until the running total stops moving
  double L = std::max(8.0, 4.0 / pp.kappa_d);
  double seg_acc = 0;
  double last_v = 0;
  int it = 0;
  for (;;) {
    double e = 0;
    double v = gk(cur, cur + L, &e);
    acc.add(v, e);
    seg_acc += v;
    last_v = v;
    cur += L;
    ++it;
    if (it >= 2 && v <= tol * 0.5 * std::max(seg_acc, acc.value)) break;
    if (it > 500) {
      tol_fail = true;
      break;
    }
  }
  // geometric remainder bound from the panel decay factor
  double grow = pp.demax * pp.p_d + std::max(0.0, pp.wlog_d);
  double rho = std::exp(-pp.kappa_d * L) * std::pow((cur + L) / std::max(cur, 1.0), grow);
  rho = std::min(rho, 0.95);
  acc.err += last_v * rho / (1 - rho);
}

} // namespace

QuadratureResult integrate_power(const RadialProfile& f, const Rational& p_exp,
                                 const WeightSpec& w, double tol) {
  if (!(p_exp > 0)) throw std::domain_error("power must be positive");
  if (!(w.a >= 1)) throw std::domain_error("log shift parameter must satisfy a >= 1");
  QuadratureResult out;
  Accumulator acc;
  bool tol_fail = false;
  for (const auto& piece : f.pieces) {
    if (piece.form.is_zero()) continue;
    PieceAnalysis an = prepare_piece(piece, f.alpha, f.R, p_exp, w);
    if (an.empty) continue;
    if (an.divergent) {
      out.status = IntegralStatus::divergent;
      out.value = 0;
      out.abs_error_estimate = 0;
      return out;
    }
    integrate_piece(an, tol, acc, tol_fail);
  }
  out.value = acc.value;
  out.abs_error_estimate = acc.err;
  out.subdivisions = acc.panels;
  double floor_scale = std::max(std::fabs(acc.value), 1e-300);
  out.status = (tol_fail || acc.err > tol * floor_scale * 4) ? IntegralStatus::tolerance_not_met
                                                             : IntegralStatus::converged;
  return out;
}

QuadratureResult integrate_function(const std::function<double(double)>& g, double lo, double hi,
                                    double tol) {
  QuadratureResult out;
  double e = 0, v = 0;
  if (std::isfinite(hi)) {
    boost::math::quadrature::tanh_sinh<double> ts(12);
    v = ts.integrate(g, lo, hi, tol * 0.5, &e);
    e = std::fabs(e);
  } else {
    boost::math::quadrature::exp_sinh<double> es(12);
    v = es.integrate(g, lo, kInf, tol * 0.5, &e);
    e = std::fabs(e);
  }
  out.value = v;
  out.abs_error_estimate = e;
  out.subdivisions = 1;
  if (!std::isfinite(v))
    out.status = IntegralStatus::divergent;
  else
    out.status = (e > tol * std::max(std::fabs(v), 1e-300) * 4) ? IntegralStatus::tolerance_not_met
                                                                : IntegralStatus::converged;
  if (out.status == IntegralStatus::divergent) out.value = 0;
  return out;
}

RadialProfile scale_profile(const RadialProfile& u, const Rational& c) {
  RadialProfile s = u;
  for (auto& piece : s.pieces) piece.form = piece.form.scaled(c);
  return s;
}

} // namespace rellich
