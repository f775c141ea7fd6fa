#include "rellich/minimizer.hpp"

#include "rellich/profiles.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace rellich {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::domain_error(what);
}

using Sparse = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

/**
 * One first-order factor (d/dt + e), e >= 0, as two-point rows evaluated at
 * cell midpoints, fitted to annihilate the decaying solution exp(-e t)
 * exactly and to reproduce (d/dt + e) 1 = e. For e = 0 this is the plain
 * midpoint difference. Two-point rows have no grid-scale oscillation in
 * their null space. Row 0 stays empty; compositions must discard every row
 * a missing neighbor touches.
 */
Sparse linear_factor(const std::vector<double>& t, double e) {
  const int n = static_cast<int>(t.size());
  std::vector<Triplet> trip;
  trip.reserve(2 * n);
  for (int i = 1; i < n; ++i) {
    const double dm = t[i] - t[i - 1];
    double a;
    if (e == 0.0) {
      a = -1.0 / dm;
    } else if (e * dm < 1e-4) {
      a = -1.0 / dm + 0.5 * e - e * e * dm / 12.0;
    } else if (e * dm > 500.0) {
      a = -e * std::exp(-e * dm);
    } else {
      a = -e / std::expm1(e * dm);
    }
    trip.emplace_back(i, i - 1, a);
    trip.emplace_back(i, i, e - a);
  }
  Sparse A(n, n);
  A.setFromTriplets(trip.begin(), trip.end());
  return A;
}

/**
 * One second-order factor (d/dt + c)(d/dt - d), c >= 0 < d, as three-point
 * rows fitted to be exact on {1, t - t_i, exp(d (t - t_i))}. Where the grid
 * resolves the growing solution (d times the spacing small) this reduces to
 * the standard second difference; where it cannot, it degrades to a
 * first-order upwind difference plus the zero-order term instead of leaving
 * a near-null odd-even oscillation mode, which a central first difference
 * would hand the energy form at no cost. Rows 0 and n-1 stay empty.
 */
Sparse quadratic_factor(const std::vector<double>& t, double c, double d) {
  const int n = static_cast<int>(t.size());
  std::vector<Triplet> trip;
  trip.reserve(3 * n);
  for (int i = 1; i + 1 < n; ++i) {
    const double dm = t[i] - t[i - 1];
    const double dp = t[i + 1] - t[i];
    double lo, hi;
    if (d * std::max(dm, dp) < 1e-4) {
      lo = (2.0 - (c - d) * dp) / (dm * (dm + dp));
      hi = (2.0 + (c - d) * dm) / (dp * (dm + dp));
    } else if (d * dp > 500.0) {
      lo = (d - c) / dm;
      hi = 0.0;
    } else {
      const double em = std::expm1(-d * dm);
      const double ep = std::expm1(d * dp) / dp;
      lo = (c * d - (c - d) * ep) / (em + dm * ep);
      hi = (c - d + lo * dm) / dp;
    }
    trip.emplace_back(i, i - 1, lo);
    trip.emplace_back(i, i, -c * d - lo - hi);
    trip.emplace_back(i, i + 1, hi);
  }
  Sparse A(n, n);
  A.setFromTriplets(trip.begin(), trip.end());
  return A;
}

/**
 * The k-th order radial operator in t = log(R/r) at the critical pairing
 * N = 2k, where every power of r cancels: the m-fold radial Laplacian factors
 * into m constant-shift quadratic factors, with one extra first-order factor
 * when k is odd.
 */
Sparse composed_operator(int N, int k, const std::vector<double>& t) {
  const int m = k / 2;
  Sparse L;
  bool first = true;
  for (int j = 0; j < m; ++j) {
    Sparse F = quadratic_factor(t, 2.0 * j, double(N - 2 - 2 * j));
    L = first ? F : Sparse(F * L);
    first = false;
  }
  if (k % 2 == 1) {
    Sparse F = linear_factor(t, 2.0 * m);
    L = first ? F : Sparse(F * L);
  }
  return L;
}

double weighted_dot(const Eigen::VectorXd& m, const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  return (m.array() * u.array() * v.array()).sum();
}

/** Which endpoint gamma sits closest to: true for the origin side (gamma near p). */
bool origin_side(const MinimizeParams& prm) {
  const double g = to_double(prm.gamma);
  const double p = double(prm.N) / prm.k;
  return g - p <= prm.N - g;
}

} // namespace

DiscreteProblem assemble(const MinimizeParams& prm, const DiscreteGrid& grid) {
  require(prm.k >= 1, "order must be at least 1");
  require(prm.N == 2 * prm.k, "the eigenvalue path needs p = 2, i.e. N = 2k");
  require(grid.n >= 16, "grid needs at least 16 nodes");
  require(grid.t_min > 0 && grid.t_min < grid.t_max, "window must satisfy 0 < t_min < t_max");
  require(prm.a >= 1.0, "weight shift must satisfy a >= 1");

  const int n = grid.n;
  const int k = prm.k;
  const double x_min = std::log(grid.t_min);
  const double x_max = std::log(grid.t_max);
  const double dx = (x_max - x_min) / (n - 1);
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = std::exp(x_min + i * dx);

  Sparse L = composed_operator(prm.N, k, t);

  // The composed stencil has half-width hw; rows outside [hw, n-1-hw] touched
  // an empty neighbor row and are dropped (natural treatment of the origin
  // side). The far end additionally pins max(1, k/2) node values: the factored
  // operator annihilates exponentials exp((N-2-2j) t), whose mass concentrates
  // entirely at t_max, so on a truncated window they would show up as
  // zero-energy modes with positive mass and drag the smallest quotient to
  // zero. Pinning that many values excludes all of them (and, for k = 1, the
  // checkerboard null of the centered first difference).
  const int hw = (k % 2 == 0) ? k / 2 : k / 2 + 1;
  std::vector<int> dof(n, -1);
  std::vector<int> free_nodes;
  const int last = n - std::max(1, k / 2);
  for (int i = k; i < last; ++i) {
    dof[i] = static_cast<int>(free_nodes.size());
    free_nodes.push_back(i);
  }
  const int nf = static_cast<int>(free_nodes.size());

  // Row r of the composed operator is a collocation value: at node r for
  // even k, at the midpoint of cell (r-1, r) for odd k (the outermost factor
  // is the two-point one). The matching quadrature cell length turns the sum
  // of squared rows into the energy integral.
  const bool midpoint_rows = (k % 2 == 1);
  std::vector<Triplet> trip;
  trip.reserve(L.nonZeros());
  for (int col = 0; col < L.outerSize(); ++col)
    for (Sparse::InnerIterator it(L, col); it; ++it) {
      const int row = static_cast<int>(it.row());
      if (row < hw || row > n - 1 - hw) continue;
      if (dof[col] < 0) continue;
      const double cell = midpoint_rows ? t[row] - t[row - 1] : 0.5 * (t[row + 1] - t[row - 1]);
      trip.emplace_back(row - hw, dof[col], it.value() * std::sqrt(cell));
    }
  Sparse A(n - 2 * hw, nf);
  A.setFromTriplets(trip.begin(), trip.end());

  DiscreteProblem pb;
  pb.params = prm;
  pb.grid = grid;
  pb.stiffness = Sparse(A.transpose()) * A;
  pb.stiffness.makeCompressed();
  pb.t = std::move(t);
  pb.free_nodes = std::move(free_nodes);
  pb.mass.resize(nf);
  const double la = std::log(prm.a);
  const double g = to_double(prm.gamma);
  for (int j = 0; j < nf; ++j) {
    const int i = pb.free_nodes[j];
    const double cell = 0.5 * (pb.t[i + 1] - pb.t[i - 1]);
    pb.mass[j] = cell * std::pow(pb.t[i] + la, -g);
  }
  return pb;
}

namespace {

/** K u - lambda M u with the products accumulated in extended precision. */
struct BigResidual {
  Eigen::VectorXd r;
  double rel = 0;     // |r| / |K u|
  double rayleigh = 0;
};

BigResidual big_residual(const Sparse& K, const Eigen::VectorXd& M, const Eigen::VectorXd& u) {
  const int nf = static_cast<int>(M.size());
  std::vector<BigFloat> ku(nf, BigFloat(0));
  for (int col = 0; col < K.outerSize(); ++col)
    for (Sparse::InnerIterator it(K, col); it; ++it)
      ku[it.row()] += BigFloat(it.value()) * BigFloat(u[col]);
  BigFloat uku = 0, umu = 0, knorm = 0;
  for (int j = 0; j < nf; ++j) {
    uku += ku[j] * BigFloat(u[j]);
    umu += BigFloat(M[j]) * BigFloat(u[j]) * BigFloat(u[j]);
    knorm += ku[j] * ku[j];
  }
  const BigFloat lambda = uku / umu;
  BigResidual out;
  out.r.resize(nf);
  BigFloat rnorm = 0;
  for (int j = 0; j < nf; ++j) {
    const BigFloat rj = ku[j] - lambda * BigFloat(M[j]) * BigFloat(u[j]);
    out.r[j] = static_cast<double>(rj);
    rnorm += rj * rj;
  }
  out.rel = static_cast<double>(sqrt(rnorm) / sqrt(knorm));
  out.rayleigh = static_cast<double>(lambda);
  return out;
}

} // namespace

MinimizationResult min_eigen(const DiscreteProblem& pb) {
  const Sparse& K = pb.stiffness;
  const Eigen::VectorXd& M = pb.mass;
  const int nf = static_cast<int>(M.size());
  require(nf >= 3, "too few free nodes");

  // The raw entries span the fourth power of the window ratio, so every solve
  // runs on the Jacobi-scaled pair (S K S, S M S), S = diag(K_ii^{-1/2}),
  // which has unit diagonal and modest condition; eigenvalues are unchanged.
  Eigen::VectorXd S(nf);
  for (int j = 0; j < nf; ++j) {
    const double d = K.coeff(j, j);
    require(d > 0, "stiffness diagonal must be positive");
    S[j] = 1.0 / std::sqrt(d);
  }
  Sparse Ks = K;
  for (int col = 0; col < Ks.outerSize(); ++col)
    for (Sparse::InnerIterator it(Ks, col); it; ++it)
      it.valueRef() *= S[it.row()] * S[col];
  Eigen::VectorXd Ms = M.cwiseProduct(S.cwiseProduct(S));

  Eigen::SimplicialLDLT<Sparse> base;
  base.compute(Ks);
  if (base.info() != Eigen::Success)
    throw std::runtime_error("stiffness factorization failed");

  auto ms_normalize = [&](Eigen::VectorXd& v) {
    v /= std::sqrt(weighted_dot(Ms, v, v));
  };

  Eigen::VectorXd vs = Eigen::VectorXd::Ones(nf);
  ms_normalize(vs);
  double rho = vs.dot(Ks * vs);
  int iterations = 0;
  const double target = 1e-10;

  // Phase 1: plain inverse iteration in the scaled variables.
  double prev = 2 * rho;
  for (int it = 0; it < 200; ++it) {
    Eigen::VectorXd w = base.solve(Ms.cwiseProduct(vs));
    ms_normalize(w);
    vs = std::move(w);
    prev = rho;
    rho = vs.dot(Ks * vs);
    ++iterations;
    if (it >= 8 && std::fabs(prev - rho) <= 1e-9 * rho) break;
  }

  // Phase 2: one Rayleigh-shifted factorization sharpens the vector, then
  // extended-precision residual corrections meet the contract in the
  // original variables, where plain double matvecs cannot even measure it.
  double sigma = rho * (1 - 1e-4);
  Eigen::SparseLU<Sparse> lu;
  {
    Sparse shifted = Ks;
    for (int j = 0; j < nf; ++j) shifted.coeffRef(j, j) -= sigma * Ms[j];
    shifted.makeCompressed();
    lu.compute(shifted);
    if (lu.info() == Eigen::Success) {
      for (int it = 0; it < 6; ++it) {
        Eigen::VectorXd w = lu.solve(Ms.cwiseProduct(vs));
        if (!w.allFinite()) break;
        ms_normalize(w);
        vs = std::move(w);
        ++iterations;
      }
      rho = vs.dot(Ks * vs);
    }
  }

  Eigen::VectorXd v = S.cwiseProduct(vs);
  double resid = 1;
  for (int it = 0; it < 40; ++it) {
    BigResidual br = big_residual(K, M, v);
    rho = br.rayleigh;
    resid = br.rel;
    if (resid <= target) break;
    if (lu.info() != Eigen::Success) break;
    // correction in scaled coordinates: (K - sigma M) d = r
    Eigen::VectorXd d = S.cwiseProduct(Eigen::VectorXd(lu.solve(S.cwiseProduct(br.r))));
    if (!d.allFinite()) break;
    v -= d;
    v /= std::sqrt(weighted_dot(M, v, v));
    ++iterations;
  }
  if (resid > target)
    throw std::runtime_error("inverse iteration did not reach the residual target");

  // Deflated estimate of the next eigenvalue; report the pair when close.
  std::optional<double> second;
  {
    Eigen::VectorXd w = Eigen::VectorXd::Ones(nf);
    for (int j = 0; j < nf; j += 2) w[j] = -1;  // break symmetry with the ground state
    w -= vs * weighted_dot(Ms, vs, w);
    double rho2 = 0, rho2_prev = -1;
    for (int it = 0; it < 80; ++it) {
      Eigen::VectorXd u = base.solve(Ms.cwiseProduct(w));
      u -= vs * weighted_dot(Ms, vs, u);
      const double nrm = std::sqrt(weighted_dot(Ms, u, u));
      if (!(nrm > 0) || !u.allFinite()) break;
      w = u / nrm;
      rho2_prev = rho2;
      rho2 = w.dot(Ks * w);
      if (it > 4 && std::fabs(rho2 - rho2_prev) <= 1e-10 * rho2) break;
    }
    if (rho2 > 0 && rho2 <= rho * (1 + 1e-6)) second = rho2;
  }

  if (weighted_dot(M, v, Eigen::VectorXd::Ones(nf)) < 0) v = -v;

  MinimizationResult res;
  res.value = rho;
  res.iterations = iterations;
  res.residual = resid;
  res.converged = true;
  res.second_value = second;
  res.profile.assign(pb.t.size(), 0.0);
  for (int j = 0; j < nf; ++j) res.profile[pb.free_nodes[j]] = v[j];

  const double decade = std::log(10.0);
  double inner = 0;
  for (int j = 0; j < nf; ++j)
    if (pb.t[pb.free_nodes[j]] > decade) inner += M[j] * v[j] * v[j];
  res.origin_mass_fraction = inner;  // M-norm of v is 1
  res.boundary_mass_fraction = 1.0 - inner;
  res.concentration_indicator =
      origin_side(pb.params) ? res.origin_mass_fraction : res.boundary_mass_fraction;
  return res;
}

double richardson_value(const MinimizeParams& prm, const DiscreteGrid& grid) {
  DiscreteGrid fine = grid;
  fine.n = 2 * grid.n;
  const double coarse = min_eigen(assemble(prm, grid)).value;
  const double refined = min_eigen(assemble(prm, fine)).value;
  return (4 * refined - coarse) / 3;
}

std::vector<StudyRow> refinement_study(const MinimizeParams& prm, const DiscreteGrid& base,
                                       int levels) {
  require(levels >= 3, "a refinement study needs at least 3 levels");
  require(base.t_min < 1.0 && base.t_max > 1.0,
          "the refinement schedule squares the window ends; it needs t_min < 1 < t_max");
  std::vector<StudyRow> rows;
  for (int l = 0; l < levels; ++l) {
    // Squaring both window ends per level doubles the window in the log
    // coordinate, where the escaping mass advances; doubling n alongside
    // keeps the node spacing constant, so level-to-level differences measure
    // the window effect alone. Multiplying the ends by a fixed factor would
    // add only a constant log-length per level and the trends toward the
    // exact constants would stall far from them.
    const double e = std::pow(2.0, l);
    DiscreteGrid g;
    g.t_min = std::pow(base.t_min, e);
    g.t_max = std::pow(base.t_max, e);
    g.n = base.n << l;
    MinimizationResult r = min_eigen(assemble(prm, g));
    rows.push_back({l, g.n, g.t_min, g.t_max, r.value, r.concentration_indicator});
  }
  return rows;
}

double shape_cosine(const DiscreteProblem& pb, const std::vector<double>& profile, double q,
                    double mass_lo, double mass_hi) {
  require(profile.size() == pb.t.size(), "profile does not match the grid");
  require(0.0 <= mass_lo && mass_lo < mass_hi && mass_hi <= 1.0,
          "mass quantiles must satisfy 0 <= lo < hi <= 1");
  const int nf = static_cast<int>(pb.free_nodes.size());
  // Restrict the comparison to the band carrying the central portion of the
  // profile's own weighted mass. Near the truncation ends the pinned values
  // and the finite window force the computed profile away from the limiting
  // shape; in its bulk the shape emerges as the window widens.
  std::vector<double> cum(nf + 1, 0.0);
  for (int j = 0; j < nf; ++j) {
    const double u = profile[pb.free_nodes[j]];
    cum[j + 1] = cum[j] + pb.mass[j] * u * u;
  }
  const double total = cum[nf];
  require(total > 0, "cosine needs a nonzero profile");
  double uu = 0, vv = 0, uv = 0;
  for (int j = 0; j < nf; ++j) {
    const double mid = 0.5 * (cum[j] + cum[j + 1]) / total;
    if (mid < mass_lo || mid > mass_hi) continue;
    const int i = pb.free_nodes[j];
    const double w = pb.mass[j];
    const double s = std::pow(pb.t[i], q);
    uu += w * profile[i] * profile[i];
    vv += w * s * s;
    uv += w * profile[i] * s;
  }
  require(uu > 0 && vv > 0, "cosine needs nonzero profiles on the central band");
  return uv / std::sqrt(uu * vv);
}

// ---------------------------------------------------------------------------
// General-p path: B-spline space and BFGS descent on the exact quotient.
// ---------------------------------------------------------------------------

namespace {

/** Per-interval polynomial pieces of every degree-d B-spline on open uniform knots. */
struct SplineSpace {
  int degree = 1;
  int nseg = 1;
  Rational T = 1;
  std::vector<Rational> knots;                          // length nseg + 2 degree + 1
  std::vector<std::vector<std::vector<Rational>>> pol;  // pol[i][j]: coeffs of B_i on segment j
  int count() const { return nseg + degree; }

  double greville(int i) const {
    Rational s = 0;
    for (int j = 1; j <= degree; ++j) s += knots[i + j];
    return to_double(s / degree);
  }
};

std::vector<Rational> poly_add(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> r(std::max(a.size(), b.size()), Rational(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

/** (c0 + c1 t) * a */
std::vector<Rational> poly_affine_mul(const std::vector<Rational>& a, const Rational& c0,
                                      const Rational& c1) {
  std::vector<Rational> r(a.size() + 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i) {
    r[i] += c0 * a[i];
    r[i + 1] += c1 * a[i];
  }
  return r;
}

SplineSpace make_spline_space(int degree, int nseg, const Rational& T) {
  SplineSpace sp;
  sp.degree = degree;
  sp.nseg = nseg;
  sp.T = T;
  for (int i = 0; i < degree; ++i) sp.knots.push_back(0);
  for (int j = 0; j <= nseg; ++j) sp.knots.push_back(T * j / nseg);
  for (int i = 0; i < degree; ++i) sp.knots.push_back(T);

  // Cox-de Boor in exact arithmetic, carried per knot segment.
  const int nfun0 = nseg + 2 * degree;  // degree-0 functions
  std::vector<std::vector<std::vector<Rational>>> cur(
      nfun0, std::vector<std::vector<Rational>>(nseg));
  for (int i = 0; i < nfun0; ++i)
    for (int j = 0; j < nseg; ++j) {
      // segment j spans [knots[degree+j], knots[degree+j+1])
      if (i == degree + j) cur[i][j] = {Rational(1)};
    }
  for (int d = 1; d <= degree; ++d) {
    const int nfun = nfun0 - d;
    std::vector<std::vector<std::vector<Rational>>> nxt(
        nfun, std::vector<std::vector<Rational>>(nseg));
    for (int i = 0; i < nfun; ++i)
      for (int j = 0; j < nseg; ++j) {
        std::vector<Rational> acc;
        const Rational den1 = sp.knots[i + d] - sp.knots[i];
        if (den1 != 0 && !cur[i][j].empty())
          acc = poly_add(acc, poly_affine_mul(cur[i][j], -sp.knots[i] / den1, 1 / den1));
        const Rational den2 = sp.knots[i + d + 1] - sp.knots[i + 1];
        if (den2 != 0 && !cur[i + 1][j].empty())
          acc = poly_add(acc,
                         poly_affine_mul(cur[i + 1][j], sp.knots[i + d + 1] / den2, -1 / den2));
        nxt[i][j] = std::move(acc);
      }
    cur = std::move(nxt);
  }
  sp.pol = std::move(cur);
  return sp;
}

/** Piecewise profile of sum_i coeffs[i] B_i on (0, 1), zero below e^{-T}. */
RadialProfile profile_from_coeffs(const SplineSpace& sp, const std::vector<Rational>& coeffs,
                                  int smoothness) {
  RadialProfile u;
  u.R = 1;
  u.alpha = 0;
  u.derivative_order_available = smoothness;
  ProfilePiece zero;
  zero.r_lo = 0;
  zero.r_hi = std::exp(-to_double(sp.T));
  zero.form = TermSum::zero();
  u.pieces.push_back(zero);
  for (int j = sp.nseg - 1; j >= 0; --j) {
    std::vector<Rational> poly;
    for (int i = 0; i < sp.count(); ++i) {
      if (coeffs[i] == 0 || sp.pol[i][j].empty()) continue;
      poly = poly_add(poly, [&] {
        std::vector<Rational> scaled = sp.pol[i][j];
        for (auto& c : scaled) c *= coeffs[i];
        return scaled;
      }());
    }
    TermSum form;
    for (size_t e = 0; e < poly.size(); ++e)
      if (poly[e] != 0) form = form + TermSum::log_power_int(static_cast<int>(e)).scaled(poly[e]);
    ProfilePiece piece;
    piece.r_lo = std::exp(-to_double(sp.knots[sp.degree + j + 1]));
    piece.r_hi = std::exp(-to_double(sp.knots[sp.degree + j]));
    piece.form = form;
    u.pieces.push_back(piece);
  }
  return u;
}

struct QuotientEval {
  double value = 0;
  double numerator = 0;
  double denominator = 0;
};

QuotientEval eval_quotient(const MinimizeParams& prm, const SplineSpace& sp,
                           const std::vector<Rational>& coeffs) {
  RadialProfile u = profile_from_coeffs(sp, coeffs, prm.k);
  RayleighParams rp;
  rp.N = prm.N;
  rp.k = prm.k;
  rp.gamma = prm.gamma;
  rp.R = 1;
  rp.a = Rational(prm.a);
  rp.tol = 1e-9;
  RayleighResult r = rayleigh_quotient(u, rp);
  if (!r.ok() || !(r.denominator > 0))
    throw std::runtime_error("quotient integral failed on the spline iterate");
  return {r.quotient, r.numerator, r.denominator};
}

} // namespace

RadialProfile spline_profile(int k, double window, const std::vector<double>& coeffs) {
  require(k >= 1, "order must be at least 1");
  require(window > 0, "window must be positive");
  require(static_cast<int>(coeffs.size()) > 2 * k, "too few spline coefficients");
  SplineSpace sp = make_spline_space(k, static_cast<int>(coeffs.size()) - k, Rational(window));
  std::vector<Rational> c(coeffs.begin(), coeffs.end());
  return profile_from_coeffs(sp, c, k);
}

MinimizationResult minimize_quotient_general_p(const MinimizeParams& prm, int basis_size,
                                               std::function<double(double)> init,
                                               double window) {
  require(prm.k >= 1 && prm.N > prm.k, "need N > k >= 1");
  require(basis_size >= 2 * prm.k + 2, "basis too small for the boundary constraints");
  require(window > 0, "window must be positive");
  const int k = prm.k;
  const double p = double(prm.N) / k;
  const Rational p_rat = Rational(prm.N) / k;
  const SplineSpace sp = make_spline_space(k, basis_size - k, Rational(window));
  const int count = sp.count();
  const int nfree = count - 2 * k;
  require(nfree >= 1, "basis too small for the boundary constraints");

  // k-th derivative of each free basis function, for the analytic gradient.
  std::vector<RadialProfile> dbasis(nfree);
  std::vector<std::pair<double, double>> support(nfree);  // t-range of B_i
  for (int f = 0; f < nfree; ++f) {
    const int i = f + k;
    std::vector<Rational> unit(count, Rational(0));
    unit[i] = 1;
    dbasis[f] = kth_derivative_profile(profile_from_coeffs(sp, unit, k), k, prm.N);
    support[f] = {to_double(sp.knots[i]), to_double(sp.knots[i + k + 1])};
  }

  if (!init) {
    const double mu = (p - 1) / p + 0.05;
    init = [mu, window, k](double t) {
      return std::pow(t, mu) * std::pow(1.0 - t / window, k);
    };
  }

  // Project the seed onto the constrained space at the Greville points.
  Eigen::MatrixXd G(count, nfree);
  Eigen::VectorXd rhs(count);
  for (int row = 0; row < count; ++row) {
    const double xi = std::min(sp.greville(row), to_double(sp.T) * (1 - 1e-12));
    rhs[row] = init(xi);
    // locate the segment containing xi
    const double seg_len = to_double(sp.T) / sp.nseg;
    int j = std::min(sp.nseg - 1, std::max(0, static_cast<int>(xi / seg_len)));
    for (int f = 0; f < nfree; ++f) {
      const auto& poly = sp.pol[f + k][j];
      double val = 0;
      for (size_t e = poly.size(); e-- > 0;) val = val * xi + to_double(poly[e]);
      G(row, f) = val;
    }
  }
  Eigen::VectorXd y = G.colPivHouseholderQr().solve(rhs);

  auto to_full = [&](const Eigen::VectorXd& yy) {
    std::vector<Rational> c(count, Rational(0));
    for (int f = 0; f < nfree; ++f) c[f + k] = Rational(yy[f]);
    return c;
  };

  auto gradient = [&](const Eigen::VectorXd& yy, const QuotientEval& q) {
    const std::vector<Rational> c = to_full(yy);
    RadialProfile u = profile_from_coeffs(sp, c, k);
    RadialProfile du = kth_derivative_profile(u, k, prm.N);
    const double la = std::log(prm.a);
    const double g = to_double(prm.gamma);
    Eigen::VectorXd grad(nfree);
    for (int f = 0; f < nfree; ++f) {
      const double t_lo = support[f].first;
      const double t_hi = support[f].second;
      double dnum = 0, dden = 0;
      // per knot segment inside the support, in r
      for (int j = 0; j < sp.nseg; ++j) {
        const double a_t = to_double(sp.knots[sp.degree + j]);
        const double b_t = to_double(sp.knots[sp.degree + j + 1]);
        if (b_t <= t_lo + 1e-15 || a_t >= t_hi - 1e-15) continue;
        const double r_lo = std::exp(-b_t);
        const double r_hi = std::exp(-a_t);
        auto fnum = [&](double r) {
          const double s = evaluate(du, r);
          const double si = evaluate(dbasis[f], r);
          if (s == 0 || si == 0) return 0.0;
          return p * std::copysign(std::pow(std::fabs(s), p - 1), s) * si *
                 std::pow(r, prm.N - 1);
        };
        auto fden = [&](double r) {
          const double uv = evaluate(u, r);
          if (uv == 0) return 0.0;
          const double t = -std::log(r);
          const double bi = [&] {
            const auto& poly = sp.pol[f + k][j];
            double val = 0;
            for (size_t e = poly.size(); e-- > 0;) val = val * t + to_double(poly[e]);
            return val;
          }();
          if (bi == 0) return 0.0;
          return p * std::copysign(std::pow(std::fabs(uv), p - 1), uv) * bi *
                 std::pow(t + la, -g) / r;
        };
        dnum += integrate_function(fnum, r_lo, r_hi, 1e-8).value;
        dden += integrate_function(fden, r_lo, r_hi, 1e-8).value;
      }
      grad[f] = (dnum - q.value * dden) / q.denominator;
    }
    return grad;
  };

  QuotientEval q = eval_quotient(prm, sp, to_full(y));
  Eigen::VectorXd grad = gradient(y, q);
  Eigen::MatrixXd H = Eigen::MatrixXd::Identity(nfree, nfree);
  int iterations = 0;
  bool converged = false;
  const double gtol = 1e-6;
  for (int it = 0; it < 150; ++it) {
    ++iterations;
    if (grad.norm() <= gtol * std::max(1.0, q.value)) {
      converged = true;
      break;
    }
    Eigen::VectorXd dir = -(H * grad);
    if (dir.dot(grad) >= 0) {
      H = Eigen::MatrixXd::Identity(nfree, nfree);
      dir = -grad;
    }
    double step = 1.0;
    QuotientEval q_new = q;
    Eigen::VectorXd y_new = y;
    bool accepted = false;
    for (int ls = 0; ls < 30; ++ls) {
      y_new = y + step * dir;
      try {
        q_new = eval_quotient(prm, sp, to_full(y_new));
      } catch (const std::runtime_error&) {
        step *= 0.5;
        continue;
      }
      if (q_new.value <= q.value + 1e-4 * step * grad.dot(dir)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // descent failure: report the last iterate
    // rescale to unit denominator for conditioning (the quotient is 0-homogeneous)
    const double scale = std::pow(q_new.denominator, -1.0 / p);
    y_new *= scale;
    q_new.numerator *= std::pow(scale, p);
    q_new.denominator = 1.0;
    Eigen::VectorXd grad_new = gradient(y_new, q_new);
    Eigen::VectorXd s = y_new - y;
    Eigen::VectorXd dg = grad_new - grad;
    const double sy = s.dot(dg);
    if (sy > 1e-12 * s.norm() * dg.norm()) {
      Eigen::VectorXd Hy = H * dg;
      const double yHy = dg.dot(Hy);
      H += ((sy + yHy) / (sy * sy)) * (s * s.transpose()) -
           (Hy * s.transpose() + s * Hy.transpose()) / sy;
    }
    y = y_new;
    q = q_new;
    grad = grad_new;
  }

  MinimizationResult res;
  res.value = q.value;
  res.iterations = iterations;
  res.residual = grad.norm();
  res.converged = converged;
  res.profile.assign(count, 0.0);
  for (int f = 0; f < nfree; ++f) res.profile[f + k] = y[f];

  // Weighted mass split at the fixed first radial decade r = R/10.
  {
    RadialProfile u = profile_from_coeffs(sp, to_full(y), k);
    const double la = std::log(prm.a);
    const double g = to_double(prm.gamma);
    auto massint = [&](double r) {
      const double uv = evaluate(u, r);
      if (uv == 0) return 0.0;
      const double t = -std::log(r);
      return std::pow(std::fabs(uv), p) * std::pow(t + la, -g) / r;
    };
    const double split = 0.1;
    const double inner = integrate_function(massint, std::exp(-window), split, 1e-8).value;
    const double outer = integrate_function(massint, split, 1.0, 1e-8).value;
    const double total = inner + outer;
    if (total > 0) {
      res.origin_mass_fraction = inner / total;
      res.boundary_mass_fraction = outer / total;
      res.concentration_indicator =
          origin_side(prm) ? res.origin_mass_fraction : res.boundary_mass_fraction;
    }
  }
  return res;
}

} // namespace rellich
