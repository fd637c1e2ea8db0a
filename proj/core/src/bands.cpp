#include "bandedge/bands.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bandedge/error.hpp"
#include "bandedge/fiber.hpp"

namespace bandedge {

RVector band_values(const CoefficientSet& cs, const Vec2& k, const PlaneWaveBasis& basis, int count) {
  if (count < 1 || static_cast<std::size_t>(count) > basis.size())
    throw Error(ErrorCode::InvalidArgument, "band count must lie in [1, basis size]");
  const FiberMatrix H = assemble_fiber(cs, k.cast<Complex>(), basis);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(H.entries, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "Hermitian eigensolver did not converge at k = (" << k.x() << ", " << k.y() << ")";
    throw Error(ErrorCode::SolverFailure, msg.str());
  }
  return es.eigenvalues().head(count);
}

BandEvaluator continuum_evaluator(const CoefficientSet& cs, const PlaneWaveBasis& basis, int count) {
  return [&cs, basis, count](const Vec2& k) { return band_values(cs, k, basis, count); };
}

BandGrid scan_grid(const BandEvaluator& eval, const Vec2& g1, const Vec2& g2, int n1, int n2, int count,
                   unsigned workers) {
  if (n1 < 1 || n2 < 1 || count < 1) throw Error(ErrorCode::InvalidArgument, "empty scan grid");
  BandGrid grid;
  grid.g1 = g1;
  grid.g2 = g2;
  grid.n1 = n1;
  grid.n2 = n2;
  grid.count = count;
  grid.values.assign(static_cast<std::size_t>(n1) * n2 * count, 0.0);
  parallel_for(static_cast<std::size_t>(n1) * n2, workers, [&](std::size_t node) {
    const int i1 = static_cast<int>(node / n2);
    const int i2 = static_cast<int>(node % n2);
    const Vec2 k = grid.k_at(i1, i2);
    RVector v;
    try {
      v = eval(k);
    } catch (const Error& e) {
      std::ostringstream msg;
      msg.precision(17);
      msg << e.message() << " at k = (" << k.x() << ", " << k.y() << ")";
      throw Error(e.code(), msg.str());
    }
    if (v.size() < count) throw Error(ErrorCode::InvalidArgument, "evaluator returned too few bands");
    for (int b = 0; b < count; ++b) grid.value(i1, i2, b + 1) = v(b);
  });
  return grid;
}

BandGrid scan(const CoefficientSet& cs, int n1, int n2, const PlaneWaveBasis& basis, int count,
              unsigned workers) {
  const Vec2 g1 = kTwoPi * cs.lattice.b1p();
  const Vec2 g2 = kTwoPi * cs.lattice.b2p();
  BandGrid grid = scan_grid(continuum_evaluator(cs, basis, count), g1, g2, n1, n2, count, workers);
  grid.N = basis.N();
  return grid;
}

const char* to_string(ExtremumKind kind) { return kind == ExtremumKind::Min ? "min" : "max"; }

const char* to_string(LevelGeometry g) {
  switch (g) {
    case LevelGeometry::Isolated: return "isolated";
    case LevelGeometry::Extended: return "extended";
    case LevelGeometry::Unresolved: return "unresolved";
  }
  return "unresolved";
}

namespace {

double band_at(const BandEvaluator& eval, int band, const Vec2& k) { return eval(k)(band - 1); }

Mat2 central_hessian(const BandEvaluator& eval, int band, const Vec2& k, double h) {
  const Vec2 e1(h, 0.0), e2(0.0, h);
  const double f0 = band_at(eval, band, k);
  const double fxx = (band_at(eval, band, k + e1) - 2.0 * f0 + band_at(eval, band, k - e1)) / (h * h);
  const double fyy = (band_at(eval, band, k + e2) - 2.0 * f0 + band_at(eval, band, k - e2)) / (h * h);
  const double fxy = (band_at(eval, band, k + e1 + e2) - band_at(eval, band, k + e1 - e2) -
                      band_at(eval, band, k - e1 + e2) + band_at(eval, band, k - e1 - e2)) /
                     (4.0 * h * h);
  Mat2 H;
  H << fxx, fxy, fxy, fyy;
  return H;
}

Vec2 central_gradient(const std::function<double(const Vec2&)>& f, const Vec2& k, double h) {
  const Vec2 e1(h, 0.0), e2(0.0, h);
  return Vec2((f(k + e1) - f(k - e1)) / (2.0 * h), (f(k + e2) - f(k - e2)) / (2.0 * h));
}

// Cell coordinates of k, reduced to [0, 1).
Vec2 cell_coordinates(const BandGrid& grid, const Vec2& k) {
  Mat2 G;
  G.col(0) = grid.g1;
  G.col(1) = grid.g2;
  Vec2 t = G.inverse() * k;
  for (int i = 0; i < 2; ++i) t[i] -= std::floor(t[i]);
  return t;
}

// Quadratic-model descent on sign * lambda_band. Newton steps when the
// finite-difference Hessian is positive definite, otherwise a scaled
// gradient step; every step is capped at one grid spacing and backtracked
// until the objective decreases.
ExtremumPoint refine(const BandEvaluator& eval, int band, double sign, const Vec2& start, double h,
                     double max_step, const ExtremumOptions& opt) {
  const auto f = [&](const Vec2& k) { return sign * band_at(eval, band, k); };
  ExtremumPoint p;
  p.k = start;
  double fx = f(p.k);
  Vec2 g = central_gradient(f, p.k, h);
  int it = 0;
  for (; it < opt.max_iterations && g.norm() > opt.tol_gradient; ++it) {
    const Mat2 H = sign * central_hessian(eval, band, p.k, std::max(h, 1e-2 * max_step));
    Eigen::SelfAdjointEigenSolver<Mat2> es(H);
    Vec2 step;
    if (es.eigenvalues().minCoeff() > 0.0)
      step = -H.inverse() * g;
    else
      step = -g * (0.5 * max_step / g.norm());
    if (step.norm() > max_step) step *= max_step / step.norm();

    bool improved = false;
    for (int halving = 0; halving < 40; ++halving) {
      const Vec2 trial = p.k + step;
      const double ft = f(trial);
      if (ft < fx) {
        p.k = trial;
        fx = ft;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
    g = central_gradient(f, p.k, h);
  }
  p.value = sign * fx;
  p.gradient_norm = g.norm();
  p.iterations = it;
  return p;
}

}  // namespace

EffectiveMass effective_mass(const BandEvaluator& eval, int band, ExtremumKind kind, const Vec2& k_star,
                             double step, double hessian_tol) {
  if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "finite-difference step must be positive");
  const double sign = kind == ExtremumKind::Min ? 1.0 : -1.0;
  EffectiveMass out;
  out.step = step;
  Mat2 H = central_hessian(eval, band, k_star, step);
  H = 0.5 * (H + H.transpose()).eval();
  const Mat2 H_half = central_hessian(eval, band, k_star, 0.5 * step);
  out.hessian = H;
  out.inverse_mass = sign * H;
  out.richardson_error = (H - H_half).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Mat2> es(out.inverse_mass);
  out.degenerate = es.eigenvalues().minCoeff() <= hessian_tol;
  return out;
}

EffectiveMass effective_mass(const CoefficientSet& cs, int band, ExtremumKind kind, const Vec2& k_star,
                             const PlaneWaveBasis& basis, double step, double hessian_tol) {
  return effective_mass(continuum_evaluator(cs, basis, band), band, kind, k_star, step, hessian_tol);
}

LevelGeometry classify(const BandGrid& grid, const std::vector<LevelCluster>& clusters,
                       const ExtremumOptions& opt) {
  if (clusters.empty()) return LevelGeometry::Unresolved;
  const double spacing = grid.spacing();
  const double cell = grid.cell_diameter();
  bool all_small = true;
  for (const auto& c : clusters) {
    if (c.wraps || c.diameter >= opt.extended_fraction * cell) return LevelGeometry::Extended;
    if (c.diameter > opt.isolated_spacings * spacing * (1.0 + 1e-12)) all_small = false;
  }
  return all_small ? LevelGeometry::Isolated : LevelGeometry::Unresolved;
}

ExtremumReport locate_extrema(const BandGrid& grid, int band, ExtremumKind kind, double eps,
                              const BandEvaluator& eval, const ExtremumOptions& opt) {
  if (band < 1 || band > grid.count) throw Error(ErrorCode::InvalidArgument, "band index out of range");
  const double sign = kind == ExtremumKind::Min ? 1.0 : -1.0;

  ExtremumReport rep;
  rep.band = band;
  rep.kind = kind;
  rep.eps = eps;

  double best = sign * grid.value(0, 0, band);
  for (int i1 = 0; i1 < grid.n1; ++i1)
    for (int i2 = 0; i2 < grid.n2; ++i2) best = std::min(best, sign * grid.value(i1, i2, band));
  rep.grid_value = sign * best;

  const double h = opt.fd_step > 0.0 ? opt.fd_step : 1e-4 * grid.cell_diameter();
  const auto candidates = level_set(grid, band, rep.grid_value, eps);
  std::vector<ExtremumPoint> refined;
  for (std::size_t c = 0; c < candidates.size() && c < opt.max_candidates; ++c)
    refined.push_back(refine(eval, band, sign, candidates[c].best_k, h, grid.spacing(), opt));

  double star = rep.grid_value;
  for (const auto& p : refined) star = sign * std::min(sign * star, sign * p.value);
  rep.value = star;

  for (auto& p : refined) {
    if (std::abs(p.value - star) > eps) continue;
    p.t = cell_coordinates(grid, p.k);
    rep.points.push_back(p);
  }

  // Nodes within eps of the refined value; widened by the refinement gain so
  // the best grid node always participates.
  const double eps_eff = eps + std::abs(rep.grid_value - star);
  const auto clusters = level_set(grid, band, star, eps_eff);
  for (const auto& c : clusters) rep.diameters.push_back(c.diameter);
  rep.classification = classify(grid, clusters, opt);

  if (rep.classification == LevelGeometry::Isolated) {
    for (const auto& p : rep.points)
      rep.masses.push_back(effective_mass(eval, band, kind, p.k, opt.mass_step, opt.hessian_tol));
  }
  return rep;
}

ExtremumReport locate_extrema(const BandGrid& grid, int band, ExtremumKind kind, double eps,
                              const CoefficientSet& cs, const PlaneWaveBasis& basis,
                              const ExtremumOptions& opt) {
  return locate_extrema(grid, band, kind, eps, continuum_evaluator(cs, basis, band), opt);
}

}  // namespace bandedge
