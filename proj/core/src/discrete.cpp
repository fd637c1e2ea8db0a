#include "bandedge/discrete.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bandedge/error.hpp"

namespace bandedge {

namespace {

double hopping_symbol(const Vec2& k) { return std::cos(k.x()) + std::cos(k.y()); }

}  // namespace

DiscreteFiber fiber(const DiatomicModel& model, const Vec2& k) {
  const double c = hopping_symbol(k);
  DiscreteFiber f;
  f.k = k;
  f.matrix << model.v0, c, c, model.v1;
  return f;
}

BandPair lambda_pm(const DiatomicModel& model, const Vec2& k) {
  const double mean = 0.5 * (model.v0 + model.v1);
  const double c = hopping_symbol(k);
  const double root = std::hypot(0.5 * (model.v0 - model.v1), c);
  return {mean - root, mean + root};
}

BandEdges band_edges(const DiatomicModel& model) {
  const double mean = 0.5 * (model.v0 + model.v1);
  const double outer = std::hypot(0.5 * (model.v0 - model.v1), 2.0);
  return {mean - outer, std::min(model.v0, model.v1), std::max(model.v0, model.v1), mean + outer};
}

LevelLines level_lines(const DiatomicModel& model, double lambda_star) {
  const BandEdges e = band_edges(model);
  const double tol = 1e-12 * (1.0 + std::abs(lambda_star));
  const bool in_minus = lambda_star >= e.min_minus - tol && lambda_star <= e.max_minus + tol;
  const bool in_plus = lambda_star >= e.min_plus - tol && lambda_star <= e.max_plus + tol;
  if (!in_minus && !in_plus) {
    std::ostringstream msg;
    msg << "lambda = " << lambda_star << " lies outside both bands";
    throw Error(ErrorCode::NotAttained, msg.str());
  }

  LevelLines out;
  out.c_squared = std::max(0.0, (lambda_star - model.v0) * (lambda_star - model.v1));
  if (std::abs(lambda_star - model.v0) <= tol || std::abs(lambda_star - model.v1) <= tol) {
    out.kind = LevelLines::Kind::Lines;
    out.isolated = false;
    out.c_squared = 0.0;
    out.description = "k1 + k2 = (2p+1) pi and k1 - k2 = (2p+1) pi, p in Z";
  } else if (std::abs(lambda_star - e.min_minus) <= tol || std::abs(lambda_star - e.max_plus) <= tol) {
    out.kind = LevelLines::Kind::Points;
    out.isolated = true;
    out.c_squared = 4.0;
    out.description = "cos k1 = cos k2 = +-1: k in pi (p1 + p2, p1 - p2), p in Z^2";
  } else {
    out.kind = LevelLines::Kind::Curve;
    out.isolated = false;
    std::ostringstream msg;
    msg.precision(17);
    msg << "(cos k1 + cos k2)^2 = " << out.c_squared;
    out.description = msg.str();
  }
  return out;
}

TorusSpectrum torus_spectrum(const DiatomicModel& model, int L) {
  if (L <= 0 || L % 2 != 0) throw Error(ErrorCode::OddTorus, "torus side must be a positive even integer");

  TorusSpectrum out;
  // Quasimomenta 2 pi j / L modulo (pi, pi): j1 in [0, L/2), j2 in [0, L).
  for (int j1 = 0; j1 < L / 2; ++j1)
    for (int j2 = 0; j2 < L; ++j2) {
      const BandPair p = lambda_pm(model, Vec2(kTwoPi * j1 / L, kTwoPi * j2 / L));
      out.floquet.push_back(p.minus);
      out.floquet.push_back(p.plus);
    }
  std::sort(out.floquet.begin(), out.floquet.end());

  const int n = L * L;
  RMatrix H = RMatrix::Zero(n, n);
  const auto site = [L](int a, int b) { return ((a % L + L) % L) * L + ((b % L + L) % L); };
  for (int a = 0; a < L; ++a)
    for (int b = 0; b < L; ++b) {
      const int s = site(a, b);
      H(s, s) = (a + b) % 2 == 0 ? model.v0 : model.v1;
      for (const auto& [da, db] : {std::pair{1, 0}, std::pair{-1, 0}, std::pair{0, 1}, std::pair{0, -1}})
        H(s, site(a + da, b + db)) += 0.5;
    }
  Eigen::SelfAdjointEigenSolver<RMatrix> es(H, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::SolverFailure, "torus diagonalisation failed");
  out.dense.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);

  for (std::size_t i = 0; i < out.dense.size(); ++i)
    out.max_difference = std::max(out.max_difference, std::abs(out.dense[i] - out.floquet[i]));
  return out;
}

BandEvaluator discrete_evaluator(const DiatomicModel& model) {
  return [model](const Vec2& k) {
    const BandPair p = lambda_pm(model, k);
    RVector v(2);
    v << p.minus, p.plus;
    return v;
  };
}

BandGrid grid_adapter(const DiatomicModel& model, int resolution, unsigned workers) {
  return scan_grid(discrete_evaluator(model), Vec2(kPi, kPi), Vec2(kPi, -kPi), resolution, resolution, 2, workers);
}

}  // namespace bandedge
