#pragma once

#include <string>
#include <vector>

#include "bandedge/bands.hpp"
#include "bandedge/types.hpp"

namespace bandedge {

/// Discrete Schroedinger operator on Z^2 with half-weighted nearest-neighbour
/// hopping and the chessboard potential v0 (n1 + n2 even), v1 (odd).
struct DiatomicModel {
  double v0 = 0.0;
  double v1 = 0.0;
};

/// 2x2 fiber [[v0, c], [c, v1]] with c = cos k1 + cos k2.
struct DiscreteFiber {
  Vec2 k = Vec2::Zero();
  Mat2 matrix = Mat2::Zero();
};

DiscreteFiber fiber(const DiatomicModel& model, const Vec2& k);

struct BandPair {
  double minus = 0.0;
  double plus = 0.0;
};

/// (v0 + v1)/2 -+ sqrt(((v0 - v1)/2)^2 + c^2).
BandPair lambda_pm(const DiatomicModel& model, const Vec2& k);

struct BandEdges {
  double min_minus = 0.0;
  double max_minus = 0.0;
  double min_plus = 0.0;
  double max_plus = 0.0;

  bool has_gap() const { return max_minus < min_plus; }
};

BandEdges band_edges(const DiatomicModel& model);

/// Geometry of {k : lambda_-(k) = lambda_star or lambda_+(k) = lambda_star}.
struct LevelLines {
  enum class Kind {
    /// k1 +- k2 = (2p + 1) pi, the inner gap edges.
    Lines,
    /// c^2 = 4: k = 0 modulo the dual lattice of the chessboard.
    Points,
    /// smooth curve c^2 = target.
    Curve,
  };
  Kind kind = Kind::Curve;
  bool isolated = false;
  /// c^2 = (lambda_star - v0)(lambda_star - v1) on the level set.
  double c_squared = 0.0;
  std::string description;
};

/// Throws NotAttained when lambda_star lies outside both bands.
LevelLines level_lines(const DiatomicModel& model, double lambda_star);

/// Eigenvalues of the operator on the L x L torus (L even), by two routes:
/// Floquet fibers at the L^2/2 admissible quasimomenta, and dense
/// diagonalisation of the L^2 x L^2 matrix. Both sorted ascending.
struct TorusSpectrum {
  std::vector<double> floquet;
  std::vector<double> dense;
  double max_difference = 0.0;
};

/// Throws OddTorus for odd L.
TorusSpectrum torus_spectrum(const DiatomicModel& model, int L);

/// lambda_-, lambda_+ at k.
BandEvaluator discrete_evaluator(const DiatomicModel& model);

/// Chessboard Brillouin zone as a BandGrid: k(t) = t1 (pi, pi) + t2 (pi, -pi).
/// The gap-edge lines are grid rows/columns, so periodic clustering keeps
/// them intact.
BandGrid grid_adapter(const DiatomicModel& model, int resolution, unsigned workers = default_workers());

}  // namespace bandedge
