#pragma once

#include <algorithm>
#include <functional>
#include <utility>
#include <vector>

#include "bandedge/coefficients.hpp"
#include "bandedge/parallel.hpp"
#include "bandedge/plane_wave_basis.hpp"
#include "bandedge/types.hpp"

namespace bandedge {

/// Sorted band values lambda_1(k) <= lambda_2(k) <= ... at a real quasimomentum.
using BandEvaluator = std::function<RVector(const Vec2&)>;

/// Band values on the uniform grid k(t) = t1 g1 + t2 g2, t in [0,1)^2.
/// Bands are 1-based in every public interface.
struct BandGrid {
  Vec2 g1 = Vec2::Zero();
  Vec2 g2 = Vec2::Zero();
  int n1 = 0;
  int n2 = 0;
  int count = 0;
  int N = 0;  ///< plane-wave truncation, 0 for models without one
  std::vector<double> values;

  Vec2 t_at(int i1, int i2) const { return Vec2(double(i1) / n1, double(i2) / n2); }
  Vec2 k_at(int i1, int i2) const { return t_at(i1, i2).x() * g1 + t_at(i1, i2).y() * g2; }
  double value(int i1, int i2, int band) const {
    return values[(static_cast<std::size_t>(i1) * n2 + i2) * count + (band - 1)];
  }
  double& value(int i1, int i2, int band) {
    return values[(static_cast<std::size_t>(i1) * n2 + i2) * count + (band - 1)];
  }
  /// Largest grid step in k units.
  double spacing() const { return std::max(g1.norm() / n1, g2.norm() / n2); }
  /// Longest diagonal of the cell.
  double cell_diameter() const { return std::max((g1 + g2).norm(), (g1 - g2).norm()); }
};

/// Lowest `count` eigenvalues of H_N(k), ascending with multiplicity.
RVector band_values(const CoefficientSet& cs, const Vec2& k, const PlaneWaveBasis& basis, int count);

BandEvaluator continuum_evaluator(const CoefficientSet& cs, const PlaneWaveBasis& basis, int count);

/// Fills a grid by evaluating every node. Output does not depend on the
/// worker count.
BandGrid scan_grid(const BandEvaluator& eval, const Vec2& g1, const Vec2& g2, int n1, int n2, int count,
                   unsigned workers = default_workers());

/// Scan over the fundamental cell spanned by 2 pi b1', 2 pi b2'.
BandGrid scan(const CoefficientSet& cs, int n1, int n2, const PlaneWaveBasis& basis, int count,
              unsigned workers = default_workers());

// --------------------------------------------------------------------------
// Level sets and extrema

struct LevelCluster {
  std::vector<std::pair<int, int>> nodes;
  /// Spread of the lifted node centres plus one grid spacing; a single node
  /// therefore has diameter equal to the spacing.
  double diameter = 0.0;
  /// True when the cluster closes up around the periodic cell.
  bool wraps = false;
  Vec2 best_k = Vec2::Zero();
  Vec2 best_t = Vec2::Zero();
  Vec2 centroid_k = Vec2::Zero();
};

/// The eps-thickened level set {|lambda_band - lambda_star| <= eps} split into
/// 8-connected clusters with periodic wraparound, largest first.
std::vector<LevelCluster> level_set(const BandGrid& grid, int band, double lambda_star, double eps);

enum class ExtremumKind { Min, Max };
enum class LevelGeometry { Isolated, Extended, Unresolved };

const char* to_string(ExtremumKind kind);
const char* to_string(LevelGeometry g);

struct EffectiveMass {
  /// Signed Hessian: +d2E for minima, -d2E for maxima (hbar = 1).
  Mat2 inverse_mass = Mat2::Zero();
  Mat2 hessian = Mat2::Zero();
  double step = 0.0;
  /// max |H(step) - H(step/2)|, the step-halving difference.
  double richardson_error = 0.0;
  /// Smallest eigenvalue of the signed Hessian is <= hessian_tol.
  bool degenerate = false;
};

EffectiveMass effective_mass(const BandEvaluator& eval, int band, ExtremumKind kind, const Vec2& k_star,
                             double step, double hessian_tol = 1e-8);
EffectiveMass effective_mass(const CoefficientSet& cs, int band, ExtremumKind kind, const Vec2& k_star,
                             const PlaneWaveBasis& basis, double step, double hessian_tol = 1e-8);

struct ExtremumOptions {
  double tol_gradient = 1e-5;
  int max_iterations = 50;
  /// Finite-difference step for gradients; <= 0 selects 1e-4 * cell diameter.
  double fd_step = 0.0;
  double isolated_spacings = 3.0;
  double extended_fraction = 0.25;
  std::size_t max_candidates = 8;
  double mass_step = 1e-3;
  double hessian_tol = 1e-8;
};

struct ExtremumPoint {
  Vec2 k = Vec2::Zero();
  Vec2 t = Vec2::Zero();
  double value = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
};

struct ExtremumReport {
  int band = 1;
  ExtremumKind kind = ExtremumKind::Min;
  double value = 0.0;       ///< refined lambda_*
  double grid_value = 0.0;  ///< best grid node value
  double eps = 0.0;
  std::vector<ExtremumPoint> points;
  LevelGeometry classification = LevelGeometry::Unresolved;
  std::vector<double> diameters;
  std::vector<EffectiveMass> masses;  ///< one per point when isolated
};

ExtremumReport locate_extrema(const BandGrid& grid, int band, ExtremumKind kind, double eps,
                              const BandEvaluator& eval, const ExtremumOptions& opt = {});
ExtremumReport locate_extrema(const BandGrid& grid, int band, ExtremumKind kind, double eps,
                              const CoefficientSet& cs, const PlaneWaveBasis& basis,
                              const ExtremumOptions& opt = {});

/// Verdict from cluster geometry alone.
LevelGeometry classify(const BandGrid& grid, const std::vector<LevelCluster>& clusters,
                       const ExtremumOptions& opt = {});

}  // namespace bandedge
