#pragma once

#include <span>
#include <string>
#include <vector>

#include "bandedge/coefficients.hpp"
#include "bandedge/discriminant.hpp"
#include "bandedge/fiber.hpp"
#include "bandedge/parallel.hpp"

namespace bandedge {

/// Companion linearisation of the quadratic pencil in k1:
///
///   T1(k2, lambda) = [[ 0,   K2^{-1}      ],
///                     [ -K0, -K1 K2^{-1}  ]]
///
/// z is an eigenvalue iff det(K0 + z K1 + z^2 K2) = 0, and (u, z K2 u) is an
/// eigenvector whenever (H(z, k2) - lambda) u = 0. The lower-right block is
/// the finite section of 2(i d1 + A1) - 2i omega^{-1} d1 omega.
struct LinearizedOperator {
  Complex k2;
  Complex lambda;
  int N = 0;
  PencilBlocks pencil;
  CMatrix K2_inverse;
  CMatrix matrix;
  double mass_condition = 0.0;

  Eigen::Index dim() const { return pencil.K0.rows(); }
};

/// Throws IllConditionedMass when cond(K2) > 1e10.
LinearizedOperator assemble_t1(const CoefficientSet& cs, Complex k2, Complex lambda, const PlaneWaveBasis& basis);

struct T1Spectrum {
  /// All 2*dim eigenvalues, sorted by (Re, Im).
  std::vector<Complex> eigenvalues;
  /// Columns match `eigenvalues`; empty unless requested.
  CMatrix eigenvectors;
  std::vector<RootCluster> clusters;
};

/// Throws SolverFailure if the nonsymmetric eigensolver does not converge.
T1Spectrum t1_spectrum(const LinearizedOperator& T, bool with_vectors = false, double tol_cluster = 1e-6);

struct CorrespondenceReport {
  /// max over eigenvalues z of ||(H(z, k2) - lambda) u|| / ||u||, u the top
  /// block of the eigenvector. This bounds sigma_min(H(z, k2) - lambda) from above.
  double max_residual = 0.0;
  double scale = 0.0;
  std::size_t eigenvalue_count = 0;
};

CorrespondenceReport correspondence_check(const CoefficientSet& cs, Complex k2, Complex lambda,
                                          const PlaneWaveBasis& basis);

/// For real k and the eigenpair (lambda_band(k), u) of H_N(k), returns
/// ||T1 w - k1 w|| / ||w|| with w = (u, k1 K2 u), together with the scale.
struct EigenvectorRelation {
  double residual = 0.0;
  double scale = 0.0;
  double lambda = 0.0;
};

EigenvectorRelation eigenvector_relation(const CoefficientSet& cs, const Vec2& k, const PlaneWaveBasis& basis,
                                         int band);

struct PeriodicityReport {
  double shift = 0.0;
  std::size_t interior_count = 0;
  std::size_t matched = 0;
  double matched_fraction = 0.0;
  double max_mismatch = 0.0;
};

struct PeriodicityOptions {
  /// Eigenvectors with more than this fraction of their top-block weight on
  /// the outermost plane-wave shell count as boundary-affected.
  double boundary_weight = 1e-3;
  double tol_match = 1e-4;
};

/// Matches interior T1 eigenvalues at N_inner, shifted by `shift` (default
/// 2 pi alpha), against the spectrum at N_outer.
PeriodicityReport periodicity_check(const CoefficientSet& cs, Complex k2, Complex lambda, const PlaneWaveBasis& inner,
                                    const PlaneWaveBasis& outer, const PeriodicityOptions& opt = {});
PeriodicityReport periodicity_check(const CoefficientSet& cs, Complex k2, Complex lambda, const PlaneWaveBasis& inner,
                                    const PlaneWaveBasis& outer, double shift, const PeriodicityOptions& opt = {});

/// Smallest positive real shift s, among differences of interior eigenvalues
/// with equal imaginary part, for which periodicity_check matches at least
/// 90%. Returns 0 if none does.
double detect_period(const CoefficientSet& cs, Complex k2, Complex lambda, const PlaneWaveBasis& inner,
                     const PlaneWaveBasis& outer, const PeriodicityOptions& opt = {});

struct WindowPolicy {
  double im_cap = kPi;
  /// The real window is [r0, r0 + 2 pi alpha) with r0 in [re_center - 2 pi alpha, re_center).
  double re_center = 0.0;
  int probes = 256;
};

/// Window |Im| <= im_cap, one real period, r0 chosen as far as possible from
/// the real parts of eigenvalues inside the strip.
SpectrumWindow select_window(std::span<const Complex> eigenvalues, const Lattice2D& lat,
                             const WindowPolicy& policy = {});

struct ScanPolicy {
  WindowPolicy window;
  DiscriminantPolicy discriminant;
  double tol_cluster = 1e-6;
  /// Flag requires |Delta| <= tol_disc (declared zero passes).
  double tol_disc = 0.0;
  /// The closest pair must have |Im midpoint| <= tol_real * (1 + |z|).
  double tol_real = 1e-5;
};

struct ScanEntry {
  double k2 = 0.0;
  bool ok = true;
  std::string error;
  SpectrumWindow window;
  Complex delta;
  double abs = 0.0;
  double log10_abs = 0.0;
  std::size_t count = 0;
  double min_pair = 0.0;
  Complex pair_midpoint;
  bool flag = false;
};

struct DiscriminantScan {
  Complex lambda;
  std::vector<ScanEntry> entries;
};

/// Discriminant of T1 restricted to a window for each real k2. Per-k2
/// BoundaryEigenvalue failures are recorded and the scan continues.
DiscriminantScan degeneracy_scan(const CoefficientSet& cs, Complex lambda, std::span<const double> k2_values,
                                 const ScanPolicy& policy, const PlaneWaveBasis& basis,
                                 unsigned workers = default_workers());

}  // namespace bandedge
