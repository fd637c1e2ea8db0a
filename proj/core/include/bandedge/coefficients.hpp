#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bandedge/fourier_field.hpp"
#include "bandedge/lattice.hpp"

namespace bandedge {

/// Periodic coefficients of H(k) = (-i grad + k - A)^* omega^2 (-i grad + k - A) + V.
/// Vector components are in the canonical frame of `lattice`.
struct CoefficientSet {
  Lattice2D lattice;
  FourierField V;
  VectorField A;
  FourierField omega = FourierField::constant(1.0);
  /// Certified lower bound for omega^2; filled in by validate().
  double m_g = 0.0;

  explicit CoefficientSet(Lattice2D lat) : lattice(std::move(lat)) {}

  /// V = 0, A = 0, omega = 1.
  static CoefficientSet free(const Lattice2D& lat);

  FourierField omega_squared() const { return multiply(omega, omega); }
};

struct CheckResult {
  std::string name;
  bool pass = false;
  double residual = 0.0;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  double m_g = 0.0;
  double omega2_grid_min = 0.0;
  double safety_margin = 0.0;

  bool ok() const;
  const CheckResult* find(const std::string& name) const;
};

/// Residuals of every coefficient invariant plus the certified m_g: the
/// minimum of omega^2 on an oversampled grid minus a Lipschitz margin built
/// from sum |xi| |hat(omega^2)|.
ValidationReport validate(const CoefficientSet& cs);

/// validate() and store m_g; throws ErrorCode::NotPositive if omega^2 cannot be
/// certified positive, ErrorCode::InvalidArgument on any other failed check.
CoefficientSet certified(CoefficientSet cs);

struct GaugeReport {
  VectorField A_normalized;
  FourierField Phi;
  Vec2 k_shift = Vec2::Zero();
};

/// Removes the gradient part and the mean of A. H(k; A_raw) is unitarily
/// equivalent to H(k - k_shift; A_normalized).
GaugeReport gauge_normalize(const Lattice2D& lat, const VectorField& A_raw);

/// B = d1 A2 - d2 A1.
FourierField curl(const Lattice2D& lat, const VectorField& A);

/// Divergence in Fourier form, i xi . A(m).
FourierField divergence(const Lattice2D& lat, const VectorField& A);

/// phi with grad phi = (A2, -A1), zero mean. Throws NotDivergenceFree when
/// |xi . A(m)| exceeds 1e-8 for some stored m.
FourierField stream_function(const Lattice2D& lat, const VectorField& A);

/// Applies fn pointwise on an oversampled grid and truncates the result to
/// |m|_inf <= target_support. The grid is at least `oversampling` times
/// finer than max(support of f, target_support) requires.
FourierField resample_pointwise(const FourierField& f, int target_support,
                                const std::function<Complex(Complex)>& fn, int oversampling = 4);

/// Fourier coefficients of omega^{-2}. Throws NotPositive when omega is not
/// strictly positive on the sampling grid.
FourierField invert_square(const FourierField& omega, int target_support, int oversampling = 4);

}  // namespace bandedge
