#pragma once

#include "bandedge/fiber.hpp"

namespace bandedge {

/// Which side of the scalar-metric conjugation identity to build.
///  - Sandwich: omega H(k; 1, A, omega^{-2} V + omega^{-1} Lap omega) omega,
///    which equals H(k; omega^2, A, V).
///  - FlatConjugate: omega H(k; 1, A, V) omega, which equals
///    H(k; omega^2, A, omega^2 V - omega Lap omega).
/// Both are products of finite sections, so they only agree with the direct
/// assembly in the limit N -> infinity.
enum class ConjugationSide { Sandwich, FlatConjugate };

FiberMatrix conjugated_fiber(const CoefficientSet& cs, const CVec2& k, const PlaneWaveBasis& basis,
                             ConjugationSide side);

/// The coefficient set whose direct assembly the given side should match.
CoefficientSet conjugation_partner(const CoefficientSet& cs, ConjugationSide side);

/// Mismatch of the lowest `count` eigenvalues (real k) between the
/// conjugated product and the partner's direct assembly.
double conjugation_eigenvalue_mismatch(const CoefficientSet& cs, const Vec2& k, const PlaneWaveBasis& basis,
                                       ConjugationSide side, int count = 5);

/// Residual of the Pauli factorisation of the inverse magnetic fiber,
///   H(k; 1, A, B)^{-1} ~ e^{phi} Q^-(k)^{-1} e^{-2 phi} Q^+(k)^{-1} e^{phi},
/// at finite section N. B = curl A; e^{phi}, e^{-2 phi} come from
/// oversampled-grid resampling.
struct PauliResidual {
  /// ||H_N M_N - I|| in the inverse-weighted norm, i.e. ||M_N - H_N^{-1}||_2.
  double residual = 0.0;
  /// ||H_N M_N - I||_2 restricted to plane waves with |m|_inf <= probe_radius.
  double low_block = 0.0;
  /// Plain ||H_N M_N - I||_2 (dominated by the section boundary).
  double full = 0.0;
  double q_condition = 0.0;
};

/// Throws SingularFactor when the diagonal factors Q+- have condition
/// number >= 1e12.
PauliResidual pauli_residual(const Lattice2D& lat, const VectorField& A, const CVec2& k,
                             const PlaneWaveBasis& basis, int probe_radius = 1);

/// Free-symbol lower bound min_m |h_m(k)| >= |Im k1| * dist(Re k2, 2 pi Z),
/// valid when Im k1 is in 2 pi Z and k2 is real.
struct ResolventBoundCheck {
  double min_abs_h = 0.0;
  double bound = 0.0;
  double delta = 0.0;
  bool pass = false;
};

/// Throws HypothesisViolated when Im k1 is not in 2 pi Z or Im k2 != 0
/// (tolerance 1e-9).
ResolventBoundCheck free_resolvent_bound_check(const Lattice2D& lat, const CVec2& k,
                                               const PlaneWaveBasis& basis);

}  // namespace bandedge
