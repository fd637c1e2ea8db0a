#pragma once

#include "bandedge/coefficients.hpp"
#include "bandedge/plane_wave_basis.hpp"
#include "bandedge/types.hpp"

namespace bandedge {

/// Galerkin matrix of the Bloch fiber H(k) in a plane-wave basis.
struct FiberMatrix {
  CVec2 k;
  int N = 0;
  CMatrix entries;
};

/// Exact Galerkin matrix <e_m', H(k) e_m> for band-limited coefficients.
///
/// H(k) = sum_j D_j(k) [omega^2] D_j(k) + [V] with D_j(k) = -i d_j + k_j - A_j.
/// Intermediate plane waves outside the basis are kept, so every entry is
/// the exact compression of the operator (no product-of-sections error) and
/// a polynomial of degree two in k. For complex k the entries are the
/// analytic continuation from real k.
FiberMatrix assemble_fiber(const CoefficientSet& cs, const CVec2& k, const PlaneWaveBasis& basis);

/// H(k1, k2) - lambda I = K0 + k1 K1 + k1^2 K2 with the blocks read off the
/// operator structure directly:
///   K2 = [omega^2],  K1 = [omega^2] D_1(0) + D_1(0) [omega^2],
///   K0 = H(0, k2) - lambda I.
struct PencilBlocks {
  CMatrix K0, K1, K2;
  Complex k2;
  Complex lambda;

  /// K0 + z K1 + z^2 K2.
  CMatrix evaluate(Complex z) const { return K0 + z * K1 + (z * z) * K2; }
  /// ||K0||_F + ||K1||_F + ||K2||_F, the reference scale for residuals.
  double scale() const { return K0.norm() + K1.norm() + K2.norm(); }
};

PencilBlocks pencil_blocks(const CoefficientSet& cs, Complex k2, Complex lambda,
                           const PlaneWaveBasis& basis);

/// Symbol of the free fiber and its factorisation h = q_plus * q_minus.
struct FreeSymbol {
  Complex h;
  Complex q_plus;
  Complex q_minus;
};

FreeSymbol free_symbol(const Lattice2D& lat, DualIndex m, const CVec2& k);

/// Toeplitz section [f]_{m', m} = fhat(m' - m).
CMatrix multiplication_matrix(const FourierField& f, const PlaneWaveBasis& basis);

}  // namespace bandedge
