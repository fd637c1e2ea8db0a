#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bandedge/types.hpp"

namespace bandedge {

/// Prod_{i<j} (z_i - z_j)^2. Permutation-invariant; exactly zero when two
/// roots coincide.
Complex discriminant(std::span<const Complex> roots);

/// Groups roots whose distance is <= tol * (1 + |z_i|) (transitively).
/// Clusters are ordered by their first member in input order.
struct RootCluster {
  Complex center;
  std::vector<std::size_t> members;
  int multiplicity() const { return static_cast<int>(members.size()); }
};

std::vector<RootCluster> cluster_roots(std::span<const Complex> roots, double tol_cluster = 1e-6);

/// Axis-aligned rectangle in the complex plane.
struct SpectrumWindow {
  double re_min = 0.0;
  double re_max = 0.0;
  double im_min = 0.0;
  double im_max = 0.0;

  bool contains(Complex z) const {
    return z.real() >= re_min && z.real() < re_max && z.imag() >= im_min && z.imag() < im_max;
  }
  /// Distance from z to the rectangle boundary.
  double boundary_distance(Complex z) const;
};

struct DiscriminantPolicy {
  /// A pair closer than tol_pair * (1 + |z|) makes the discriminant zero.
  double tol_pair = 1e-5;
  /// No eigenvalue may lie within this distance of the window boundary.
  double tol_boundary = 1e-6;
};

struct DiscriminantResult {
  Complex delta;          ///< 0 when declared_zero, otherwise the raw product
  Complex raw;            ///< product as computed
  double abs = 0.0;       ///< |delta|
  double log10_abs = 0.0; ///< log10 |raw|, finite unless two roots are bit-identical
  bool declared_zero = false;
  std::vector<Complex> roots;  ///< eigenvalues inside the window
  double min_pair = 0.0;       ///< smallest pairwise distance (inf if < 2 roots)
  std::size_t pair_i = 0, pair_j = 0;
};

/// Discriminant of the characteristic polynomial restricted to the window.
/// Throws BoundaryEigenvalue if an eigenvalue sits on the window boundary.
DiscriminantResult restricted_discriminant(std::span<const Complex> eigenvalues, const SpectrumWindow& window,
                                           const DiscriminantPolicy& policy = {});

}  // namespace bandedge
