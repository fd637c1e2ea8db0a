#pragma once

#include <compare>
#include <utility>

#include "bandedge/types.hpp"

namespace bandedge {

/// Integer label of a dual-lattice vector. The physical frequency carries an
/// extra factor 2*pi which is applied only in Lattice2D::frequency().
struct DualIndex {
  int m1 = 0;
  int m2 = 0;

  friend constexpr auto operator<=>(const DualIndex&, const DualIndex&) = default;
  friend constexpr DualIndex operator+(DualIndex a, DualIndex b) { return {a.m1 + b.m1, a.m2 + b.m2}; }
  friend constexpr DualIndex operator-(DualIndex a, DualIndex b) { return {a.m1 - b.m1, a.m2 - b.m2}; }
  friend constexpr DualIndex operator-(DualIndex a) { return {-a.m1, -a.m2}; }
};

/// Chebyshev radius max(|m1|, |m2|).
constexpr int radius(DualIndex m) {
  const int a = m.m1 < 0 ? -m.m1 : m.m1;
  const int b = m.m2 < 0 ? -m.m2 : m.m2;
  return a > b ? a : b;
}

/// Biorthogonal dual of a 2D basis: <b_i, b_j'> = delta_ij.
/// Throws ErrorCode::DegenerateLattice when |det| <= 1e-12 * scale^2.
std::pair<Vec2, Vec2> dual_basis(const Vec2& b1, const Vec2& b2);

/// A Bravais lattice together with the conformal map that puts its dual
/// basis into the normal form b1' = alpha e1, b2' = beta e1 + e2, alpha > 0.
///
/// All quantities used by the solvers (frequencies, quasimomenta, vector
/// potentials) live in the canonical frame. The raw input is kept for
/// reporting.
class Lattice2D {
 public:
  static Lattice2D canonicalize(const Vec2& b1, const Vec2& b2);
  static Lattice2D square() { return canonicalize(Vec2(1.0, 0.0), Vec2(0.0, 1.0)); }

  // raw input basis and its dual
  const Vec2& raw_b1() const { return raw_b1_; }
  const Vec2& raw_b2() const { return raw_b2_; }
  const Vec2& raw_b1p() const { return raw_b1p_; }
  const Vec2& raw_b2p() const { return raw_b2p_; }

  // canonical frame
  Vec2 b1() const;
  Vec2 b2() const;
  Vec2 b1p() const { return Vec2(alpha_, 0.0); }
  Vec2 b2p() const { return Vec2(beta_, 1.0); }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

  /// Positive multiple of a rotation; maps raw dual vectors to canonical ones.
  const Mat2& canon() const { return canon_; }

  /// 2*pi*(m1 b1' + m2 b2') in canonical coordinates.
  Vec2 frequency(DualIndex m) const {
    return Vec2(kTwoPi * (alpha_ * m.m1 + beta_ * m.m2), kTwoPi * m.m2);
  }

  double cell_area() const;

 private:
  Lattice2D() = default;

  Vec2 raw_b1_, raw_b2_, raw_b1p_, raw_b2p_;
  Mat2 canon_ = Mat2::Identity();
  double alpha_ = 1.0;
  double beta_ = 0.0;
};

}  // namespace bandedge
