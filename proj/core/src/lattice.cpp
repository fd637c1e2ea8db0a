#include "bandedge/lattice.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bandedge/error.hpp"

namespace bandedge {

namespace {

double det2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

}  // namespace

std::pair<Vec2, Vec2> dual_basis(const Vec2& b1, const Vec2& b2) {
  const double scale = std::max(b1.norm(), b2.norm());
  const double det = det2(b1, b2);
  if (!(std::abs(det) > 1e-12 * scale * scale)) {
    std::ostringstream msg;
    msg << "basis vectors are linearly dependent (det = " << det << ")";
    throw Error(ErrorCode::DegenerateLattice, msg.str());
  }
  // Rows of B^{-1}^T: b1' is orthogonal to b2, b2' orthogonal to b1.
  const Vec2 b1p(b2.y() / det, -b2.x() / det);
  const Vec2 b2p(-b1.y() / det, b1.x() / det);
  return {b1p, b2p};
}

Lattice2D Lattice2D::canonicalize(const Vec2& b1, const Vec2& b2) {
  auto [d1, d2] = dual_basis(b1, b2);

  Lattice2D lat;
  lat.raw_b1_ = b1;
  lat.raw_b2_ = b2;
  lat.raw_b1p_ = d1;
  lat.raw_b2p_ = d2;

  const double orientation = det2(d1, d2);
  if (orientation <= 0.0) {
    throw Error(ErrorCode::DegenerateLattice,
                "basis is negatively oriented; the canonical form needs det(b1, b2) > 0");
  }

  const bool already_canonical = std::abs(d1.y()) <= 1e-12 && d1.x() > 0.0 &&
                                 std::abs(d2.y() - 1.0) <= 1e-12;
  if (already_canonical) {
    lat.canon_ = Mat2::Identity();
    lat.alpha_ = d1.x();
    lat.beta_ = d2.x();
    return lat;
  }

  // Rotate d1 onto the positive e1 axis, then dilate so that d2 has unit
  // second component. Orientation > 0 makes the dilation positive.
  const double r = d1.norm();
  const double c = d1.x() / r;
  const double s = d1.y() / r;
  Mat2 rot;
  rot << c, s, -s, c;
  const Vec2 rd2 = rot * d2;
  const double dilation = 1.0 / rd2.y();
  lat.canon_ = dilation * rot;
  lat.alpha_ = dilation * r;
  lat.beta_ = dilation * rd2.x();
  return lat;
}

// Direct vectors transform contragrediently: x' = canon^{-T} x.
Vec2 Lattice2D::b1() const { return canon_.inverse().transpose() * raw_b1_; }
Vec2 Lattice2D::b2() const { return canon_.inverse().transpose() * raw_b2_; }

double Lattice2D::cell_area() const { return 1.0 / alpha_; }

}  // namespace bandedge
