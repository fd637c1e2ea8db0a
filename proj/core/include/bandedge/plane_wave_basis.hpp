#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bandedge/lattice.hpp"

namespace bandedge {

/// Plane waves exp(i frequency(m).x) with |m1| <= N and |m2| <= N, ordered
/// lexicographically by (m1, m2).
class PlaneWaveBasis {
 public:
  explicit PlaneWaveBasis(int N);

  int N() const { return N_; }
  std::size_t size() const { return indices_.size(); }
  const std::vector<DualIndex>& indices() const { return indices_; }
  DualIndex operator[](std::size_t i) const { return indices_[i]; }

  bool contains(DualIndex m) const { return radius(m) <= N_; }
  std::optional<std::size_t> index_of(DualIndex m) const {
    if (!contains(m)) return std::nullopt;
    const int w = 2 * N_ + 1;
    return static_cast<std::size_t>((m.m1 + N_) * w + (m.m2 + N_));
  }

 private:
  int N_;
  std::vector<DualIndex> indices_;
};

}  // namespace bandedge
