#include "bandedge/plane_wave_basis.hpp"

#include "bandedge/error.hpp"

namespace bandedge {

PlaneWaveBasis::PlaneWaveBasis(int N) : N_(N) {
  if (N < 0) throw Error(ErrorCode::InvalidArgument, "truncation radius must be nonnegative");
  indices_.reserve(static_cast<std::size_t>(2 * N + 1) * (2 * N + 1));
  for (int m1 = -N; m1 <= N; ++m1)
    for (int m2 = -N; m2 <= N; ++m2) indices_.push_back({m1, m2});
}

}  // namespace bandedge
