#pragma once

#include <vector>

#include "bandedge/discriminant.hpp"
#include "bandedge/lattice.hpp"

namespace bandedge {

/// Zero set of the free symbol h_m(k1, k2) in the k1-plane for
///   k2 = pi/2 + 2 pi n_turns + i (pi/2) alpha,
/// which does not depend on the imaginary offset l in 2 pi Z. Points lie on
/// the lines Im k1 in pi/2 + pi Z, spaced 2 pi alpha along each line.
struct SigmaPoint {
  Complex k1;
  DualIndex m;
  int sign = +1;  ///< +1 for the upper choice of signs, -1 for the lower
};

std::vector<SigmaPoint> sigma_set(const Lattice2D& lat, int n_turns, const SpectrumWindow& bounds);

/// The k2 used with sigma_set: pi/2 + 2 pi n_turns + i (pi/2 + 2 pi l_turns) alpha.
Complex sigma_k2(const Lattice2D& lat, int n_turns, int l_turns);

struct BrickWallReport {
  double measured_distance = 0.0;   ///< exact point-to-component distance
  double sampled_distance = 0.0;    ///< over the sampled boundary points
  double expected_distance = 0.0;   ///< min(pi/2, pi alpha)
  bool distance_pass = false;

  std::vector<int> l_turns;
  std::vector<double> min_abs_h;    ///< min over samples and m of |h_m|, per l
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  bool growth_pass = false;

  bool pass() const { return distance_pass && growth_pass; }
};

/// Builds the brick wall G_n (horizontal lines Im k1 in pi Z plus a vertical
/// segment of length pi at z + pi alpha for every z in Sigma_n), measures its
/// distance to Sigma_n, and fits min_m |h_m(k1, k2(l))| over sampled k1 in
/// G_n against |l|.
BrickWallReport brick_wall_check(const Lattice2D& lat, int n_turns, int sample_count,
                                 std::vector<int> l_turns = {1, 2, 4});

}  // namespace bandedge
