#pragma once

#include <string>
#include <vector>

namespace bandedge::cli {

struct SelfCheckEntry {
  std::string module;
  std::string name;
  bool pass = false;
  double residual = 0.0;
  double tolerance = 0.0;
};

/// Module invariants at default tolerances, on seeded random instances.
/// The result does not depend on `workers`.
std::vector<SelfCheckEntry> run_selfcheck(unsigned workers);

}  // namespace bandedge::cli
