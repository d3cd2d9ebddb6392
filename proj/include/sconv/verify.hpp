#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sconv::verify {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteResult {
  std::vector<CheckResult> checks;
  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

// The exact-identity suite run by `sconv verify`: coarsening cell-mass
// identity, pushforward mass/symmetry, quotient membership in M_k^*, the
// kernel/partition bridge, uniform-measure collapse and refinement
// invariance, on built-in and seeded random instances.
// corrupt = true deliberately feeds a broken mass matrix to exercise the
// failure path (the "total-mass" check reports FAIL).
SuiteResult run_suite(std::uint64_t seed, bool corrupt = false);

}  // namespace sconv::verify
