#pragma once

#include <string>
#include <vector>

namespace et::validate {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Full invariant battery over laws, quantum-number bookkeeping, the compact
// solvers, the stationarity route and the numeric oracle. Tolerances are
// pinned per check and do not follow solver-configuration overrides.
std::vector<CheckResult> run_battery();

}  // namespace et::validate
