// SPDX-License-Identifier: MIT
// Invariant battery behind `gpbench validate`: quick cross-checks of the
// posterior, geometry, confidence bounds, algorithms and serialization.
#pragma once

#include <string>
#include <vector>

namespace gpband::bench {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Runs the battery; `fast` trims the statistical checks to the structural
/// ones. Never throws: a check that throws is reported as failed.
std::vector<CheckResult> run_validation(bool fast);

}  // namespace gpband::bench
