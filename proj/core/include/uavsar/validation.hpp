#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace uavsar::validation {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationOptions {
    std::size_t repair_trials = 200;
    std::size_t monte_carlo_fixtures = 5;
    std::size_t budget_evals = 500;
};

/// Self-checks of the invariants a deployment plan relies on: geometry
/// fixtures, radius/PoD law, repair feasibility, coverage vs Monte-Carlo,
/// determinism and evaluation-budget parity.
[[nodiscard]] std::vector<CheckResult> run_validation(const ValidationOptions& options = {});

}  // namespace uavsar::validation
