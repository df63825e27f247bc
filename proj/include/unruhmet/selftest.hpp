#pragma once

#include <string>
#include <vector>

namespace unruhmet {

/// Cross-route agreement suite over a fixed seeded parameter set. Runs
/// without any test harness so a shipped binary can verify itself.
struct SelftestResult {
    struct Check {
        std::string name;
        double observed; // worst case over the parameter set
        double tolerance;
        bool passed;
    };

    std::vector<Check> checks;
    bool all_passed = true;
};

SelftestResult run_selftest();

/// Deterministic textual report, one pass/fail line per check; byte
/// identical across runs.
std::string format_selftest(const SelftestResult& result);

} // namespace unruhmet
