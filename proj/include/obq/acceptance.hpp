#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace obq {

struct AcceptanceConfig {
    std::uint64_t seed = 20260809;
    // Self-test hook: a nonzero value is added to every Marcum evaluation in
    // the special-function criterion, which must then fail.
    double marcum_perturb = 0.0;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Runs the full acceptance battery; one entry per criterion.
std::vector<CheckResult> run_acceptance(const AcceptanceConfig& config);

// Prints one PASS/FAIL line per criterion plus a summary; returns true iff
// everything passed. Output is deterministic for a fixed config.
bool print_acceptance(std::ostream& os, const std::vector<CheckResult>& results);

}  // namespace obq
