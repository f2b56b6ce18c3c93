#pragma once

#include <string>
#include <vector>

#include "galton/params.hpp"

namespace galton {

struct CheckResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;  // the margin actually observed
    double tolerance = 0.0;
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool all_passed() const;
};

struct ValidationOptions {
    int threads = 1;
    // corruption fixture: scales every assembled two-photon amplitude; any
    // value other than 1 must trip the unitarity check
    double corrupt_scale = 1.0;
    // the cross-validation against the RK4 oracle caps the board size here
    int oracle_max_steps = 3;
    double oracle_dt = 1e-4;
};

/// Runs the internal consistency suites (unitarity, pattern symmetries,
/// linear-walk delay invariance, oracle equivalence, ODE residuals) on the
/// given parameters.
ValidationReport run_validation(const WalkParams& params, const ValidationOptions& options = {});

std::string format_report(const ValidationReport& report);

} // namespace galton
