// validation.hpp: property suite behind the `validate` command.

#pragma once

#include "plasmon/config.hpp"

#include <string>
#include <vector>

namespace plasmon {

struct CheckResult {
    std::string name;
    double value = 0.0;      // measured deviation
    double tolerance = 0.0;  // pass when value < tolerance
    bool passed = false;
    std::string detail;
};

/// Consistency checks on the configured system: Kramers-Kronig residual,
/// biorthonormality, eigen-reconstruction, H^T = D H D, Lorentzian sum rule,
/// quasi-static/Mie agreement for a small sphere, eigen-expansion vs direct
/// propagation, norm monotonicity, lossless limits and LDOS positivity.
std::vector<CheckResult> run_property_suite(const RunConfig& config);

/// Aligned pass/fail table, one line per check plus a summary line.
std::string format_check_table(const std::vector<CheckResult>& checks);

} // namespace plasmon
