// commands.hpp: dispatch of one CLI command against a resolved configuration,
// writing deterministic CSV tables and JSON sidecars into config.output_dir.

#pragma once

#include "plasmon/config.hpp"
#include "plasmon/dynamics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace plasmon {

enum class Command { modes, dressed, spectrum_near, spectrum_far, pattern, dynamics, validate };

/// Accepts the hyphenated names used on the command line ("spectrum-near", ...).
std::optional<Command> parse_command(const std::string& name);
const char* to_string(Command command) noexcept;

struct CommandResult {
    std::vector<std::string> files;  // paths written, in order
    std::string report;              // human-readable summary for stdout
    bool passed = true;              // false only when `validate` has failing checks
};

/// Runs the command and writes its outputs. Throws plasmon::Error subclasses.
CommandResult run_command(const RunConfig& config, Command command);

/// Mode table for orders 1..config.modes on the configured frequency grid.
std::vector<ModeParams> compute_modes(const RunConfig& config);
/// The entries of `all` listed in config.mode_subset (all of them when empty).
std::vector<ModeParams> selected_modes(const RunConfig& config, const std::vector<ModeParams>& all);
/// Populations on the configured time grid: the dressed-state expansion, or
/// direct propagation when the dressed basis is ill-conditioned. `method`
/// receives "eigen" or "propagate".
PopulationTrace compute_trace(const RunConfig& config, std::string* method = nullptr);

/// Fixed-width scientific formatting with 17 significant digits.
std::string format_number(double value);

const char* version_string() noexcept;

} // namespace plasmon
