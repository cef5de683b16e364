// config.hpp: run configuration: flat `key = value` documents with `#`
// comments, compiled-in defaults for the reference silver-sphere setup.
//
// Schema (units in brackets):
//   material           silver-drude | custom      preset applied before the explicit Drude keys
//   eps_inf            [-]      plasma_energy [eV]      damping [eV]
//   eps_background     [-]
//   radius [nm]        gap [nm] (emitter centre distance = radius + gap)
//   emitter_energy [eV]   dipole [D]   emitter_linewidth [eV]
//   modes              number of multipole orders N
//   backend            mie | quasistatic
//   freq_min [eV]  freq_max [eV]  freq_points
//   time_max [fs]  time_points
//   theta_points       angular samples over [0, pi] (odd, so pi/2 is a sample)
//   detector_r [nm]  detector_theta [rad]
//   pattern_energy [eV]  pattern_r [nm]
//   mode_subset        comma-separated orders, empty for 1..N
//   projection         vector | scalar
//   output_dir         directory for CSV/JSON outputs
//   dressed_json       true | false (full complex eigenvectors as JSON)

#pragma once

#include "plasmon/spectra.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace plasmon {

struct RunConfig {
    std::string material = "silver-drude";
    DrudeMaterial drude = DrudeMaterial::silver();
    double eps_background = 1.0;
    double radius_nm = 8.0;
    double gap_nm = 2.0;
    double emitter_energy_ev = 2.94;
    double dipole_debye = 24.0;
    double emitter_linewidth_ev = 0.015;
    int modes = 25;
    GreensBackend backend = GreensBackend::mie;
    double freq_min_ev = 2.0;
    double freq_max_ev = 3.4;
    int freq_points = 14001;
    double time_max_fs = 200.0;
    int time_points = 2000;
    int theta_points = 361;
    double detector_r_nm = 1000.0;
    double detector_theta_rad = constants::pi / 2.0;
    double pattern_energy_ev = 2.86;
    double pattern_r_nm = 1000.0;
    std::vector<int> mode_subset;
    Projection projection = Projection::vector;
    std::string output_dir = ".";
    bool dressed_json = false;

    SphereSystem sphere() const;
    EmitterParams emitter() const;
    std::vector<double> frequency_grid() const;
    std::vector<double> time_grid() const;
    std::vector<double> theta_grid() const;
    DetectorPosition detector() const;
    std::optional<std::vector<int>> subset() const;

    /// Re-checks every downstream precondition; ConfigError names the field.
    void validate() const;
};

/// Raw key/value document with override support; resolve() applies defaults.
class ConfigDocument {
public:
    /// Parses `text` and merges its keys (later keys win). Throws ConfigError on
    /// syntax errors or unknown keys.
    void merge_text(const std::string& text);
    /// Single override, e.g. from `--set key=value`.
    void set(const std::string& key, const std::string& value);
    /// `key=value` form of set().
    void set_assignment(const std::string& assignment);

    RunConfig resolve() const;
    const std::map<std::string, std::string>& entries() const { return entries_; }

private:
    std::map<std::string, std::string> entries_;
};

RunConfig parse_config(const std::string& text);

const std::vector<std::string>& config_keys();

/// Resolved configuration as JSON text (indent 2, keys sorted).
std::string config_to_json(const RunConfig& config);

} // namespace plasmon
