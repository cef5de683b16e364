// Extern-C facade over the C++ core. No exception crosses this boundary.

#include "plasmon/plasmon.h"

#include "plasmon/commands.hpp"
#include "plasmon/errors.hpp"

#include "json.hpp"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <sstream>

struct plasmon_config {
    plasmon::ConfigDocument doc;
};

struct plasmon_modes {
    std::vector<plasmon::ModeParams> modes;
};

struct plasmon_dressed {
    plasmon::DressedStates states;
    Eigen::MatrixXd weights;
};

struct plasmon_spectrum {
    plasmon::Spectrum spectrum;
};

struct plasmon_trace {
    plasmon::PopulationTrace trace;
};

namespace {

thread_local std::string g_error;
thread_local std::string g_error_json;

void clear_error() {
    g_error.clear();
    g_error_json.clear();
}

plasmon_status set_error(plasmon_status status, const std::string& kind, const std::string& message) {
    g_error = message;
    nlohmann::ordered_json j;
    j["status"] = plasmon_status_name(status);
    j["code"] = static_cast<int>(status);
    j["kind"] = kind;
    j["message"] = message;
    g_error_json = j.dump();
    return status;
}

plasmon_status status_for(plasmon::ErrorKind kind) {
    switch (kind) {
    case plasmon::ErrorKind::domain: return PLASMON_ERR_DOMAIN;
    case plasmon::ErrorKind::geometry: return PLASMON_ERR_GEOMETRY;
    case plasmon::ErrorKind::config: return PLASMON_ERR_CONFIG;
    case plasmon::ErrorKind::numerical: return PLASMON_ERR_NUMERICAL;
    case plasmon::ErrorKind::io: return PLASMON_ERR_IO;
    }
    return PLASMON_ERR_INTERNAL;
}

template <class F>
plasmon_status guard(F&& body) {
    clear_error();
    try {
        return body();
    } catch (const plasmon::Error& e) {
        return set_error(status_for(e.kind()), plasmon::to_string(e.kind()), e.what());
    } catch (const std::bad_alloc&) {
        return set_error(PLASMON_ERR_INTERNAL, "internal", "out of memory");
    } catch (const std::exception& e) {
        return set_error(PLASMON_ERR_INTERNAL, "internal", e.what());
    } catch (...) {
        return set_error(PLASMON_ERR_INTERNAL, "internal", "unknown exception");
    }
}

plasmon_status null_argument(const char* name) {
    return set_error(PLASMON_ERR_INVALID_ARGUMENT, "invalid_argument", std::string(name) + " must not be NULL");
}

char* duplicate(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

plasmon_status out_of_range(std::size_t index, std::size_t size) {
    return set_error(PLASMON_ERR_INVALID_ARGUMENT, "invalid_argument",
                     "index " + std::to_string(index) + " out of range (size " + std::to_string(size) + ")");
}

} // namespace

extern "C" {

const char* plasmon_version(void) { return plasmon::version_string(); }

const char* plasmon_status_name(plasmon_status status) {
    switch (status) {
    case PLASMON_OK: return "ok";
    case PLASMON_ERR_DOMAIN: return "domain_error";
    case PLASMON_ERR_CONFIG: return "config_error";
    case PLASMON_ERR_NUMERICAL: return "numerical_error";
    case PLASMON_ERR_GEOMETRY: return "geometry_error";
    case PLASMON_ERR_IO: return "io_error";
    case PLASMON_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case PLASMON_ERR_INTERNAL: return "internal_error";
    case PLASMON_VALIDATION_FAILED: return "validation_failed";
    }
    return "unknown";
}

const char* plasmon_last_error(void) { return g_error.c_str(); }
const char* plasmon_last_error_json(void) { return g_error_json.empty() ? "{}" : g_error_json.c_str(); }

void plasmon_string_free(char* str) { std::free(str); }

plasmon_status plasmon_config_new(plasmon_config** out) {
    return guard([&] {
        if (!out) return null_argument("out");
        *out = new plasmon_config();
        return PLASMON_OK;
    });
}

void plasmon_config_free(plasmon_config* cfg) { delete cfg; }

plasmon_status plasmon_config_parse(plasmon_config* cfg, const char* text) {
    return guard([&] {
        if (!cfg) return null_argument("cfg");
        if (!text) return null_argument("text");
        cfg->doc.merge_text(text);
        return PLASMON_OK;
    });
}

plasmon_status plasmon_config_load_file(plasmon_config* cfg, const char* path) {
    return guard([&] {
        if (!cfg) return null_argument("cfg");
        if (!path) return null_argument("path");
        std::ifstream in(path, std::ios::binary);
        if (!in) throw plasmon::ConfigError(std::string("cannot read configuration file '") + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        cfg->doc.merge_text(ss.str());
        return PLASMON_OK;
    });
}

plasmon_status plasmon_config_set(plasmon_config* cfg, const char* key, const char* value) {
    return guard([&] {
        if (!cfg) return null_argument("cfg");
        if (!key) return null_argument("key");
        if (!value) return null_argument("value");
        cfg->doc.set(key, value);
        return PLASMON_OK;
    });
}

plasmon_status plasmon_config_set_assignment(plasmon_config* cfg, const char* assignment) {
    return guard([&] {
        if (!cfg) return null_argument("cfg");
        if (!assignment) return null_argument("assignment");
        cfg->doc.set_assignment(assignment);
        return PLASMON_OK;
    });
}

plasmon_status plasmon_config_to_json(const plasmon_config* cfg, char** json_out) {
    return guard([&] {
        if (!cfg) return null_argument("cfg");
        if (!json_out) return null_argument("json_out");
        *json_out = duplicate(plasmon::config_to_json(cfg->doc.resolve()));
        return PLASMON_OK;
    });
}

plasmon_status plasmon_run(const plasmon_config* cfg, const char* command, const char* output_dir,
                           char** report_out) {
    return guard([&] {
        if (!cfg) return null_argument("cfg");
        if (!command) return null_argument("command");
        const auto cmd = plasmon::parse_command(command);
        if (!cmd) throw plasmon::ConfigError(std::string("unknown command '") + command + "'");
        auto config = cfg->doc.resolve();
        if (output_dir) {
            config.output_dir = output_dir;
            config.validate();
        }
        const auto result = plasmon::run_command(config, *cmd);
        if (report_out) *report_out = duplicate(result.report);
        if (!result.passed) {
            return set_error(PLASMON_VALIDATION_FAILED, "validation", "property suite reported failing checks");
        }
        return PLASMON_OK;
    });
}

plasmon_status plasmon_compute_modes(const plasmon_config* cfg, plasmon_modes** out) {
    return guard([&] {
        if (!cfg) return null_argument("cfg");
        if (!out) return null_argument("out");
        const auto config = cfg->doc.resolve();
        *out = new plasmon_modes{plasmon::compute_modes(config)};
        return PLASMON_OK;
    });
}

size_t plasmon_modes_count(const plasmon_modes* modes) { return modes ? modes->modes.size() : 0; }

plasmon_status plasmon_modes_get(const plasmon_modes* modes, size_t index, int* order, double* energy_ev,
                                 double* width_ev, double* coupling_ev, double* fit_residual) {
    return guard([&] {
        if (!modes) return null_argument("modes");
        if (index >= modes->modes.size()) return out_of_range(index, modes->modes.size());
        const auto& m = modes->modes[index];
        if (order) *order = m.order;
        if (energy_ev) *energy_ev = m.energy_ev;
        if (width_ev) *width_ev = m.width_ev;
        if (coupling_ev) *coupling_ev = m.coupling_ev;
        if (fit_residual) *fit_residual = m.fit.residual;
        return PLASMON_OK;
    });
}

void plasmon_modes_free(plasmon_modes* modes) { delete modes; }

plasmon_status plasmon_compute_dressed(const plasmon_config* cfg, plasmon_dressed** out) {
    return guard([&] {
        if (!cfg) return null_argument("cfg");
        if (!out) return null_argument("out");
        const auto config = cfg->doc.resolve();
        const auto modes = plasmon::selected_modes(config, plasmon::compute_modes(config));
        auto states = plasmon::diagonalize(plasmon::build_h_eff(config.emitter(), modes));
        auto w = plasmon::weights(states);
        *out = new plasmon_dressed{std::move(states), std::move(w)};
        return PLASMON_OK;
    });
}

size_t plasmon_dressed_count(const plasmon_dressed* states) {
    return states ? static_cast<size_t>(states->states.size()) : 0;
}

plasmon_status plasmon_dressed_get(const plasmon_dressed* states, size_t index, double* energy_ev, double* width_ev) {
    return guard([&] {
        if (!states) return null_argument("states");
        const auto n = static_cast<size_t>(states->states.size());
        if (index >= n) return out_of_range(index, n);
        const auto m = static_cast<Eigen::Index>(index);
        if (energy_ev) *energy_ev = states->states.dressed_energy(m);
        if (width_ev) *width_ev = states->states.dressed_width(m);
        return PLASMON_OK;
    });
}

plasmon_status plasmon_dressed_weight(const plasmon_dressed* states, size_t index, size_t component, double* weight) {
    return guard([&] {
        if (!states) return null_argument("states");
        if (!weight) return null_argument("weight");
        const auto n = static_cast<size_t>(states->weights.rows());
        if (index >= n) return out_of_range(index, n);
        if (component >= n) return out_of_range(component, n);
        *weight = states->weights(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(component));
        return PLASMON_OK;
    });
}

void plasmon_dressed_free(plasmon_dressed* states) { delete states; }

plasmon_status plasmon_compute_spectrum(const plasmon_config* cfg, const char* kind, plasmon_spectrum** out) {
    return guard([&] {
        if (!cfg) return null_argument("cfg");
        if (!kind) return null_argument("kind");
        if (!out) return null_argument("out");
        const auto c = cfg->doc.resolve();
        const std::string k = kind;
        plasmon::Spectrum s;
        if (k == "near") {
            const auto grid = c.frequency_grid();
            s = plasmon::polarization_spectrum(c.emitter(), c.sphere(), grid, c.modes, c.backend, c.subset());
        } else if (k == "far") {
            const auto grid = c.frequency_grid();
            s = plasmon::far_spectrum(c.emitter(), c.sphere(), c.detector(), grid, c.modes, c.projection, c.backend);
        } else if (k == "pattern") {
            const auto theta = c.theta_grid();
            s = plasmon::radiation_pattern(c.emitter(), c.sphere(), c.pattern_energy_ev, theta, c.pattern_r_nm,
                                           c.modes, c.projection);
        } else {
            throw plasmon::ConfigError("spectrum kind must be 'near', 'far' or 'pattern'");
        }
        *out = new plasmon_spectrum{std::move(s)};
        return PLASMON_OK;
    });
}

size_t plasmon_spectrum_length(const plasmon_spectrum* spectrum) {
    return spectrum ? spectrum->spectrum.values.size() : 0;
}

plasmon_status plasmon_spectrum_get(const plasmon_spectrum* spectrum, size_t index, double* abscissa, double* value) {
    return guard([&] {
        if (!spectrum) return null_argument("spectrum");
        const auto n = spectrum->spectrum.values.size();
        if (index >= n) return out_of_range(index, n);
        if (abscissa) *abscissa = spectrum->spectrum.abscissa[index];
        if (value) *value = spectrum->spectrum.values[index];
        return PLASMON_OK;
    });
}

plasmon_status plasmon_spectrum_asymmetry(const plasmon_spectrum* spectrum, double* asymmetry) {
    return guard([&] {
        if (!spectrum) return null_argument("spectrum");
        if (!asymmetry) return null_argument("asymmetry");
        if (spectrum->spectrum.kind != plasmon::SpectrumKind::pattern) {
            return set_error(PLASMON_ERR_INVALID_ARGUMENT, "invalid_argument", "asymmetry needs a radiation pattern");
        }
        *asymmetry = plasmon::forward_asymmetry(spectrum->spectrum);
        return PLASMON_OK;
    });
}

void plasmon_spectrum_free(plasmon_spectrum* spectrum) { delete spectrum; }

plasmon_status plasmon_compute_dynamics(const plasmon_config* cfg, plasmon_trace** out) {
    return guard([&] {
        if (!cfg) return null_argument("cfg");
        if (!out) return null_argument("out");
        *out = new plasmon_trace{plasmon::compute_trace(cfg->doc.resolve())};
        return PLASMON_OK;
    });
}

size_t plasmon_trace_length(const plasmon_trace* trace) { return trace ? trace->trace.time_fs.size() : 0; }
size_t plasmon_trace_mode_count(const plasmon_trace* trace) { return trace ? trace->trace.modes.size() : 0; }

plasmon_status plasmon_trace_get(const plasmon_trace* trace, size_t index, double* time_fs,
                                 double* emitter_population, double* mode_populations, double* norm) {
    return guard([&] {
        if (!trace) return null_argument("trace");
        const auto& t = trace->trace;
        if (index >= t.time_fs.size()) return out_of_range(index, t.time_fs.size());
        if (time_fs) *time_fs = t.time_fs[index];
        if (emitter_population) *emitter_population = t.emitter[index];
        if (mode_populations) {
            for (std::size_t k = 0; k < t.modes.size(); ++k) mode_populations[k] = t.modes[k][index];
        }
        if (norm) *norm = t.norm[index];
        return PLASMON_OK;
    });
}

void plasmon_trace_free(plasmon_trace* trace) { delete trace; }

plasmon_status plasmon_drude_permittivity(double eps_inf, double plasma_energy_ev, double damping_ev,
                                          double energy_ev, double* re, double* im) {
    return guard([&] {
        if (!re || !im) return null_argument(!re ? "re" : "im");
        plasmon::DrudeMaterial m{eps_inf, plasma_energy_ev, damping_ev};
        m.validate();
        const auto eps = plasmon::drude_permittivity(m, energy_ev);
        *re = eps.real();
        *im = eps.imag();
        return PLASMON_OK;
    });
}

plasmon_status plasmon_debye_to_si(double dipole_debye, double* out_si) {
    return guard([&] {
        if (!out_si) return null_argument("out_si");
        *out_si = plasmon::debye_to_si(dipole_debye);
        return PLASMON_OK;
    });
}

} // extern "C"
