#include "plasmon/commands.hpp"

#include "plasmon/dynamics.hpp"
#include "plasmon/errors.hpp"
#include "plasmon/validation.hpp"

#include "json.hpp"

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace plasmon {

using ojson = nlohmann::ordered_json;

namespace {

struct Column {
    std::string name;
    std::string unit;
};

class Table {
public:
    explicit Table(std::vector<Column> columns) : columns_(std::move(columns)) {}

    void add_row(const std::vector<double>& row) {
        if (row.size() != columns_.size()) throw NumericalError("internal: CSV row has the wrong column count");
        rows_.push_back(row);
    }
    std::size_t rows() const { return rows_.size(); }

    std::string csv() const {
        std::string out;
        for (std::size_t c = 0; c < columns_.size(); ++c) {
            if (c) out += ',';
            out += columns_[c].name;
        }
        out += '\n';
        for (const auto& row : rows_) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c) out += ',';
                out += format_cell(row[c], columns_[c].unit == "index");
            }
            out += '\n';
        }
        return out;
    }

    ojson column_json() const {
        ojson cols = ojson::array();
        for (const auto& c : columns_) cols.push_back({{"name", c.name}, {"unit", c.unit}});
        return cols;
    }

private:
    static std::string format_cell(double v, bool integral) {
        if (integral) return std::to_string(static_cast<long long>(v));
        return format_number(v);
    }

    std::vector<Column> columns_;
    std::vector<std::vector<double>> rows_;
};

class OutputWriter {
public:
    OutputWriter(const RunConfig& config, Command command) : config_(config), command_(command) {
        std::error_code ec;
        std::filesystem::create_directories(config.output_dir, ec);
        if (ec) throw IoError("cannot create output directory '" + config.output_dir + "': " + ec.message());
    }

    void write_text(const std::string& name, const std::string& text) {
        const auto path = (std::filesystem::path(config_.output_dir) / name).string();
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + path + "' for writing");
        out << text;
        out.close();
        if (!out) throw IoError("failed writing '" + path + "'");
        files_.push_back(path);
    }

    /// CSV plus `<stem>.json` sidecar with columns, units, summary and the
    /// resolved configuration.
    void write_table(const std::string& stem, const Table& table, ojson summary) {
        write_text(stem + ".csv", table.csv());
        ojson meta;
        meta["command"] = to_string(command_);
        meta["version"] = version_string();
        meta["table"] = stem + ".csv";
        meta["rows"] = table.rows();
        meta["columns"] = table.column_json();
        meta["summary"] = std::move(summary);
        meta["config"] = ojson::parse(config_to_json(config_));
        write_text(stem + ".json", meta.dump(2) + "\n");
    }

    std::vector<std::string> files() const { return files_; }

private:
    const RunConfig& config_;
    Command command_;
    std::vector<std::string> files_;
};

ojson peaks_json(const std::vector<Peak>& peaks) {
    ojson arr = ojson::array();
    for (const auto& p : peaks) arr.push_back({{"position", p.position}, {"value", p.value}});
    return arr;
}

ojson spectrum_settings(const Spectrum& s) {
    ojson j;
    j["kind"] = to_string(s.kind);
    j["backend"] = to_string(s.backend);
    j["truncation"] = s.truncation;
    j["mode_subset"] = s.mode_subset;
    j["projection"] = to_string(s.projection);
    if (s.detector) j["detector"] = {{"r_nm", s.detector->r_nm}, {"theta_rad", s.detector->theta_rad}};
    if (s.energy_ev) j["energy_ev"] = *s.energy_ev;
    return j;
}

std::string describe_files(const std::vector<std::string>& files) {
    std::string out;
    for (const auto& f : files) out += "wrote " + f + "\n";
    return out;
}

CommandResult run_modes(const RunConfig& config) {
    OutputWriter w(config, Command::modes);
    const auto modes = compute_modes(config);
    Table t({{"n", "index"}, {"omega_n_eV", "eV"}, {"gamma_n_eV", "eV"}, {"g_n_eV", "eV"}, {"fit_residual", "1"}});
    ojson flagged = ojson::array();
    ojson ratio = ojson::array();
    for (const auto& m : modes) {
        t.add_row({double(m.order), m.energy_ev, m.width_ev, m.coupling_ev, m.fit.residual});
        if (m.fit.non_lorentzian) flagged.push_back(m.order);
        ratio.push_back(m.coupling_ev / m.width_ev);
    }
    ojson summary;
    summary["non_lorentzian_orders"] = flagged;
    summary["coupling_over_width"] = ratio;
    w.write_table("modes", t, summary);
    return {w.files(), describe_files(w.files()), true};
}

CommandResult run_dressed(const RunConfig& config) {
    OutputWriter w(config, Command::dressed);
    const auto modes = selected_modes(config, compute_modes(config));
    const auto h = build_h_eff(config.emitter(), modes);
    const auto states = diagonalize(h);
    const auto wt = weights(states);

    Table eig({{"m", "index"}, {"Omega_eV", "eV"}, {"width_eV", "eV"}});
    std::vector<Column> wcols{{"m", "index"}, {"w_e", "1"}};
    for (int n : states.orders) wcols.push_back({"w_" + std::to_string(n), "1"});
    Table wtab(wcols);
    for (Eigen::Index m = 0; m < states.size(); ++m) {
        eig.add_row({double(m + 1), states.dressed_energy(m), states.dressed_width(m)});
        std::vector<double> row{double(m + 1)};
        for (Eigen::Index k = 0; k < wt.cols(); ++k) row.push_back(wt(m, k));
        wtab.add_row(row);
    }
    ojson summary;
    summary["dimension"] = states.size();
    summary["max_condition"] = states.condition.maxCoeff();
    w.write_table("dressed", eig, summary);
    w.write_table("dressed_weights", wtab, ojson::object());

    if (config.dressed_json) {
        auto cvec = [](const Eigen::VectorXcd& v) {
            ojson a = ojson::array();
            for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back({v[i].real(), v[i].imag()});
            return a;
        };
        ojson j;
        j["basis"] = ojson::array({"e,0"});
        for (int n : states.orders) j["basis"].push_back("g,1_" + std::to_string(n));
        j["emitter_energy_ev"] = states.emitter_energy_ev;
        j["states"] = ojson::array();
        for (Eigen::Index m = 0; m < states.size(); ++m) {
            j["states"].push_back({{"m", m + 1},
                                   {"lambda_eV", {states.eigenvalues[m].real(), states.eigenvalues[m].imag()}},
                                   {"right", cvec(states.right.col(m))},
                                   {"left", cvec(states.left.col(m))},
                                   {"condition", states.condition[m]}});
        }
        w.write_text("dressed_vectors.json", j.dump(2) + "\n");
    }
    return {w.files(), describe_files(w.files()), true};
}

CommandResult run_spectrum_near(const RunConfig& config) {
    OutputWriter w(config, Command::spectrum_near);
    const auto grid = config.frequency_grid();
    const auto s = polarization_spectrum(config.emitter(), config.sphere(), grid, config.modes, config.backend,
                                         config.subset());
    Table t({{"omega_eV", "eV"}, {"P", "eV^-2"}});
    for (std::size_t i = 0; i < s.abscissa.size(); ++i) t.add_row({s.abscissa[i], s.values[i]});
    ojson summary = spectrum_settings(s);
    const auto maxima = find_local_maxima(s.abscissa, s.values);
    summary["local_maxima"] = peaks_json(maxima);
    std::ostringstream rep;
    if (maxima.size() >= 2) {
        const auto top = two_highest_peaks(s.abscissa, s.values);
        summary["splitting_eV"] = top[1].position - top[0].position;
        rep << "peak splitting " << format_number(top[1].position - top[0].position) << " eV\n";
    }
    w.write_table("spectrum_near", t, summary);
    return {w.files(), describe_files(w.files()) + rep.str(), true};
}

CommandResult run_spectrum_far(const RunConfig& config) {
    OutputWriter w(config, Command::spectrum_far);
    const auto grid = config.frequency_grid();
    const auto s = far_spectrum(config.emitter(), config.sphere(), config.detector(), grid, config.modes,
                                config.projection, config.backend);
    Table t({{"omega_eV", "eV"}, {"S", "1"}});
    for (std::size_t i = 0; i < s.abscissa.size(); ++i) t.add_row({s.abscissa[i], s.values[i]});
    ojson summary = spectrum_settings(s);
    summary["local_maxima"] = peaks_json(find_local_maxima(s.abscissa, s.values));
    w.write_table("spectrum_far", t, summary);
    return {w.files(), describe_files(w.files()), true};
}

CommandResult run_pattern(const RunConfig& config) {
    OutputWriter w(config, Command::pattern);
    const auto theta = config.theta_grid();
    const auto s = radiation_pattern(config.emitter(), config.sphere(), config.pattern_energy_ev, theta,
                                     config.pattern_r_nm, config.modes, config.projection);
    Table t({{"theta_rad", "rad"}, {"S_normalized", "1"}});
    for (std::size_t i = 0; i < s.abscissa.size(); ++i) t.add_row({s.abscissa[i], s.values[i]});
    ojson summary = spectrum_settings(s);
    const double a = forward_asymmetry(s);
    summary["asymmetry"] = a;
    w.write_table("pattern", t, summary);
    return {w.files(), describe_files(w.files()) + "forward/backward asymmetry " + format_number(a) + "\n", true};
}

CommandResult run_dynamics(const RunConfig& config) {
    OutputWriter w(config, Command::dynamics);
    std::string method;
    const auto trace = compute_trace(config, &method);

    std::vector<Column> cols{{"t_fs", "fs"}, {"Pe", "1"}};
    for (int n : trace.orders) cols.push_back({"P" + std::to_string(n), "1"});
    cols.push_back({"norm", "1"});
    Table t(cols);
    for (std::size_t i = 0; i < trace.time_fs.size(); ++i) {
        std::vector<double> row{trace.time_fs[i], trace.emitter[i]};
        for (const auto& m : trace.modes) row.push_back(m[i]);
        row.push_back(trace.norm[i]);
        t.add_row(row);
    }
    ojson summary;
    summary["method"] = method;
    ojson ranking = ojson::array();
    for (const auto& r : dominant_mode_report(trace)) {
        ranking.push_back({{"order", r.order},
                           {"integrated_fs", r.integrated_fs},
                           {"peak_population", r.peak_population},
                           {"peak_time_fs", r.peak_time_fs}});
    }
    summary["mode_ranking"] = ranking;
    try {
        summary["oscillation_period_fs"] = oscillation_period(trace);
    } catch (const NumericalError&) {
        summary["oscillation_period_fs"] = nullptr;
    }
    try {
        const auto fit = fit_initial_decay(trace);
        summary["initial_decay"] = {{"rate_per_fs", fit.rate_per_fs},
                                    {"r_squared", fit.r_squared},
                                    {"window_end_fs", fit.window_end_fs}};
    } catch (const NumericalError&) {
        summary["initial_decay"] = nullptr;
    }
    summary["golden_rule_rate_per_fs"] = golden_rule_rate(config.emitter(), config.sphere(), config.modes, config.backend);
    w.write_table("dynamics", t, summary);
    return {w.files(), describe_files(w.files()), true};
}

CommandResult run_validate(const RunConfig& config) {
    OutputWriter w(config, Command::validate);
    const auto checks = run_property_suite(config);
    Table t({{"check", "index"}, {"value", "1"}, {"tolerance", "1"}, {"passed", "index"}});
    ojson names = ojson::array();
    bool all = true;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        t.add_row({double(i + 1), checks[i].value, checks[i].tolerance, checks[i].passed ? 1.0 : 0.0});
        names.push_back({{"check", i + 1}, {"name", checks[i].name}, {"detail", checks[i].detail}});
        all = all && checks[i].passed;
    }
    ojson summary;
    summary["checks"] = names;
    summary["all_passed"] = all;
    w.write_table("validation", t, summary);
    return {w.files(), format_check_table(checks), all};
}

} // namespace

std::vector<ModeParams> compute_modes(const RunConfig& config) {
    const auto grid = config.frequency_grid();
    return mode_table(config.emitter(), config.sphere(), config.modes, grid, config.backend);
}

std::vector<ModeParams> selected_modes(const RunConfig& config, const std::vector<ModeParams>& all) {
    if (config.mode_subset.empty()) return all;
    std::vector<ModeParams> out;
    for (int n : config.mode_subset) out.push_back(all.at(static_cast<std::size_t>(n - 1)));
    return out;
}

PopulationTrace compute_trace(const RunConfig& config, std::string* method) {
    const auto modes = selected_modes(config, compute_modes(config));
    const auto h = build_h_eff(config.emitter(), modes);
    const auto times = config.time_grid();
    try {
        const auto states = diagonalize(h);
        if (states.condition.maxCoeff() <= 1e6) {
            if (method) *method = "eigen";
            return populations_eigen(states, times);
        }
    } catch (const NumericalError&) {
    }
    if (method) *method = "propagate";
    return populations_propagate(h, times);
}

std::string format_number(double value) {
    std::array<char, 40> buf{};
    std::snprintf(buf.data(), buf.size(), "%.16e", value);
    return buf.data();
}

const char* version_string() noexcept { return PLASMON_VERSION_STRING; }

std::optional<Command> parse_command(const std::string& name) {
    static const std::pair<const char*, Command> table[] = {
        {"modes", Command::modes},           {"dressed", Command::dressed},   {"spectrum-near", Command::spectrum_near},
        {"spectrum-far", Command::spectrum_far}, {"pattern", Command::pattern}, {"dynamics", Command::dynamics},
        {"validate", Command::validate},
    };
    for (const auto& [key, cmd] : table) {
        if (name == key) return cmd;
    }
    return std::nullopt;
}

const char* to_string(Command command) noexcept {
    switch (command) {
    case Command::modes: return "modes";
    case Command::dressed: return "dressed";
    case Command::spectrum_near: return "spectrum-near";
    case Command::spectrum_far: return "spectrum-far";
    case Command::pattern: return "pattern";
    case Command::dynamics: return "dynamics";
    case Command::validate: return "validate";
    }
    return "unknown";
}

CommandResult run_command(const RunConfig& config, Command command) {
    config.validate();
    switch (command) {
    case Command::modes: return run_modes(config);
    case Command::dressed: return run_dressed(config);
    case Command::spectrum_near: return run_spectrum_near(config);
    case Command::spectrum_far: return run_spectrum_far(config);
    case Command::pattern: return run_pattern(config);
    case Command::dynamics: return run_dynamics(config);
    case Command::validate: return run_validate(config);
    }
    throw ConfigError("unknown command");
}

} // namespace plasmon
