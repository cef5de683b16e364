#include "plasmon/config.hpp"

#include "plasmon/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace plasmon {

namespace {

const std::vector<std::string> kKeys = {
    "material",      "eps_inf",        "plasma_energy", "damping",        "eps_background", "radius",
    "gap",           "emitter_energy", "dipole",        "emitter_linewidth", "modes",       "backend",
    "freq_min",      "freq_max",       "freq_points",   "time_max",       "time_points",    "theta_points",
    "detector_r",    "detector_theta", "pattern_energy", "pattern_r",     "mode_subset",    "projection",
    "output_dir",    "dressed_json",
};

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::string unquote(std::string v) {
    if (v.size() >= 2 && ((v.front() == '"' && v.back() == '"') || (v.front() == '\'' && v.back() == '\''))) {
        return v.substr(1, v.size() - 2);
    }
    return v;
}

void require_known(const std::string& key) {
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
        throw ConfigError("unknown configuration key '" + key + "'");
    }
}

double as_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    const auto* first = v.data();
    const auto* last = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last || !std::isfinite(out)) {
        throw ConfigError(key + ": '" + v + "' is not a finite number");
    }
    return out;
}

int as_int(const std::string& key, const std::string& v) {
    int out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) throw ConfigError(key + ": '" + v + "' is not an integer");
    return out;
}

bool as_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(key + ": '" + v + "' is not a boolean");
}

std::vector<int> as_orders(const std::string& key, const std::string& v) {
    std::vector<int> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(as_int(key, item));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void check(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

} // namespace

const std::vector<std::string>& config_keys() { return kKeys; }

SphereSystem RunConfig::sphere() const { return {radius_nm, drude, eps_background}; }

EmitterParams RunConfig::emitter() const {
    return {emitter_energy_ev, dipole_debye, emitter_linewidth_ev, EmitterGeometry{radius_nm + gap_nm}};
}

std::vector<double> RunConfig::frequency_grid() const {
    return linear_grid(freq_min_ev, freq_max_ev, static_cast<std::size_t>(freq_points));
}

std::vector<double> RunConfig::time_grid() const {
    return linear_grid(0.0, time_max_fs, static_cast<std::size_t>(time_points));
}

std::vector<double> RunConfig::theta_grid() const {
    return linear_grid(0.0, constants::pi, static_cast<std::size_t>(theta_points));
}

DetectorPosition RunConfig::detector() const { return {detector_r_nm, detector_theta_rad}; }

std::optional<std::vector<int>> RunConfig::subset() const {
    if (mode_subset.empty()) return std::nullopt;
    return mode_subset;
}

void RunConfig::validate() const {
    check(material == "silver-drude" || material == "custom", "material must be 'silver-drude' or 'custom'");
    check(drude.eps_inf >= 1.0, "eps_inf must be >= 1");
    check(drude.plasma_energy_ev > 0.0, "plasma_energy must be > 0");
    check(drude.damping_ev > 0.0, "damping must be > 0");
    check(eps_background >= 1.0, "eps_background must be >= 1");
    check(radius_nm > 0.0, "radius must be > 0");
    check(gap_nm > 0.0, "gap must be > 0 (emitter outside the sphere)");
    check(emitter_energy_ev > 0.0, "emitter_energy must be > 0");
    check(dipole_debye > 0.0, "dipole must be > 0");
    check(emitter_linewidth_ev >= 0.0, "emitter_linewidth must be >= 0");
    check(modes >= 1 && modes <= 200, "modes must be in [1, 200]");
    check(freq_min_ev > 0.0, "freq_min must be > 0");
    check(freq_max_ev > freq_min_ev, "freq_max must be > freq_min");
    check(freq_points >= 3, "freq_points must be >= 3");
    check(time_max_fs > 0.0, "time_max must be > 0");
    check(time_points >= 2, "time_points must be >= 2");
    check(theta_points >= 3 && theta_points % 2 == 1, "theta_points must be odd and >= 3");
    check(detector_r_nm > radius_nm + gap_nm, "detector_r must exceed radius + gap");
    check(detector_theta_rad >= 0.0 && detector_theta_rad <= constants::pi, "detector_theta must be in [0, pi]");
    check(pattern_energy_ev > 0.0, "pattern_energy must be > 0");
    check(pattern_r_nm > radius_nm + gap_nm, "pattern_r must exceed radius + gap");
    check(std::sqrt(eps_background) * vacuum_wavenumber(pattern_energy_ev) * pattern_r_nm > 10.0,
          "pattern_r must be in the far zone (k r > 10)");
    for (int n : mode_subset) check(n >= 1 && n <= modes, "mode_subset orders must lie in [1, modes]");
    check(!output_dir.empty(), "output_dir must not be empty");
}

void ConfigDocument::merge_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        }
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = unquote(trim(std::string_view(body).substr(eq + 1)));
        if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        set(key, value);
    }
}

void ConfigDocument::set(const std::string& key, const std::string& value) {
    require_known(key);
    entries_[key] = value;
}

void ConfigDocument::set_assignment(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ConfigError("override '" + assignment + "' must have the form key=value");
    set(trim(std::string_view(assignment).substr(0, eq)), unquote(trim(std::string_view(assignment).substr(eq + 1))));
}

RunConfig ConfigDocument::resolve() const {
    RunConfig c;
    auto get = [&](const char* key) -> const std::string* {
        auto it = entries_.find(key);
        return it == entries_.end() ? nullptr : &it->second;
    };
    if (auto v = get("material")) {
        c.material = *v;
        if (*v == "silver-drude") c.drude = DrudeMaterial::silver();
        else if (*v != "custom") throw ConfigError("material must be 'silver-drude' or 'custom'");
    }
    auto number = [&](const char* key, double& slot) { if (auto v = get(key)) slot = as_double(key, *v); };
    auto integer = [&](const char* key, int& slot) { if (auto v = get(key)) slot = as_int(key, *v); };
    number("eps_inf", c.drude.eps_inf);
    number("plasma_energy", c.drude.plasma_energy_ev);
    number("damping", c.drude.damping_ev);
    number("eps_background", c.eps_background);
    number("radius", c.radius_nm);
    number("gap", c.gap_nm);
    number("emitter_energy", c.emitter_energy_ev);
    number("dipole", c.dipole_debye);
    number("emitter_linewidth", c.emitter_linewidth_ev);
    integer("modes", c.modes);
    if (auto v = get("backend")) {
        if (*v == "mie") c.backend = GreensBackend::mie;
        else if (*v == "quasistatic") c.backend = GreensBackend::quasistatic;
        else throw ConfigError("backend must be 'mie' or 'quasistatic'");
    }
    number("freq_min", c.freq_min_ev);
    number("freq_max", c.freq_max_ev);
    integer("freq_points", c.freq_points);
    number("time_max", c.time_max_fs);
    integer("time_points", c.time_points);
    integer("theta_points", c.theta_points);
    number("detector_r", c.detector_r_nm);
    number("detector_theta", c.detector_theta_rad);
    number("pattern_energy", c.pattern_energy_ev);
    number("pattern_r", c.pattern_r_nm);
    if (auto v = get("mode_subset")) c.mode_subset = as_orders("mode_subset", *v);
    if (auto v = get("projection")) {
        if (*v == "vector") c.projection = Projection::vector;
        else if (*v == "scalar") c.projection = Projection::scalar;
        else throw ConfigError("projection must be 'vector' or 'scalar'");
    }
    if (auto v = get("output_dir")) c.output_dir = *v;
    if (auto v = get("dressed_json")) c.dressed_json = as_bool("dressed_json", *v);
    c.validate();
    return c;
}

RunConfig parse_config(const std::string& text) {
    ConfigDocument doc;
    doc.merge_text(text);
    return doc.resolve();
}

std::string config_to_json(const RunConfig& c) {
    nlohmann::json j;
    j["material"] = c.material;
    j["eps_inf"] = c.drude.eps_inf;
    j["plasma_energy"] = c.drude.plasma_energy_ev;
    j["damping"] = c.drude.damping_ev;
    j["eps_background"] = c.eps_background;
    j["radius"] = c.radius_nm;
    j["gap"] = c.gap_nm;
    j["emitter_energy"] = c.emitter_energy_ev;
    j["dipole"] = c.dipole_debye;
    j["emitter_linewidth"] = c.emitter_linewidth_ev;
    j["modes"] = c.modes;
    j["backend"] = to_string(c.backend);
    j["freq_min"] = c.freq_min_ev;
    j["freq_max"] = c.freq_max_ev;
    j["freq_points"] = c.freq_points;
    j["time_max"] = c.time_max_fs;
    j["time_points"] = c.time_points;
    j["theta_points"] = c.theta_points;
    j["detector_r"] = c.detector_r_nm;
    j["detector_theta"] = c.detector_theta_rad;
    j["pattern_energy"] = c.pattern_energy_ev;
    j["pattern_r"] = c.pattern_r_nm;
    j["mode_subset"] = c.mode_subset;
    j["projection"] = to_string(c.projection);
    j["output_dir"] = c.output_dir;
    j["dressed_json"] = c.dressed_json;
    j["units"] = {{"energy", "eV"}, {"length", "nm"}, {"time", "fs"}, {"angle", "rad"}, {"dipole", "D"}};
    return j.dump(2);
}

} // namespace plasmon
