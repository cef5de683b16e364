// plasmon: command-line front end. Talks to the library only through the C API.

#include "plasmon/plasmon.h"

#include "CLI11.hpp"

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

int exit_code(plasmon_status status) {
    switch (status) {
    case PLASMON_OK: return 0;
    case PLASMON_ERR_CONFIG:
    case PLASMON_ERR_DOMAIN:
    case PLASMON_ERR_GEOMETRY:
    case PLASMON_ERR_INVALID_ARGUMENT: return 2;
    case PLASMON_ERR_NUMERICAL:
    case PLASMON_VALIDATION_FAILED: return 3;
    default: return 1;
    }
}

int fail(plasmon_status status) {
    std::cerr << plasmon_last_error_json() << "\n";
    return exit_code(status);
}

std::string exact(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct ConfigDeleter {
    void operator()(plasmon_config* c) const { plasmon_config_free(c); }
};

struct Overrides {
    std::string config_path;
    std::string out_dir;
    std::vector<std::string> sets;
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Emitter / metal-nanosphere strong-coupling simulator"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", plasmon_version());

    Overrides opt;
    if (const char* env = std::getenv("PLASMON_CONFIG")) opt.config_path = env;
    app.add_option("--config", opt.config_path, "configuration file (default: $PLASMON_CONFIG)");
    app.add_option("--out", opt.out_dir, "output directory (overrides output_dir)");
    app.add_option("--set", opt.sets, "override one configuration key, key=value")->take_all()->allow_extra_args(false);

    std::string command;
    std::vector<std::string> extra;  // subcommand-specific overrides, applied after --set

    auto simple = [&](const char* name, const char* help) {
        app.add_subcommand(name, help)->callback([&, name] { command = name; });
    };
    simple("modes", "Lorentzian pseudomode table (modes.csv)");
    simple("dressed", "dressed-state energies and weights (dressed.csv, dressed_weights.csv)");
    simple("dynamics", "emitter and mode populations after excitation (dynamics.csv)");
    simple("validate", "property suite; exits 3 when a check fails");
    simple("show-config", "print the resolved configuration as JSON");

    std::string subset;
    double far_r = 0.0, far_theta = -1.0, pattern_energy = 0.0, pattern_r = 0.0;

    auto add_near = [&](CLI::App* sc) {
        sc->add_option("--modes", subset, "comma-separated multipole orders to keep");
        sc->callback([&] {
            command = "spectrum-near";
            if (!subset.empty()) extra.push_back("mode_subset=" + subset);
        });
    };
    auto add_far = [&](CLI::App* sc) {
        sc->add_option("--r", far_r, "detector distance from the sphere centre (nm)");
        sc->add_option("--theta", far_theta, "detector polar angle (rad)");
        sc->callback([&] {
            command = "spectrum-far";
            if (far_r > 0.0) extra.push_back("detector_r=" + exact(far_r));
            if (far_theta >= 0.0) extra.push_back("detector_theta=" + exact(far_theta));
        });
    };
    auto* spectrum = app.add_subcommand("spectrum", "near- or far-field emission spectrum");
    spectrum->require_subcommand(1);
    add_near(spectrum->add_subcommand("near", "near-field polarization spectrum P(omega)"));
    add_far(spectrum->add_subcommand("far", "detector spectrum S(omega)"));
    add_near(app.add_subcommand("spectrum-near", "same as `spectrum near`"));
    add_far(app.add_subcommand("spectrum-far", "same as `spectrum far`"));

    auto* pattern = app.add_subcommand("pattern", "angular radiation pattern at fixed energy");
    pattern->add_option("--energy-ev", pattern_energy, "photon energy (eV)");
    pattern->add_option("--r", pattern_r, "evaluation radius (nm)");
    pattern->callback([&] {
        command = "pattern";
        if (pattern_energy > 0.0) extra.push_back("pattern_energy=" + exact(pattern_energy));
        if (pattern_r > 0.0) extra.push_back("pattern_r=" + exact(pattern_r));
    });

    CLI11_PARSE(app, argc, argv);

    plasmon_config* raw = nullptr;
    if (auto s = plasmon_config_new(&raw); s != PLASMON_OK) return fail(s);
    std::unique_ptr<plasmon_config, ConfigDeleter> cfg(raw);

    if (!opt.config_path.empty()) {
        if (auto s = plasmon_config_load_file(cfg.get(), opt.config_path.c_str()); s != PLASMON_OK) return fail(s);
    }
    for (const auto& a : opt.sets) {
        if (auto s = plasmon_config_set_assignment(cfg.get(), a.c_str()); s != PLASMON_OK) return fail(s);
    }
    for (const auto& a : extra) {
        if (auto s = plasmon_config_set_assignment(cfg.get(), a.c_str()); s != PLASMON_OK) return fail(s);
    }

    if (command == "show-config") {
        char* json = nullptr;
        if (auto s = plasmon_config_to_json(cfg.get(), &json); s != PLASMON_OK) return fail(s);
        std::cout << json << "\n";
        plasmon_string_free(json);
        return 0;
    }

    char* report = nullptr;
    const auto status = plasmon_run(cfg.get(), command.c_str(), opt.out_dir.empty() ? nullptr : opt.out_dir.c_str(),
                                    &report);
    if (report) {
        std::cout << report;
        plasmon_string_free(report);
    }
    if (status != PLASMON_OK) return fail(status);
    return 0;
}
