#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "plasmon/plasmon.h"

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

namespace {

struct Config {
    plasmon_config* ptr = nullptr;
    Config() { REQUIRE(plasmon_config_new(&ptr) == PLASMON_OK); }
    ~Config() { plasmon_config_free(ptr); }
};

} // namespace

TEST_CASE("version and null handling") {
    CHECK(std::strlen(plasmon_version()) > 0);
    CHECK(plasmon_config_new(nullptr) == PLASMON_ERR_INVALID_ARGUMENT);
    CHECK(std::string(plasmon_last_error_json()).find("invalid_argument") != std::string::npos);
    CHECK(plasmon_modes_count(nullptr) == 0);
    plasmon_config_free(nullptr);
}

TEST_CASE("configuration errors carry status and JSON") {
    Config c;
    CHECK(plasmon_config_parse(c.ptr, "radius = -1\n") == PLASMON_OK);
    char* json = nullptr;
    CHECK(plasmon_config_to_json(c.ptr, &json) == PLASMON_ERR_CONFIG);
    CHECK(json == nullptr);
    CHECK(std::string(plasmon_last_error()) == "radius must be > 0");
    CHECK(std::string(plasmon_last_error_json()).find("\"kind\":\"config\"") != std::string::npos);
    CHECK(plasmon_config_set(c.ptr, "bogus", "1") == PLASMON_ERR_CONFIG);
    CHECK(plasmon_config_load_file(c.ptr, "/nonexistent/plasmon.cfg") == PLASMON_ERR_CONFIG);
}

TEST_CASE("resolved configuration JSON") {
    Config c;
    REQUIRE(plasmon_config_set_assignment(c.ptr, "dipole=6") == PLASMON_OK);
    char* json = nullptr;
    REQUIRE(plasmon_config_to_json(c.ptr, &json) == PLASMON_OK);
    const std::string s(json);
    plasmon_string_free(json);
    CHECK(s.find("\"dipole\": 6.0") != std::string::npos);
}

TEST_CASE("primitives") {
    double re = 0, im = 0;
    REQUIRE(plasmon_drude_permittivity(6.0, 7.9, 0.051, 2.92, &re, &im) == PLASMON_OK);
    CHECK(re == doctest::Approx(-1.32).epsilon(0.01));
    CHECK(im > 0.0);
    CHECK(plasmon_drude_permittivity(6.0, 7.9, 0.051, 0.0, &re, &im) == PLASMON_ERR_DOMAIN);
    double si = 0;
    REQUIRE(plasmon_debye_to_si(24.0, &si) == PLASMON_OK);
    CHECK(si == doctest::Approx(24.0 * 3.33564e-30));
    CHECK(plasmon_debye_to_si(-1.0, &si) == PLASMON_ERR_DOMAIN);
}

TEST_CASE("modes, dressed states and dynamics through handles") {
    Config c;
    REQUIRE(plasmon_config_parse(c.ptr, "modes = 6\nfreq_points = 2801\ntime_points = 400\n") == PLASMON_OK);

    plasmon_modes* modes = nullptr;
    REQUIRE(plasmon_compute_modes(c.ptr, &modes) == PLASMON_OK);
    REQUIRE(plasmon_modes_count(modes) == 6);
    int order = 0;
    double w = 0, gamma = 0, g = 0, res = 0;
    REQUIRE(plasmon_modes_get(modes, 2, &order, &w, &gamma, &g, &res) == PLASMON_OK);
    CHECK(order == 3);
    CHECK(w == doctest::Approx(2.9168).epsilon(1e-3));
    CHECK(g == doctest::Approx(0.0237).epsilon(0.01));
    CHECK(plasmon_modes_get(modes, 6, &order, &w, &gamma, &g, &res) == PLASMON_ERR_INVALID_ARGUMENT);
    plasmon_modes_free(modes);

    plasmon_dressed* dressed = nullptr;
    REQUIRE(plasmon_compute_dressed(c.ptr, &dressed) == PLASMON_OK);
    REQUIRE(plasmon_dressed_count(dressed) == 7);
    double sum = 0.0;
    for (size_t k = 0; k < 7; ++k) {
        double v = 0.0;
        REQUIRE(plasmon_dressed_weight(dressed, 0, k, &v) == PLASMON_OK);
        sum += v;
    }
    CHECK(sum == doctest::Approx(1.0));
    plasmon_dressed_free(dressed);

    plasmon_trace* trace = nullptr;
    REQUIRE(plasmon_compute_dynamics(c.ptr, &trace) == PLASMON_OK);
    REQUIRE(plasmon_trace_length(trace) == 400);
    REQUIRE(plasmon_trace_mode_count(trace) == 6);
    std::vector<double> pops(6);
    double t = -1, pe = 0, norm = 0;
    REQUIRE(plasmon_trace_get(trace, 0, &t, &pe, pops.data(), &norm) == PLASMON_OK);
    CHECK(t == 0.0);
    CHECK(pe == doctest::Approx(1.0));
    plasmon_trace_free(trace);
}

TEST_CASE("spectra through handles") {
    Config c;
    REQUIRE(plasmon_config_parse(c.ptr, "modes = 10\nfreq_points = 701\ntheta_points = 91\n") == PLASMON_OK);
    plasmon_spectrum* s = nullptr;
    REQUIRE(plasmon_compute_spectrum(c.ptr, "near", &s) == PLASMON_OK);
    CHECK(plasmon_spectrum_length(s) == 701);
    double a = 0;
    CHECK(plasmon_spectrum_asymmetry(s, &a) == PLASMON_ERR_INVALID_ARGUMENT);
    plasmon_spectrum_free(s);
    REQUIRE(plasmon_compute_spectrum(c.ptr, "pattern", &s) == PLASMON_OK);
    CHECK(plasmon_spectrum_length(s) == 91);
    REQUIRE(plasmon_spectrum_asymmetry(s, &a) == PLASMON_OK);
    CHECK(std::abs(a) < 1.0);
    plasmon_spectrum_free(s);
    CHECK(plasmon_compute_spectrum(c.ptr, "sideways", &s) == PLASMON_ERR_CONFIG);
}

TEST_CASE("run rejects unknown commands") {
    Config c;
    CHECK(plasmon_run(c.ptr, "plot", nullptr, nullptr) == PLASMON_ERR_CONFIG);
}
