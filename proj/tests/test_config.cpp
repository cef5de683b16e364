#include "doctest.h"

#include "plasmon/config.hpp"
#include "plasmon/errors.hpp"

#include "json.hpp"

#include <string>

using namespace plasmon;

TEST_CASE("empty document gives the reference configuration") {
    const auto c = parse_config("");
    CHECK(c.radius_nm == 8.0);
    CHECK(c.gap_nm == 2.0);
    CHECK(c.emitter_energy_ev == 2.94);
    CHECK(c.dipole_debye == 24.0);
    CHECK(c.modes == 25);
    CHECK(c.backend == GreensBackend::mie);
    CHECK(c.detector_r_nm == 1000.0);
    CHECK(c.detector_theta_rad == doctest::Approx(constants::pi / 2));
    CHECK(c.drude.plasma_energy_ev == 7.90);
    CHECK(c.emitter().geometry.center_distance_nm == 10.0);
    CHECK(c.time_grid().size() == 2000);
    CHECK_FALSE(c.subset().has_value());
}

TEST_CASE("keys, comments and quoting") {
    const auto c = parse_config(
        "# weak coupling\n"
        "dipole = 6   # debye\n"
        "backend = quasistatic\n"
        "mode_subset = 3, 2, 3\n"
        "output_dir = \"out dir\"\n"
        "\n");
    CHECK(c.dipole_debye == 6.0);
    CHECK(c.backend == GreensBackend::quasistatic);
    CHECK(c.mode_subset == std::vector<int>{2, 3});
    CHECK(c.output_dir == "out dir");
}

TEST_CASE("field-level errors") {
    try {
        parse_config("radius = -1\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()) == "radius must be > 0");
    }
    CHECK_THROWS_AS(parse_config("colour = blue\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("radius 8\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("radius = eight\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("modes = 2.5\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("backend = fdtd\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("mode_subset = 30\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("theta_points = 360\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("detector_r = 9\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("pattern_r = 50\n"), ConfigError);
}

TEST_CASE("material preset and explicit Drude keys") {
    const auto a = parse_config("material = silver-drude\neps_inf = 5\n");
    CHECK(a.drude.eps_inf == 5.0);
    CHECK(a.drude.plasma_energy_ev == 7.90);
    const auto b = parse_config("material = custom\nplasma_energy = 9.0\ndamping = 0.1\n");
    CHECK(b.drude.plasma_energy_ev == 9.0);
    CHECK(b.drude.damping_ev == 0.1);
    CHECK_THROWS_AS(parse_config("material = gold\n"), ConfigError);
}

TEST_CASE("overrides win over the document") {
    ConfigDocument doc;
    doc.merge_text("dipole = 24\nradius = 20\n");
    doc.set_assignment("dipole=6");
    doc.set("radius", "8");
    const auto c = doc.resolve();
    CHECK(c.dipole_debye == 6.0);
    CHECK(c.radius_nm == 8.0);
    CHECK_THROWS_AS(doc.set_assignment("dipole"), ConfigError);
    CHECK_THROWS_AS(doc.set("nope", "1"), ConfigError);
}

TEST_CASE("resolved configuration echoes every key") {
    const auto j = nlohmann::json::parse(config_to_json(parse_config("dipole = 6\n")));
    for (const auto& k : config_keys()) CHECK_MESSAGE(j.contains(k), k);
    CHECK(j["dipole"] == 6.0);
    CHECK(j["backend"] == "mie");
    CHECK(config_to_json(parse_config("")) == config_to_json(parse_config("")));
}
