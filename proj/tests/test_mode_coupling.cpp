#include "doctest.h"

#include "plasmon/errors.hpp"
#include "plasmon/mode_coupling.hpp"

#include <cmath>

using namespace plasmon;

namespace {

const SphereSystem kSilver8{8.0, DrudeMaterial::silver(), 1.0};

EmitterParams reference_emitter(double gap = 2.0, double d = 24.0) {
    EmitterParams e;
    e.dipole_debye = d;
    e.geometry = EmitterGeometry{8.0 + gap};
    return e;
}

const std::vector<double>& reference_grid() {
    static const auto g = linear_grid(2.0, 3.4, 14001);
    return g;
}

} // namespace

TEST_CASE("Lorentzian density peak identity") {
    const ModeParams m{1, 2.9, 0.05, 0.02, {}};
    const double peak = lorentzian_density(m, 2.9);
    CHECK(peak == doctest::Approx(2.0 * m.coupling_ev * m.coupling_ev / (constants::pi * m.width_ev)));
    CHECK(lorentzian_density(m, 2.925) == doctest::Approx(0.5 * peak));
}

TEST_CASE("synthetic Lorentzian is recovered exactly") {
    const ModeParams truth{4, 2.91, 0.047, 0.0213, {}};
    CouplingDensity d;
    d.order = 4;
    d.energy_ev = linear_grid(2.3, 3.5, 6001);
    for (double e : d.energy_ev) d.values_ev.push_back(lorentzian_density(truth, e));
    const auto fit = extract_mode_params(d);
    CHECK(fit.order == 4);
    CHECK(fit.energy_ev == doctest::Approx(truth.energy_ev).epsilon(1e-9));
    CHECK(fit.width_ev == doctest::Approx(truth.width_ev).epsilon(1e-7));
    CHECK(fit.coupling_ev == doctest::Approx(truth.coupling_ev).epsilon(1e-7));
    CHECK(fit.fit.residual < 1e-8);
    CHECK_FALSE(fit.fit.non_lorentzian);

    const auto again = extract_mode_params(d);
    CHECK(again.energy_ev == fit.energy_ev);
    CHECK(again.coupling_ev == fit.coupling_ev);
}

TEST_CASE("peak on the grid boundary is rejected") {
    const auto grid = linear_grid(2.0, 2.6, 601);
    const auto d = coupling_density(reference_emitter(), kSilver8, 1, grid);
    CHECK_THROWS_AS(extract_mode_params(d), NumericalError);
}

TEST_CASE("density scales as d^2 and g as d") {
    const auto grid = linear_grid(2.6, 3.1, 501);
    const auto a = coupling_density(reference_emitter(2.0, 24.0), kSilver8, 2, grid);
    const auto b = coupling_density(reference_emitter(2.0, 12.0), kSilver8, 2, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(b.values_ev[i] == doctest::Approx(a.values_ev[i] / 4.0).epsilon(1e-13));
    const auto ma = extract_mode_params(a);
    const auto mb = extract_mode_params(b);
    CHECK(mb.coupling_ev == doctest::Approx(0.5 * ma.coupling_ev).epsilon(1e-9));
    CHECK(mb.energy_ev == doctest::Approx(ma.energy_ev).epsilon(1e-12));
}

TEST_CASE("reference mode table (retarded backend)") {
    // Pseudomode parameters of the R = 8 nm silver sphere, gap 2 nm, d = 24 D.
    struct Ref {
        int n;
        double energy, width, coupling;
    };
    const Ref ref[] = {
        {1, 2.7875264457, 0.0518180877, 0.0199141534}, {2, 2.8836187030, 0.0509639829, 0.0226616728},
        {3, 2.9167734030, 0.0509833809, 0.0237063516}, {4, 2.9336673690, 0.0509896083, 0.0234633392},
        {5, 2.9439150364, 0.0509923442, 0.0223812407}, {6, 2.9507952274, 0.0509937907, 0.0207983317},
    };
    const auto table = mode_table(reference_emitter(), kSilver8, 25, reference_grid());
    REQUIRE(table.size() == 25);
    for (const auto& r : ref) {
        const auto& m = table[static_cast<std::size_t>(r.n - 1)];
        CHECK(m.order == r.n);
        CHECK(m.energy_ev == doctest::Approx(r.energy).epsilon(1e-4));
        CHECK(m.width_ev == doctest::Approx(r.width).epsilon(2e-3));
        CHECK(m.coupling_ev == doctest::Approx(r.coupling).epsilon(2e-3));
    }
    for (std::size_t i = 1; i < table.size(); ++i) CHECK(table[i].energy_ev > table[i - 1].energy_ev);
    for (const auto& m : table) CHECK(m.energy_ev < 7.90 / std::sqrt(7.0));
}

TEST_CASE("quasi-static mode energies follow the Drude pole formula") {
    const auto table = mode_table(reference_emitter(), kSilver8, 6, reference_grid(), GreensBackend::quasistatic);
    for (const auto& m : table) {
        const double pole = 7.90 / std::sqrt(6.0 + (m.order + 1.0) / m.order);
        CHECK(m.energy_ev == doctest::Approx(pole).epsilon(2e-4));
        CHECK(m.width_ev == doctest::Approx(0.051).epsilon(1e-3));
    }
}

TEST_CASE("coupling grows as the gap shrinks") {
    const auto g1 = mode_table(reference_emitter(1.0), kSilver8, 3, reference_grid());
    const auto g2 = mode_table(reference_emitter(2.0), kSilver8, 3, reference_grid());
    const auto g4 = mode_table(reference_emitter(4.0), kSilver8, 3, reference_grid());
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(g1[i].coupling_ev > g2[i].coupling_ev);
        CHECK(g2[i].coupling_ev > g4[i].coupling_ev);
    }
}

TEST_CASE("Lorentzian sum rule") {
    const auto table = mode_table(reference_emitter(), kSilver8, 4, reference_grid());
    for (const auto& m : table) {
        const auto grid = linear_grid(m.energy_ev - 20.0 * m.width_ev, m.energy_ev + 20.0 * m.width_ev, 8001);
        const auto d = coupling_density(reference_emitter(), kSilver8, m.order, grid);
        double s = 0.0;
        for (std::size_t i = 1; i < grid.size(); ++i) s += 0.5 * (grid[i] - grid[i - 1]) * (d.values_ev[i] + d.values_ev[i - 1]);
        CHECK(s == doctest::Approx(m.coupling_ev * m.coupling_ev).epsilon(0.05));
    }
}

TEST_CASE("emitter validation") {
    auto e = reference_emitter();
    e.dipole_debye = -1.0;
    CHECK_THROWS(e.validate());
    e = reference_emitter();
    e.linewidth_ev = -0.1;
    CHECK_THROWS(e.validate());
}
