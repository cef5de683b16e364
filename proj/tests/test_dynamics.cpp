#include "doctest.h"

#include "plasmon/dynamics.hpp"
#include "plasmon/errors.hpp"

#include <cmath>

using namespace plasmon;
using constants::hbar_ev_fs;

namespace {

EmitterParams emitter(double w = 2.94, double gd = 0.015) {
    EmitterParams e;
    e.transition_energy_ev = w;
    e.linewidth_ev = gd;
    return e;
}

std::vector<ModeParams> toy_modes() {
    return {ModeParams{1, 2.79, 0.052, 0.020, {}}, ModeParams{2, 2.88, 0.051, 0.023, {}},
            ModeParams{3, 2.917, 0.051, 0.024, {}}, ModeParams{4, 2.934, 0.051, 0.0235, {}}};
}

PopulationTrace synthetic(std::vector<double> pe) {
    PopulationTrace t;
    t.time_fs = linear_grid(0.0, double(pe.size() - 1), pe.size());
    t.emitter = std::move(pe);
    t.norm = t.emitter;
    return t;
}

} // namespace

TEST_CASE("eigen expansion agrees with direct propagation") {
    const auto h = build_h_eff(emitter(), toy_modes());
    const auto times = linear_grid(0.0, 200.0, 2000);
    const auto a = populations_eigen(diagonalize(h), times);
    const auto b = populations_propagate(h, times);
    CHECK(a.emitter[0] == doctest::Approx(1.0).epsilon(1e-12));
    for (const auto& m : a.modes) CHECK(m[0] < 1e-24);
    double dev = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        dev = std::max(dev, std::abs(a.emitter[i] - b.emitter[i]));
        for (std::size_t k = 0; k < a.modes.size(); ++k) dev = std::max(dev, std::abs(a.modes[k][i] - b.modes[k][i]));
    }
    CHECK(dev < 1e-8);
    CHECK(norm_nonincreasing(a));
    CHECK(norm_nonincreasing(b));
    CHECK(a.orders == std::vector<int>{1, 2, 3, 4});
}

TEST_CASE("non-uniform time grids propagate consistently") {
    const auto h = build_h_eff(emitter(), toy_modes());
    const std::vector<double> times{0.0, 0.5, 3.0, 3.1, 40.0, 41.0, 120.0};
    const auto a = populations_eigen(diagonalize(h), times);
    const auto b = populations_propagate(h, times);
    for (std::size_t i = 0; i < times.size(); ++i) CHECK(std::abs(a.emitter[i] - b.emitter[i]) < 1e-10);
}

TEST_CASE("lossless resonant vacuum Rabi oscillation") {
    const double g = 0.02;
    const auto h = build_h_eff(emitter(2.9, 0.0), {ModeParams{1, 2.9, 0.0, g, {}}});
    const auto times = linear_grid(0.0, 300.0, 3001);
    const auto tr = populations_eigen(diagonalize(h), times);
    for (std::size_t i = 0; i < times.size(); i += 37) {
        const double c = std::cos(g * times[i] / hbar_ev_fs);
        CHECK(tr.emitter[i] == doctest::Approx(c * c).epsilon(1e-10));
        CHECK(tr.norm[i] == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(oscillation_period(tr) == doctest::Approx(constants::pi * hbar_ev_fs / g).epsilon(1e-3));
}

TEST_CASE("decay fit recovers an exponential") {
    std::vector<double> pe;
    for (int i = 0; i < 200; ++i) pe.push_back(std::exp(-0.045 * i));
    const auto fit = fit_initial_decay(synthetic(pe));
    CHECK(fit.rate_per_fs == doctest::Approx(0.045).epsilon(1e-10));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.window_end_fs == doctest::Approx(23.0));
}

TEST_CASE("mode ranking") {
    PopulationTrace t;
    t.time_fs = linear_grid(0.0, 10.0, 11);
    t.emitter.assign(11, 0.0);
    t.norm.assign(11, 1.0);
    t.orders = {1, 2, 3};
    t.modes = {std::vector<double>(11, 0.1), std::vector<double>(11, 0.3), std::vector<double>(11, 0.2)};
    t.modes[0][5] = 0.9;  // tall but brief
    const auto by_peak = dominant_mode_report(t);
    REQUIRE(by_peak.size() == 3);
    CHECK(by_peak[0].order == 1);
    CHECK(by_peak[0].peak_population == doctest::Approx(0.9));
    CHECK(by_peak[0].peak_time_fs == doctest::Approx(5.0));
    CHECK(by_peak[1].order == 2);
    const auto r = dominant_mode_report(t, RankBy::integrated);
    CHECK(r[0].order == 2);
    CHECK(r[1].order == 3);
    CHECK(r[2].order == 1);
    CHECK(r[0].integrated_fs == doctest::Approx(3.0));
}

TEST_CASE("golden-rule rate") {
    const SphereSystem s{8.0, DrudeMaterial::silver(), 1.0};
    auto e = emitter();
    e.dipole_debye = 6.0;
    const double im = scattered_Guu(s, e.geometry, e.transition_energy_ev, 25).value.imag();
    const double expected = (e.linewidth_ev + 2.0 * coupling_prefactor(2.94, 6.0) * im) / hbar_ev_fs;
    CHECK(golden_rule_rate(e, s, 25) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(golden_rule_rate(e, s, 25) > e.linewidth_ev / hbar_ev_fs);
}

TEST_CASE("time grid validation and defaults") {
    const auto h = build_h_eff(emitter(), toy_modes());
    CHECK_THROWS(populations_propagate(h, std::vector<double>{}));
    CHECK_THROWS(populations_propagate(h, std::vector<double>{1.0, 0.5}));
    const auto d = default_time_grid();
    CHECK(d.size() == 2000);
    CHECK(d.back() == doctest::Approx(200.0));
}

TEST_CASE("uncoupled emitter decays at its bare rate") {
    const double gd = 0.02;
    const auto h = build_h_eff(emitter(2.9, gd), {ModeParams{1, 2.8, 0.05, 0.0, {}}, ModeParams{2, 2.9, 0.05, 0.0, {}}});
    const auto times = linear_grid(0.0, 100.0, 101);
    const auto tr = populations_propagate(h, times);
    for (std::size_t i = 0; i < times.size(); ++i) {
        CHECK(tr.emitter[i] == doctest::Approx(std::exp(-gd * times[i] / hbar_ev_fs)).epsilon(1e-12));
        for (const auto& m : tr.modes) CHECK(m[i] == 0.0);
    }
}

TEST_CASE("complete Rabi transfer in the lossless resonant case") {
    const double g = 0.025;
    const double quarter = constants::pi * hbar_ev_fs / (2.0 * g);
    const auto h = build_h_eff(emitter(2.9, 0.0), {ModeParams{1, 2.9, 0.0, g, {}}});
    const auto tr = populations_eigen(diagonalize(h), linear_grid(0.0, 2.0 * quarter, 2001));
    const auto r = dominant_mode_report(tr);
    CHECK(r[0].peak_population == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r[0].peak_time_fs == doctest::Approx(quarter).epsilon(1e-9));
}
