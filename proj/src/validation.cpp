#include "plasmon/validation.hpp"

#include "plasmon/commands.hpp"
#include "plasmon/dynamics.hpp"
#include "plasmon/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace plasmon {

namespace {

CheckResult make(std::string name, double value, double tol, std::string detail = {}) {
    CheckResult c;
    c.name = std::move(name);
    c.value = value;
    c.tolerance = tol;
    c.passed = std::isfinite(value) && value < tol;
    c.detail = std::move(detail);
    return c;
}

/// Runs `body`; a thrown plasmon::Error turns into a failed check.
template <class F>
CheckResult guarded(const std::string& name, double tol, F&& body) {
    try {
        return body();
    } catch (const Error& e) {
        CheckResult c = make(name, std::numeric_limits<double>::infinity(), tol, e.what());
        c.passed = false;
        return c;
    }
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
    return s;
}

} // namespace

std::vector<CheckResult> run_property_suite(const RunConfig& config) {
    std::vector<CheckResult> out;
    const auto sphere = config.sphere();
    const auto emitter = config.emitter();

    out.push_back(guarded("kramers_kronig_residual", 0.02, [&] {
        if (config.drude.plasma_energy_ev == 0.0) return make("kramers_kronig_residual", 0.0, 0.02, "omega_p = 0");
        const double top = std::max(400.0, 51.0 * config.drude.plasma_energy_ev);
        const auto grid = geometric_grid(0.1, top, 20000);
        return make("kramers_kronig_residual", kramers_kronig_residual(config.drude, grid), 0.02,
                    "geometric grid 0.1 eV .. " + format_number(top) + " eV, 20000 points");
    }));

    std::vector<ModeParams> modes;
    try {
        modes = mode_table(emitter, sphere, config.modes, config.frequency_grid(), config.backend);
    } catch (const Error& e) {
        out.push_back(make("mode_extraction", std::numeric_limits<double>::infinity(), 0.5, e.what()));
        modes.clear();
    }

    if (!modes.empty()) {
        const auto h = build_h_eff(emitter, modes);
        const Eigen::Index dim = h.dimension();

        out.push_back(guarded("transpose_symmetry", 1e-14, [&] {
            Eigen::VectorXcd d = Eigen::VectorXcd::Ones(dim);
            d[0] = -1.0;
            const Eigen::MatrixXcd dhd = d.asDiagonal() * h.matrix * d.asDiagonal();
            return make("transpose_symmetry", (h.matrix.transpose() - dhd).cwiseAbs().maxCoeff(), 1e-14,
                        "H^T = D H D, D = diag(-1, 1, ..., 1)");
        }));

        std::optional<DressedStates> states;
        out.push_back(guarded("biorthonormality", 1e-10, [&] {
            states = diagonalize(h);
            const Eigen::MatrixXcd g = states->left.adjoint() * states->right;
            const double dev = (g - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
            return make("biorthonormality", dev, 1e-10, "max |L^dagger R - I|");
        }));

        if (states) {
            out.push_back(guarded("eigen_reconstruction", 1e-10, [&] {
                const Eigen::MatrixXcd r = h.matrix * states->right - states->right * states->eigenvalues.asDiagonal();
                const double scale = h.matrix.cwiseAbs().maxCoeff();
                return make("eigen_reconstruction", r.cwiseAbs().maxCoeff() / scale, 1e-10,
                            "max |H R - R Lambda| / max |H|");
            }));

            PopulationTrace eig;
            out.push_back(guarded("eigen_vs_propagate", 1e-8, [&] {
                const auto times = config.time_grid();
                eig = populations_eigen(*states, times);
                const auto prop = populations_propagate(h, times);
                double dev = 0.0;
                for (std::size_t i = 0; i < times.size(); ++i) {
                    dev = std::max(dev, std::abs(eig.emitter[i] - prop.emitter[i]));
                    for (std::size_t k = 0; k < eig.modes.size(); ++k)
                        dev = std::max(dev, std::abs(eig.modes[k][i] - prop.modes[k][i]));
                }
                return make("eigen_vs_propagate", dev, 1e-8, "max population difference over the time grid");
            }));

            out.push_back(guarded("norm_monotone", 1e-12, [&] {
                double rise = 0.0;
                for (std::size_t i = 1; i < eig.norm.size(); ++i) rise = std::max(rise, eig.norm[i] - eig.norm[i - 1]);
                return make("norm_monotone", rise, 1e-12, "largest step-to-step increase of <psi|psi>");
            }));
        }

        out.push_back(guarded("lorentzian_sum_rule", 0.05, [&] {
            double worst = 0.0;
            int worst_n = 0;
            const int count = std::min(config.modes, 6);
            for (int n = 1; n <= count; ++n) {
                const auto& m = modes[static_cast<std::size_t>(n - 1)];
                const double lo = std::max(1e-3, m.energy_ev - 20.0 * m.width_ev);
                const auto grid = linear_grid(lo, m.energy_ev + 20.0 * m.width_ev, 8001);
                const auto dens = coupling_density(emitter, sphere, n, grid, config.backend);
                const double integral = trapezoid(dens.energy_ev, dens.values_ev);
                const double dev = std::abs(integral / (m.coupling_ev * m.coupling_ev) - 1.0);
                if (dev > worst) {
                    worst = dev;
                    worst_n = n;
                }
            }
            return make("lorentzian_sum_rule", worst, 0.05,
                        "int |kappa_n|^2 over +-20 FWHM vs g_n^2, worst order " + std::to_string(worst_n));
        }));
    }

    out.push_back(guarded("quasistatic_vs_mie", 0.02, [&] {
        SphereSystem small{1.0, config.drude, config.eps_background};
        const EmitterGeometry geom{1.5};
        double worst = 0.0;
        for (double e : linear_grid(2.0, 3.4, 57)) {
            for (int n = 1; n <= 10; ++n) {
                const cplx qs = quasistatic_scattered_Guu_order(small, geom, n, e);
                const cplx mie = mie_scattered_Guu_order(small, geom, n, e);
                worst = std::max(worst, std::abs(mie - qs) / std::abs(qs));
            }
        }
        return make("quasistatic_vs_mie", worst, 0.02, "R = 1 nm, z = 1.5 nm, orders 1..10, 2.0..3.4 eV (kR < 0.02)");
    }));

    out.push_back(guarded("lossless_mie_unitarity", 1e-10, [&] {
        SphereSystem dielectric{config.radius_nm, DrudeMaterial{4.0, 0.0, 0.051}, config.eps_background};
        double worst = 0.0;
        for (double e : linear_grid(0.5, 6.0, 23)) {
            const auto b = mie_coefficients(dielectric, 30, e);
            for (int n = 1; n <= 30; ++n) worst = std::max(worst, std::abs(std::abs(b[n] - 0.5) - 0.5));
        }
        return make("lossless_mie_unitarity", worst, 1e-10, "eps = 4 sphere: |b_n - 1/2| = 1/2");
    }));

    out.push_back(guarded("lossless_hamiltonian", 1e-10, [&] {
        EmitterParams lossless = emitter;
        lossless.linewidth_ev = 0.0;
        std::vector<ModeParams> ideal = modes;
        if (ideal.empty()) ideal.push_back(ModeParams{1, 2.8, 0.0, 0.02, {}});
        for (auto& m : ideal) m.width_ev = 0.0;
        const auto h = build_h_eff(lossless, ideal);
        const auto st = diagonalize(h);
        double dev = st.eigenvalues.imag().cwiseAbs().maxCoeff();
        const auto tr = populations_eigen(st, linear_grid(0.0, 200.0, 401));
        for (double n : tr.norm) dev = std::max(dev, std::abs(n - 1.0));
        const auto& m = ideal.front();
        const auto two = two_mode_analytic(m.coupling_ev, m.energy_ev - lossless.transition_energy_ev, 0.0, 0.0);
        const double exact = 2.0 * std::sqrt(m.coupling_ev * m.coupling_ev +
                                             0.25 * std::pow(m.energy_ev - lossless.transition_energy_ev, 2));
        dev = std::max(dev, std::abs(two.splitting() - exact));
        return make("lossless_hamiltonian", dev, 1e-10, "real spectrum, conserved norm, 2x2 Rabi formula");
    }));

    out.push_back(guarded("ldos_positivity", 0.5, [&] {
        const auto grid = config.frequency_grid();
        int negative = 0;
        for (std::size_t i = 0; i < grid.size(); i += 7) {
            const auto terms = scattered_Guu_orders(sphere, emitter.geometry, grid[i], config.modes, config.backend);
            cplx total = 0.0;
            for (const auto& t : terms) {
                if (t.imag() < 0.0) ++negative;
                total += t;
            }
            if (total.imag() + free_Guu_imag(sphere, grid[i]) <= 0.0) ++negative;
        }
        return make("ldos_positivity", double(negative), 0.5, "count of negative Im G samples");
    }));

    return out;
}

std::string format_check_table(const std::vector<CheckResult>& checks) {
    std::ostringstream os;
    std::size_t width = 5;
    for (const auto& c : checks) width = std::max(width, c.name.size());
    os << std::left << std::setw(static_cast<int>(width)) << "check" << "  status  " << std::setw(12) << "value"
       << "  tolerance\n";
    int failed = 0;
    for (const auto& c : checks) {
        os << std::left << std::setw(static_cast<int>(width)) << c.name << "  " << (c.passed ? "PASS  " : "FAIL  ")
           << "  " << std::scientific << std::setprecision(3) << std::setw(12) << c.value << "  " << c.tolerance;
        if (!c.passed && !c.detail.empty()) os << "  (" << c.detail << ")";
        os << "\n";
        if (!c.passed) ++failed;
    }
    os << (checks.size() - failed) << "/" << checks.size() << " checks passed\n";
    return os.str();
}

} // namespace plasmon
