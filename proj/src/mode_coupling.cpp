#include "plasmon/mode_coupling.hpp"

#include "plasmon/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace plasmon {

using constants::pi;

void EmitterParams::validate() const {
    if (!(transition_energy_ev > 0.0)) throw DomainError("emitter transition energy must be > 0");
    if (!(dipole_debye > 0.0)) throw DomainError("dipole moment must be > 0");
    if (!(linewidth_ev >= 0.0)) throw DomainError("emitter linewidth must be >= 0");
}

double lorentzian_density(const ModeParams& mode, double energy_ev) {
    const double det = energy_ev - mode.energy_ev;
    const double half = 0.5 * mode.width_ev;
    return mode.width_ev / (2.0 * pi) * mode.coupling_ev * mode.coupling_ev / (det * det + half * half);
}

namespace {

void require_increasing(std::span<const double> grid) {
    if (grid.size() < 3) throw DomainError("frequency grid needs at least 3 points");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) throw DomainError("frequency grid must be strictly increasing");
    }
    if (!(grid.front() > 0.0)) throw DomainError("frequency grid must be positive");
}

CouplingDensity density_from_imag(int order, std::span<const double> grid, const std::vector<double>& im_g,
                                  double dipole_debye) {
    CouplingDensity out;
    out.order = order;
    out.energy_ev.assign(grid.begin(), grid.end());
    out.values_ev.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (im_g[i] < 0.0) {
            std::ostringstream msg;
            msg << "Im G_" << order << " = " << im_g[i] << " /nm is negative at " << grid[i] << " eV";
            throw NumericalError(msg.str());
        }
        out.values_ev[i] = coupling_prefactor(grid[i], dipole_debye) * im_g[i] / pi;
    }
    return out;
}

// Linear interpolation of the abscissa where y crosses `level` between i and j.
double crossing(const std::vector<double>& x, const std::vector<double>& y, std::size_t i, std::size_t j, double level) {
    return x[i] + (level - y[i]) / (y[j] - y[i]) * (x[j] - x[i]);
}

struct LorentzFit {
    Eigen::Vector3d params;  // energy, width, coupling
    double residual = 0.0;
    int iterations = 0;
};

// Levenberg-Marquardt on the three Lorentzian parameters.
LorentzFit refine(std::span<const double> x, std::span<const double> y, Eigen::Vector3d p) {
    const auto n = static_cast<Eigen::Index>(x.size());
    auto evaluate = [&](const Eigen::Vector3d& q, Eigen::VectorXd& r, Eigen::MatrixXd* jac) {
        const double w = q[0], gam = q[1], g = q[2];
        for (Eigen::Index i = 0; i < n; ++i) {
            const double det = x[i] - w;
            const double l = det * det + 0.25 * gam * gam;
            const double model = gam / (2.0 * pi) * g * g / l;
            r[i] = model - y[i];
            if (jac) {
                (*jac)(i, 0) = gam * g * g * det / (pi * l * l);
                (*jac)(i, 1) = g * g / (2.0 * pi) * (1.0 / l - 0.5 * gam * gam / (l * l));
                (*jac)(i, 2) = gam * g / (pi * l);
            }
        }
    };
    Eigen::VectorXd r(n), trial_r(n);
    Eigen::MatrixXd jac(n, 3);
    evaluate(p, r, &jac);
    double cost = r.squaredNorm();
    double lambda = 1e-3;
    int it = 0;
    for (; it < 200; ++it) {
        const Eigen::Matrix3d jtj = jac.transpose() * jac;
        const Eigen::Vector3d jtr = jac.transpose() * r;
        Eigen::Matrix3d a = jtj;
        a.diagonal() += lambda * jtj.diagonal();
        const Eigen::Vector3d step = a.ldlt().solve(-jtr);
        const Eigen::Vector3d trial = p + step;
        if (!(trial[1] > 0.0) || !(trial[2] >= 0.0)) {
            lambda *= 10.0;
            continue;
        }
        evaluate(trial, trial_r, nullptr);
        const double trial_cost = trial_r.squaredNorm();
        if (trial_cost < cost) {
            const bool converged = (step.cwiseAbs().array() <= 1e-13 * (p.cwiseAbs().array() + 1e-12)).all() ||
                                   (cost - trial_cost) <= 1e-15 * cost;
            p = trial;
            evaluate(p, r, &jac);
            cost = trial_cost;
            lambda = std::max(lambda / 10.0, 1e-12);
            if (converged) break;
        } else {
            lambda *= 10.0;
            if (lambda > 1e12) break;
        }
    }
    Eigen::Map<const Eigen::VectorXd> data(y.data(), n);
    return {p, std::sqrt(cost) / data.norm(), it};
}

} // namespace

CouplingDensity coupling_density(const EmitterParams& emitter, const SphereSystem& system, int order,
                                 std::span<const double> grid, GreensBackend backend) {
    require_increasing(grid);
    if (order < 1) throw DomainError("multipole order must be >= 1");
    std::vector<double> im_g(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const cplx g = backend == GreensBackend::mie
                           ? mie_scattered_Guu_order(system, emitter.geometry, order, grid[i])
                           : quasistatic_scattered_Guu_order(system, emitter.geometry, order, grid[i]);
        im_g[i] = g.imag();
    }
    return density_from_imag(order, grid, im_g, emitter.dipole_debye);
}

ModeParams extract_mode_params(const CouplingDensity& density) {
    const auto& x = density.energy_ev;
    const auto& y = density.values_ev;
    if (x.size() != y.size() || x.size() < 3) throw DomainError("coupling density is malformed");
    const auto top = static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
    if (top == 0 || top + 1 == y.size()) {
        std::ostringstream msg;
        msg << "order " << density.order << ": coupling density peaks on the grid boundary (" << x[top] << " eV)";
        throw NumericalError(msg.str());
    }
    if (!(y[top] > 0.0)) throw NumericalError("coupling density is identically zero");

    // Parabola through the three samples around the maximum.
    const double y0 = y[top - 1], y1 = y[top], y2 = y[top + 1];
    const double h0 = x[top] - x[top - 1], h1 = x[top + 1] - x[top];
    double peak_x = x[top];
    double peak_y = y1;
    {
        const double s0 = (y1 - y0) / h0, s1 = (y2 - y1) / h1;
        const double curv = (s1 - s0) / (0.5 * (h0 + h1));
        if (curv < 0.0) {
            const double slope_mid = 0.5 * (s0 + s1) - 0.25 * curv * (h1 - h0);
            const double shift = -slope_mid / curv;
            if (std::abs(shift) < std::max(h0, h1)) {
                peak_x = x[top] + shift;
                peak_y = y1 + slope_mid * shift + 0.5 * curv * shift * shift;
            }
        }
    }

    const double half = 0.5 * y[top];
    std::size_t left = top, right = top;
    while (left > 0 && y[left] > half) --left;
    while (right + 1 < y.size() && y[right] > half) ++right;
    if (y[left] > half || y[right] > half) {
        std::ostringstream msg;
        msg << "order " << density.order << ": half maximum not bracketed by the grid";
        throw NumericalError(msg.str());
    }
    const double fwhm = crossing(x, y, right - 1, right, half) - crossing(x, y, left, left + 1, half);

    ModeParams out;
    out.order = density.order;
    out.fit.raw_energy_ev = peak_x;
    out.fit.raw_width_ev = fwhm;
    out.fit.raw_coupling_ev = std::sqrt(pi * fwhm * peak_y / 2.0);

    const double lo = peak_x - 5.0 * fwhm, hi = peak_x + 5.0 * fwhm;
    const auto first = std::lower_bound(x.begin(), x.end(), lo) - x.begin();
    const auto last = std::upper_bound(x.begin(), x.end(), hi) - x.begin();
    const std::span<const double> wx(x.data() + first, static_cast<std::size_t>(last - first));
    const std::span<const double> wy(y.data() + first, static_cast<std::size_t>(last - first));
    const auto fit = refine(wx, wy, {peak_x, fwhm, out.fit.raw_coupling_ev});
    out.energy_ev = fit.params[0];
    out.width_ev = fit.params[1];
    out.coupling_ev = std::abs(fit.params[2]);
    out.fit.residual = fit.residual;
    out.fit.iterations = fit.iterations;
    out.fit.non_lorentzian = fit.residual > 0.2;
    return out;
}

std::vector<ModeParams> mode_table(const EmitterParams& emitter, const SphereSystem& system, int truncation,
                                   std::span<const double> grid, GreensBackend backend) {
    require_increasing(grid);
    if (truncation < 1) throw DomainError("mode count must be >= 1");
    // One sweep produces every order at each frequency.
    std::vector<std::vector<double>> im_g(truncation, std::vector<double>(grid.size()));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto orders = scattered_Guu_orders(system, emitter.geometry, grid[i], truncation, backend);
        for (int n = 0; n < truncation; ++n) im_g[n][i] = orders[n].imag();
    }
    std::vector<ModeParams> out;
    out.reserve(truncation);
    for (int n = 1; n <= truncation; ++n) {
        try {
            out.push_back(extract_mode_params(density_from_imag(n, grid, im_g[n - 1], emitter.dipole_debye)));
        } catch (const Error& e) {
            std::ostringstream msg;
            msg << "mode_table order " << n << ": " << e.what();
            throw Error(e.kind(), msg.str());
        }
    }
    return out;
}

} // namespace plasmon
