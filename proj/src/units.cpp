#include "plasmon/units.hpp"

#include "plasmon/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace plasmon {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::geometry: return "geometry";
    case ErrorKind::config: return "config";
    case ErrorKind::numerical: return "numerical";
    case ErrorKind::io: return "io";
    }
    return "unknown";
}

double debye_to_si(double dipole_debye) {
    if (!(dipole_debye >= 0.0)) throw DomainError("dipole moment must be >= 0 debye");
    return dipole_debye * constants::debye_si;
}

double coupling_prefactor(double energy_ev, double dipole_debye) {
    const double k0_si = vacuum_wavenumber(energy_ev) * 1e9;  // 1/m
    const double d_si = debye_to_si(dipole_debye);
    // k0^2 d^2 / eps0 is J m; per eV, and per nm of the Green's function.
    const double joule_metre = k0_si * k0_si * d_si * d_si / constants::epsilon0_si;
    return joule_metre / constants::elementary_charge_si * 1e9;
}

void DrudeMaterial::validate() const {
    if (!(eps_inf >= 1.0)) throw DomainError("eps_inf must be >= 1");
    if (!(plasma_energy_ev >= 0.0)) throw DomainError("plasma energy must be >= 0 eV");
    if (!(damping_ev > 0.0)) throw DomainError("damping must be > 0 eV");
}

cplx drude_permittivity(const DrudeMaterial& m, double energy_ev) {
    if (!(energy_ev > 0.0)) throw DomainError("drude_permittivity: frequency must be > 0");
    const double wp2 = m.plasma_energy_ev * m.plasma_energy_ev;
    return m.eps_inf - wp2 / cplx(energy_ev * energy_ev, m.damping_ev * energy_ev);
}

namespace {

double trapezoid(std::span<const double> x, std::span<const double> y) {
    double acc = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) acc += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
    return acc;
}

} // namespace

double kramers_kronig_residual(const DrudeMaterial& material, std::span<const double> grid) {
    if (grid.size() < 3) throw DomainError("kramers_kronig_residual: grid needs at least 3 points");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) throw DomainError("kramers_kronig_residual: grid must be strictly increasing");
    }
    if (!(grid.front() > 0.0)) throw DomainError("kramers_kronig_residual: grid must start above 0 eV");
    if (!(material.damping_ev >= 1e-6)) {
        throw DomainError("kramers_kronig_residual: damping below 1e-6 eV puts the Drude pole on the real axis");
    }
    if (material.plasma_energy_ev == 0.0) return 0.0;

    const double wp = material.plasma_energy_ev;
    const double top = grid.back();
    if (top < 50.0 * wp) {
        std::ostringstream msg;
        msg << "kramers_kronig_residual: grid reaches " << top << " eV; the principal-value tail needs a span of at least "
            << 50.0 * wp << " eV (50 x hbar omega_p)";
        throw DomainError(msg.str());
    }
    double worst_step = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) worst_step = std::max(worst_step, (grid[i] - grid[i - 1]) / grid[i]);
    if (worst_step > 0.05) {
        std::ostringstream msg;
        msg << "kramers_kronig_residual: relative spacing " << worst_step << " exceeds 0.05; refine the grid";
        throw DomainError(msg.str());
    }

    // Integration nodes: refinement of [0, grid.front()] followed by the grid.
    const double gamma = material.damping_ev;
    const double knee = std::min(grid.front(), 20.0 * gamma);
    std::vector<double> nodes = linear_grid(0.0, knee, 2001);
    if (knee < grid.front()) {
        auto upper = geometric_grid(knee, grid.front(), 2001);
        nodes.insert(nodes.end(), upper.begin() + 1, upper.end());
    }
    const std::size_t offset = nodes.size() - 1;  // nodes[offset] == grid.front()
    nodes.insert(nodes.end(), grid.begin() + 1, grid.end());

    // f(w) = w Im eps(w), finite at w -> 0.
    std::vector<double> f(nodes.size());
    const double wp2 = wp * wp;
    f[0] = wp2 / gamma;
    for (std::size_t i = 1; i < nodes.size(); ++i) f[i] = nodes[i] * drude_permittivity(material, nodes[i]).imag();

    std::vector<double> integrand(nodes.size());
    double worst = 0.0;
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        const double w = grid[gi];
        if (w > 0.5 * top) break;  // evaluation stays clear of the truncation point
        const std::size_t k = offset + gi;
        const double fk = f[k];
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (i == k) continue;
            integrand[i] = (f[i] - fk) / (nodes[i] * nodes[i] - w * w);
        }
        // Removable singularity: limit f'(w) / (2w), slope from the neighbouring samples.
        const double slope = (f[k + 1] - f[k - 1]) / (nodes[k + 1] - nodes[k - 1]);
        integrand[k] = slope / (2.0 * w);
        const double smooth = trapezoid(nodes, integrand);
        const double singular = fk * std::log((top - w) / (top + w)) / (2.0 * w);
        const double kk = (2.0 / constants::pi) * (smooth + singular);
        const double direct = drude_permittivity(material, w).real() - material.eps_inf;
        worst = std::max(worst, std::abs(direct - kk) / std::abs(direct));
    }
    return worst;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t points) {
    if (points < 2 || !(hi > lo)) throw DomainError("linear_grid: need hi > lo and at least 2 points");
    std::vector<double> out(points);
    const double step = (hi - lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) out[i] = lo + step * static_cast<double>(i);
    out.back() = hi;
    return out;
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t points) {
    if (points < 2 || !(lo > 0.0) || !(hi > lo)) throw DomainError("geometric_grid: need 0 < lo < hi and at least 2 points");
    std::vector<double> out(points);
    const double ratio = std::log(hi / lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) out[i] = lo * std::exp(ratio * static_cast<double>(i));
    out.front() = lo;
    out.back() = hi;
    return out;
}

} // namespace plasmon
