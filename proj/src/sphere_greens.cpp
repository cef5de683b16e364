#include "plasmon/sphere_greens.hpp"

#include "plasmon/errors.hpp"
#include "plasmon/special_functions.hpp"

#include <cmath>
#include <sstream>

namespace plasmon {

using constants::pi;

const char* to_string(GreensBackend backend) noexcept {
    return backend == GreensBackend::mie ? "mie" : "quasistatic";
}

void SphereSystem::validate() const {
    if (!(radius_nm > 0.0)) throw DomainError("radius must be > 0");
    if (!(eps_background >= 1.0)) throw DomainError("background permittivity must be >= 1");
    material.validate();
}

double SphereSystem::background_wavenumber(double energy_ev) const {
    return std::sqrt(eps_background) * vacuum_wavenumber(energy_ev);
}

namespace {

void require_order(int order) {
    if (order < 1) throw DomainError("multipole order must be >= 1");
}

void require_outside(const SphereSystem& system, const EmitterGeometry& geometry) {
    if (!(geometry.center_distance_nm > system.radius_nm)) {
        std::ostringstream msg;
        msg << "emitter at z = " << geometry.center_distance_nm << " nm is not outside the sphere of radius "
            << system.radius_nm << " nm";
        throw GeometryError(msg.str());
    }
}

} // namespace

cplx quasistatic_polarizability(const SphereSystem& system, int order, double energy_ev) {
    require_order(order);
    const cplx eps = system.permittivity(energy_ev);
    const double eb = system.eps_background;
    const double n = order;
    return std::pow(system.radius_nm, 2 * order + 1) * n * (eps - eb) / (n * eps + (n + 1.0) * eb);
}

cplx quasistatic_scattered_Guu_order(const SphereSystem& system, const EmitterGeometry& geometry, int order,
                                     double energy_ev) {
    require_outside(system, geometry);
    const double k = system.background_wavenumber(energy_ev);
    const double z = geometry.center_distance_nm;
    const double np1 = order + 1.0;
    return quasistatic_polarizability(system, order, energy_ev) * (np1 * np1) /
           (4.0 * pi * k * k * std::pow(z, 2 * order + 4));
}

std::vector<cplx> mie_coefficients(const SphereSystem& system, int nmax, double energy_ev) {
    require_order(nmax);
    const double k = system.background_wavenumber(energy_ev);
    const double x = k * system.radius_nm;
    const cplx eps = system.permittivity(energy_ev);
    cplx m = std::sqrt(eps / system.eps_background);
    if (m.imag() < 0.0) m = -m;

    const auto d = special::riccati_log_derivative(nmax, m * x);
    const auto bx = special::spherical_bessel(nmax, x);
    std::vector<cplx> out(nmax + 1, cplx{});
    for (int n = 1; n <= nmax; ++n) {
        const double psi = x * bx.j[n];
        const double psi_prev = x * bx.j[n - 1];
        const cplx xi = x * bx.hankel1(n);
        const cplx xi_prev = x * bx.hankel1(n - 1);
        const cplx t = d[n] / m + static_cast<double>(n) / x;
        out[n] = (t * psi - psi_prev) / (t * xi - xi_prev);
        if (!std::isfinite(out[n].real()) || !std::isfinite(out[n].imag())) {
            std::ostringstream msg;
            msg << "Mie coefficient b_" << n << " is not finite at " << energy_ev << " eV";
            throw NumericalError(msg.str());
        }
    }
    if (eps.imag() == 0.0 && m.imag() == 0.0) {
        for (int n = 1; n <= nmax; ++n) {
            if (std::abs(out[n] - 0.5) > 0.5 + 1e-9) {
                std::ostringstream msg;
                msg << "lossless Mie coefficient b_" << n << " violates |b - 1/2| <= 1/2";
                throw NumericalError(msg.str());
            }
        }
    }
    return out;
}

cplx mie_coefficient_b(const SphereSystem& system, int order, double energy_ev) {
    require_order(order);
    return mie_coefficients(system, order, energy_ev)[order];
}

namespace {

// Source factor h1_n(kz)/(kz) for n = 1..nmax.
std::vector<cplx> source_factors(double kz, int nmax) {
    const auto b = special::spherical_bessel(nmax, kz);
    std::vector<cplx> out(nmax + 1);
    for (int n = 0; n <= nmax; ++n) out[n] = b.hankel1(n) / kz;
    return out;
}

std::vector<cplx> mie_orders(const SphereSystem& system, const EmitterGeometry& geometry, double energy_ev, int nmax) {
    const double k = system.background_wavenumber(energy_ev);
    const auto b = mie_coefficients(system, nmax, energy_ev);
    const auto h = source_factors(k * geometry.center_distance_nm, nmax);
    const cplx pre = cplx(0.0, -k / (4.0 * pi));
    std::vector<cplx> out(nmax);
    for (int n = 1; n <= nmax; ++n) {
        const double nn = n;
        out[n - 1] = pre * nn * (nn + 1.0) * (2.0 * nn + 1.0) * b[n] * h[n] * h[n];
    }
    return out;
}

} // namespace

cplx mie_scattered_Guu_order(const SphereSystem& system, const EmitterGeometry& geometry, int order,
                             double energy_ev) {
    require_order(order);
    require_outside(system, geometry);
    return mie_orders(system, geometry, energy_ev, order)[order - 1];
}

std::vector<cplx> scattered_Guu_orders(const SphereSystem& system, const EmitterGeometry& geometry, double energy_ev,
                                       int nmax, GreensBackend backend) {
    require_order(nmax);
    require_outside(system, geometry);
    if (backend == GreensBackend::mie) return mie_orders(system, geometry, energy_ev, nmax);
    std::vector<cplx> out(nmax);
    for (int n = 1; n <= nmax; ++n) out[n - 1] = quasistatic_scattered_Guu_order(system, geometry, n, energy_ev);
    return out;
}

ScatteredGreens scattered_Guu(const SphereSystem& system, const EmitterGeometry& geometry, double energy_ev,
                              int truncation, GreensBackend backend) {
    const auto terms = scattered_Guu_orders(system, geometry, energy_ev, truncation, backend);
    ScatteredGreens out;
    out.truncation = truncation;
    for (const auto& t : terms) out.value += t;
    out.last_term_ratio = std::abs(out.value) > 0.0 ? std::abs(terms.back()) / std::abs(out.value) : 0.0;
    return out;
}

cplx scattered_Guu_subset(const SphereSystem& system, const EmitterGeometry& geometry, double energy_ev,
                          const std::vector<int>& orders, GreensBackend backend) {
    if (orders.empty()) throw DomainError("mode subset must not be empty");
    int nmax = 0;
    for (int n : orders) {
        require_order(n);
        nmax = std::max(nmax, n);
    }
    const auto terms = scattered_Guu_orders(system, geometry, energy_ev, nmax, backend);
    cplx sum{};
    for (int n : orders) sum += terms[n - 1];
    return sum;
}

double free_Guu_imag(const SphereSystem& system, double energy_ev) {
    return system.background_wavenumber(energy_ev) / (6.0 * pi);
}

cplx GreenColumn::axial(double theta_rad) const {
    return radial * std::cos(theta_rad) - polar * std::sin(theta_rad);
}

GreenColumn far_field_green_column(const SphereSystem& system, const EmitterGeometry& geometry,
                                   const DetectorPosition& detector, double energy_ev, int truncation,
                                   FieldParts parts) {
    require_order(truncation);
    require_outside(system, geometry);
    const double r = detector.r_nm;
    const double z = geometry.center_distance_nm;
    if (!(r > system.radius_nm) || !(r > z)) {
        std::ostringstream msg;
        msg << "detector at r = " << r << " nm must lie outside the sphere and beyond the emitter (z = " << z << " nm)";
        throw GeometryError(msg.str());
    }
    const double k = system.background_wavenumber(energy_ev);
    const double st = std::sin(detector.theta_rad);
    const double ct = std::cos(detector.theta_rad);
    GreenColumn col{};

    if (parts != FieldParts::scattered_only) {
        // (I + grad grad / k^2) exp(ikR)/(4 pi R) applied to z-hat.
        const double rx = r * st;
        const double rz = r * ct - z;
        const double dist = std::hypot(rx, rz);
        const double ux = rx / dist;
        const double uz = rz / dist;
        const double kd = k * dist;
        const cplx i{0.0, 1.0};
        const cplx a = 1.0 + i / kd - 1.0 / (kd * kd);
        const cplx b = 1.0 + 3.0 * i / kd - 3.0 / (kd * kd);
        const cplx g = std::exp(i * kd) / (4.0 * pi * dist);
        const cplx cx = -b * ux * uz * g;
        const cplx cz = (a - b * uz * uz) * g;
        col.radial += cx * st + cz * ct;
        col.polar += cx * ct - cz * st;
    }

    if (parts != FieldParts::free_only) {
        const auto coeff = mie_coefficients(system, truncation, energy_ev);
        const auto src = source_factors(k * z, truncation);
        const double rho = k * r;
        const auto det = special::spherical_bessel(truncation, rho);
        const auto leg = special::legendre(truncation, ct);
        const cplx pre = cplx(0.0, -k / (4.0 * pi));
        for (int n = 1; n <= truncation; ++n) {
            const double nn = n;
            const cplx amp = pre * (2.0 * nn + 1.0) * coeff[n] * src[n];
            const double tau = -st * leg.dp[n];
            col.radial += amp * nn * (nn + 1.0) * leg.p[n] * det.hankel1(n) / rho;
            col.polar += amp * tau * det.riccati_hankel_derivative(n, rho) / rho;
        }
    }
    return col;
}

} // namespace plasmon
