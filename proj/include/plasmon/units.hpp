// units.hpp: physical constants, unit conversions and the Drude metal model.
//
// Internal unit system: energies in eV (always as hbar*omega), lengths in nm,
// times in fs. SI quantities appear only inside coupling_prefactor().

#pragma once

#include <complex>
#include <span>
#include <vector>

namespace plasmon {

using cplx = std::complex<double>;

namespace constants {
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double hbar_ev_fs = 0.6582119569;        // eV fs
inline constexpr double c_nm_per_fs = 299.792458;         // nm / fs
inline constexpr double hbar_c_ev_nm = hbar_ev_fs * c_nm_per_fs;
inline constexpr double epsilon0_si = 8.8541878128e-12;   // F / m
inline constexpr double elementary_charge_si = 1.602176634e-19;  // C (= J per eV)
inline constexpr double debye_si = 3.33564e-30;           // C m per debye
} // namespace constants

/// Vacuum wavenumber k0 = omega / c in 1/nm for a photon energy in eV.
inline double vacuum_wavenumber(double energy_ev) { return energy_ev / constants::hbar_c_ev_nm; }

/// Dipole moment in C m. Throws DomainError for negative input.
double debye_to_si(double dipole_debye);

/// k0^2 d^2 / eps0 expressed in eV nm: multiplying by a Green's function
/// value in 1/nm gives an energy in eV. This is hbar times the k0^2 d^2/(hbar eps0)
/// factor of the emitter self-energy; every module that converts a Green's
/// function into a rate or an energy goes through here.
double coupling_prefactor(double energy_ev, double dipole_debye);

/// Dispersive metal eps(w) = eps_inf - wp^2 / (w^2 + i gamma w).
struct DrudeMaterial {
    double eps_inf = 6.0;
    double plasma_energy_ev = 7.90;   // hbar omega_p
    double damping_ev = 0.051;        // hbar gamma_p

    /// Throws DomainError unless eps_inf >= 1, omega_p >= 0, gamma_p > 0.
    void validate() const;

    /// Compiled-in preset "silver-drude".
    static DrudeMaterial silver() { return {}; }
};

/// Complex permittivity at photon energy hbar*omega (eV). Throws DomainError for
/// a non-positive frequency.
cplx drude_permittivity(const DrudeMaterial& material, double energy_ev);

/// Kramers-Kronig consistency of the Drude permittivity, evaluated with a
/// numerical principal-value Hilbert transform of Im eps over `grid` (eV).
///
/// Returns max_i |Re eps(w_i) - eps_inf - KK[Im eps](w_i)| / |Re eps(w_i) - eps_inf|.
///
/// The integral runs over [0, grid.back()]: the segment below grid.front() is
/// covered by an internal geometric refinement, since the Drude absorption
/// peak sits at w < gamma_p. The grid must be strictly increasing, reach at
/// least 50 omega_p and have relative spacing dw/w <= 0.05; otherwise a
/// DomainError names the requirement. gamma_p below 1e-6 eV is rejected
/// (the pole approaches the real axis). omega_p = 0 returns exactly 0.
double kramers_kronig_residual(const DrudeMaterial& material, std::span<const double> grid);

/// points equally spaced values in [lo, hi], endpoints included.
std::vector<double> linear_grid(double lo, double hi, std::size_t points);
/// points geometrically spaced values in [lo, hi] (lo > 0).
std::vector<double> geometric_grid(double lo, double hi, std::size_t points);

} // namespace plasmon
