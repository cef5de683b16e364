// mode_coupling.hpp: per-order coupling spectral density and Lorentzian
// pseudomode extraction.
//
// Energy bookkeeping: the density is stored as hbar |kappa_n|^2 in eV, so
// integrating it over hbar*omega (eV) yields (hbar g_n)^2 in eV^2. Every
// rate-like parameter (omega_n, gamma_n, g_n) is reported as hbar times the
// angular quantity, in eV.

#pragma once

#include "plasmon/sphere_greens.hpp"

#include <span>
#include <vector>

namespace plasmon {

struct EmitterParams {
    double transition_energy_ev = 2.94;  // includes the free-space Lamb shift
    double dipole_debye = 24.0;
    double linewidth_ev = 0.015;         // hbar gamma_d
    EmitterGeometry geometry{};

    void validate() const;
};

struct CouplingDensity {
    int order = 0;
    std::vector<double> energy_ev;
    std::vector<double> values_ev;
};

struct FitDiagnostics {
    double raw_energy_ev = 0.0;    // peak location from the parabola refinement
    double raw_width_ev = 0.0;     // FWHM from half-maximum crossings
    double raw_coupling_ev = 0.0;  // sqrt(pi gamma peak / 2)
    double residual = 0.0;         // ||fit - data|| / ||data|| over the fit window
    int iterations = 0;
    bool non_lorentzian = false;   // residual above 20 %
};

struct ModeParams {
    int order = 0;
    double energy_ev = 0.0;    // hbar omega_n
    double width_ev = 0.0;     // hbar gamma_n
    double coupling_ev = 0.0;  // hbar g_n
    FitDiagnostics fit{};
};

/// hbar |kappa_n|^2 (eV) of the Lorentzian pseudomode at photon energy (eV).
double lorentzian_density(const ModeParams& mode, double energy_ev);

/// hbar |kappa_n(omega)|^2 = (k0^2 d^2 / pi eps0) Im G_n on each grid point.
/// Throws NumericalError naming the frequency when Im G_n < 0.
CouplingDensity coupling_density(const EmitterParams& emitter, const SphereSystem& system, int order,
                                 std::span<const double> grid, GreensBackend backend = GreensBackend::mie);

/// Closed-form seed (peak, FWHM, peak identity) then least-squares refinement of
/// the Lorentzian profile over +-5 FWHM. Throws NumericalError when the maximum
/// sits on the grid boundary or the half maximum is not bracketed.
ModeParams extract_mode_params(const CouplingDensity& density);

/// Extraction over orders 1..truncation, ordered by n.
std::vector<ModeParams> mode_table(const EmitterParams& emitter, const SphereSystem& system, int truncation,
                                   std::span<const double> grid, GreensBackend backend = GreensBackend::mie);

} // namespace plasmon
