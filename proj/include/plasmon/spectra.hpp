// spectra.hpp: near-field polarization spectrum, far-field detector spectrum
// and angular radiation patterns.

#pragma once

#include "plasmon/mode_coupling.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace plasmon {

enum class SpectrumKind { near, far, pattern };
enum class Projection { vector, scalar };

const char* to_string(SpectrumKind kind) noexcept;
const char* to_string(Projection projection) noexcept;

struct Spectrum {
    SpectrumKind kind = SpectrumKind::near;
    std::vector<double> abscissa;  // eV, or rad for patterns
    std::vector<double> values;
    // Resolved evaluation settings, echoed into output sidecars.
    GreensBackend backend = GreensBackend::mie;
    int truncation = 0;
    std::vector<int> mode_subset;
    std::optional<DetectorPosition> detector;
    std::optional<double> energy_ev;  // patterns only
    Projection projection = Projection::vector;
};

/// P(w) = |w_eg - w - i gd/2 - (k0^2 d^2/eps0) G_scatt(w)|^-2 in 1/eV^2,
/// with G_scatt summed over `mode_subset` when given, else over 1..truncation.
Spectrum polarization_spectrum(const EmitterParams& emitter, const SphereSystem& system, std::span<const double> grid,
                               int truncation, GreensBackend backend = GreensBackend::mie,
                               const std::optional<std::vector<int>>& mode_subset = std::nullopt);

/// S(w) = (1/2pi) |k0^2 d^2/eps0|^2 W(w) P(w) (dimensionless), W = |G u|^2 of the
/// total column (vector) or |u.G u|^2 (scalar). The detector field is always
/// the retarded Mie series; `backend` only selects the G_scatt entering P.
Spectrum far_spectrum(const EmitterParams& emitter, const SphereSystem& system, const DetectorPosition& detector,
                      std::span<const double> grid, int truncation, Projection projection = Projection::vector,
                      GreensBackend backend = GreensBackend::mie);

/// S(theta) at fixed energy, scaled so the maximum is 1. Requires k r > 10.
Spectrum radiation_pattern(const EmitterParams& emitter, const SphereSystem& system, double energy_ev,
                           std::span<const double> theta_grid, double r_nm, int truncation,
                           Projection projection = Projection::vector);

struct Peak {
    double position = 0.0;
    double value = 0.0;
};

/// Interior local maxima (discrete second difference < 0), refined with a
/// 3-point parabola, ordered by position.
std::vector<Peak> find_local_maxima(std::span<const double> x, std::span<const double> y);

/// Distance between the two highest maxima (ties: lower position first).
/// Throws NumericalError with fewer than two maxima.
double peak_splitting(std::span<const double> x, std::span<const double> y);

/// The two highest maxima, returned in ascending position.
std::vector<Peak> two_highest_peaks(std::span<const double> x, std::span<const double> y);

/// A = (int_0^{pi/2} - int_{pi/2}^{pi}) S sin(theta) / int_0^pi S sin(theta),
/// trapezoid rule; theta_grid must span [0, pi] and contain pi/2.
double forward_asymmetry(const Spectrum& pattern);

} // namespace plasmon
