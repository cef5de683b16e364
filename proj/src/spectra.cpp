#include "plasmon/spectra.hpp"

#include "plasmon/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace plasmon {

using constants::pi;

const char* to_string(SpectrumKind kind) noexcept {
    switch (kind) {
    case SpectrumKind::near: return "near";
    case SpectrumKind::far: return "far";
    case SpectrumKind::pattern: return "pattern";
    }
    return "unknown";
}

const char* to_string(Projection projection) noexcept {
    return projection == Projection::vector ? "vector" : "scalar";
}

namespace {

void require_increasing(std::span<const double> grid, const char* what) {
    if (grid.size() < 2) throw DomainError(std::string(what) + " needs at least 2 points");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) throw DomainError(std::string(what) + " must be strictly increasing");
    }
}

cplx scattered_sum(const EmitterParams& emitter, const SphereSystem& system, double energy, int truncation,
                   GreensBackend backend, const std::optional<std::vector<int>>& subset) {
    if (subset) return scattered_Guu_subset(system, emitter.geometry, energy, *subset, backend);
    return scattered_Guu(system, emitter.geometry, energy, truncation, backend).value;
}

double polarization_value(const EmitterParams& emitter, const SphereSystem& system, double energy, int truncation,
                          GreensBackend backend, const std::optional<std::vector<int>>& subset) {
    const cplx self = coupling_prefactor(energy, emitter.dipole_debye) *
                      scattered_sum(emitter, system, energy, truncation, backend, subset);
    const cplx denom = emitter.transition_energy_ev - energy - cplx(0.0, 0.5 * emitter.linewidth_ev) - self;
    return 1.0 / std::norm(denom);
}

double detector_weight(const GreenColumn& col, double theta, Projection projection) {
    return projection == Projection::vector ? col.norm2() : std::norm(col.axial(theta));
}

} // namespace

Spectrum polarization_spectrum(const EmitterParams& emitter, const SphereSystem& system, std::span<const double> grid,
                               int truncation, GreensBackend backend, const std::optional<std::vector<int>>& mode_subset) {
    require_increasing(grid, "frequency grid");
    if (mode_subset && mode_subset->empty()) throw DomainError("mode subset must not be empty");
    Spectrum out;
    out.kind = SpectrumKind::near;
    out.backend = backend;
    out.truncation = truncation;
    if (mode_subset) out.mode_subset = *mode_subset;
    out.abscissa.assign(grid.begin(), grid.end());
    out.values.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out.values[i] = polarization_value(emitter, system, grid[i], truncation, backend, mode_subset);
    }
    return out;
}

Spectrum far_spectrum(const EmitterParams& emitter, const SphereSystem& system, const DetectorPosition& detector,
                      std::span<const double> grid, int truncation, Projection projection, GreensBackend backend) {
    require_increasing(grid, "frequency grid");
    Spectrum out;
    out.kind = SpectrumKind::far;
    out.backend = backend;
    out.truncation = truncation;
    out.detector = detector;
    out.projection = projection;
    out.abscissa.assign(grid.begin(), grid.end());
    out.values.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double e = grid[i];
        const auto col = far_field_green_column(system, emitter.geometry, detector, e, truncation);
        const double pre = coupling_prefactor(e, emitter.dipole_debye);
        const double p = polarization_value(emitter, system, e, truncation, backend, std::nullopt);
        out.values[i] = pre * pre * detector_weight(col, detector.theta_rad, projection) * p / (2.0 * pi);
    }
    return out;
}

Spectrum radiation_pattern(const EmitterParams& emitter, const SphereSystem& system, double energy_ev,
                           std::span<const double> theta_grid, double r_nm, int truncation, Projection projection) {
    require_increasing(theta_grid, "angle grid");
    if (!(system.background_wavenumber(energy_ev) * r_nm > 10.0)) {
        throw GeometryError("radiation pattern detector must be in the far zone (k r > 10)");
    }
    Spectrum out;
    out.kind = SpectrumKind::pattern;
    out.truncation = truncation;
    out.projection = projection;
    out.energy_ev = energy_ev;
    out.detector = DetectorPosition{r_nm, 0.0};
    out.abscissa.assign(theta_grid.begin(), theta_grid.end());
    out.values.resize(theta_grid.size());
    for (std::size_t i = 0; i < theta_grid.size(); ++i) {
        const auto col = far_field_green_column(system, emitter.geometry, {r_nm, theta_grid[i]}, energy_ev, truncation);
        out.values[i] = detector_weight(col, theta_grid[i], projection);
    }
    const double top = *std::max_element(out.values.begin(), out.values.end());
    if (!(top > 0.0)) throw NumericalError("radiation pattern vanishes identically");
    for (auto& v : out.values) v /= top;
    return out;
}

std::vector<Peak> find_local_maxima(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DomainError("find_local_maxima: size mismatch");
    std::vector<Peak> out;
    for (std::size_t i = 1; i + 1 < y.size(); ++i) {
        if (!(y[i] > y[i - 1] && y[i] >= y[i + 1])) continue;
        // Second difference of the samples is negative at a strict maximum.
        const double h0 = x[i] - x[i - 1], h1 = x[i + 1] - x[i];
        const double s0 = (y[i] - y[i - 1]) / h0, s1 = (y[i + 1] - y[i]) / h1;
        const double curv = (s1 - s0) / (0.5 * (h0 + h1));
        Peak p{x[i], y[i]};
        if (curv < 0.0) {
            const double slope = 0.5 * (s0 + s1) - 0.25 * curv * (h1 - h0);
            const double shift = -slope / curv;
            if (std::abs(shift) <= std::max(h0, h1)) {
                p.position = x[i] + shift;
                p.value = y[i] + slope * shift + 0.5 * curv * shift * shift;
            }
        }
        out.push_back(p);
    }
    return out;
}

std::vector<Peak> two_highest_peaks(std::span<const double> x, std::span<const double> y) {
    auto peaks = find_local_maxima(x, y);
    if (peaks.size() < 2) throw NumericalError("fewer than two local maxima; no splitting defined");
    std::stable_sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) { return a.value > b.value; });
    std::vector<Peak> top{peaks[0], peaks[1]};
    std::sort(top.begin(), top.end(), [](const Peak& a, const Peak& b) { return a.position < b.position; });
    return top;
}

double peak_splitting(std::span<const double> x, std::span<const double> y) {
    const auto top = two_highest_peaks(x, y);
    return top[1].position - top[0].position;
}

double forward_asymmetry(const Spectrum& pattern) {
    const auto& th = pattern.abscissa;
    const auto& s = pattern.values;
    if (th.size() < 3 || std::abs(th.front()) > 1e-12 || std::abs(th.back() - pi) > 1e-9) {
        throw DomainError("forward_asymmetry: angle grid must span [0, pi]");
    }
    double forward = 0.0, backward = 0.0;
    bool has_middle = false;
    for (std::size_t i = 1; i < th.size(); ++i) {
        const double seg = 0.5 * (th[i] - th[i - 1]) * (s[i] * std::sin(th[i]) + s[i - 1] * std::sin(th[i - 1]));
        if (th[i] <= pi / 2.0 + 1e-12) forward += seg;
        else backward += seg;
        if (std::abs(th[i] - pi / 2.0) < 1e-12) has_middle = true;
    }
    if (!has_middle) throw DomainError("forward_asymmetry: angle grid must contain pi/2");
    return (forward - backward) / (forward + backward);
}

} // namespace plasmon
