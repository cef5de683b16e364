// dynamics.hpp: emitter and pseudomode populations for an emitter starting in
// |e,0>, from the dressed-state expansion and from direct propagation.

#pragma once

#include "plasmon/effective_model.hpp"

#include <span>
#include <vector>

namespace plasmon {

struct PopulationTrace {
    std::vector<double> time_fs;
    std::vector<double> emitter;             // |C_e(t)|^2
    std::vector<std::vector<double>> modes;  // modes[k][i] = |C_{k+1}(t_i)|^2
    std::vector<double> norm;                // <psi|psi>
    std::vector<int> orders;
};

/// |psi(t)> = sum_m eta_m |R_m> exp(-i lambda_m t / hbar), eta_m = <L_m|e,0>.
/// Throws NumericalError when the expansion does not reproduce C_e(0) = 1.
PopulationTrace populations_eigen(const DressedStates& states, std::span<const double> times_fs);

/// Step-by-step exp(-i H dt / hbar) propagation (Pade scaling-and-squaring).
/// Each distinct step is checked against two half steps (< 1e-12) and for
/// norm growth; failures raise NumericalError.
PopulationTrace populations_propagate(const EffectiveHamiltonian& h, std::span<const double> times_fs);

struct ModeRank {
    int order = 0;
    double peak_population = 0.0;
    double peak_time_fs = 0.0;
    double integrated_fs = 0.0;  // int |C_n|^2 dt
};

enum class RankBy { peak, integrated };

/// Modes ranked by max_t |C_n(t)|^2, or by the time-integrated occupation
/// (ties: lower order first). Both measures are filled in either way.
std::vector<ModeRank> dominant_mode_report(const PopulationTrace& trace, RankBy metric = RankBy::peak);

struct DecayFit {
    double rate_per_fs = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double window_end_fs = 0.0;
};

/// Least-squares line through ln|C_e|^2 from t = times[0] up to the first
/// sample where |C_e|^2 drops below 1/e.
DecayFit fit_initial_decay(const PopulationTrace& trace);

/// Mean spacing of successive interior maxima of |C_e(t)|^2 (fs).
double oscillation_period(const PopulationTrace& trace);

/// Fermi golden-rule emitter decay rate (1/fs):
/// [gd + 2 (k0^2 d^2/eps0) Im G_scatt(w_eg)] / hbar.
double golden_rule_rate(const EmitterParams& emitter, const SphereSystem& system, int truncation,
                        GreensBackend backend = GreensBackend::mie);

/// True when every successive norm value is <= the previous one + tol.
bool norm_nonincreasing(const PopulationTrace& trace, double tol = 1e-12);

std::vector<double> default_time_grid();

} // namespace plasmon
