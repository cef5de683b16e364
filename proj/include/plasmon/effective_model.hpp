// effective_model.hpp: non-Hermitian star Hamiltonian of the emitter coupled
// to N Lorentzian pseudomodes, and its biorthogonal dressed states.
//
// Basis ordering: {|e,0>, |g,1_1>, ..., |g,1_N>}. Matrix entries are energies
// in eV measured from hbar*omega_eg.

#pragma once

#include "plasmon/mode_coupling.hpp"

#include <Eigen/Dense>

#include <vector>

namespace plasmon {

struct EffectiveHamiltonian {
    Eigen::MatrixXcd matrix;
    double emitter_energy_ev = 0.0;
    std::vector<int> orders;  // multipole order of basis state k+1

    Eigen::Index dimension() const { return matrix.rows(); }
};

/// H[0][0] = -i gd/2, H[n][n] = Delta_n - i gamma_n/2, H[0][n] = i g_n, H[n][0] = -i g_n.
EffectiveHamiltonian build_h_eff(const EmitterParams& emitter, const std::vector<ModeParams>& modes);

/// Right vectors R_m (columns) are unit-norm with the emitter component real
/// and non-negative (or the first nonzero component real-positive). Left vectors
/// follow from L_m = D conj(R_m), D = diag(-1, 1, ..., 1), rescaled so the
/// bilinear product L_m^dagger R_m = 1. States are sorted by Re lambda, then Im.
struct DressedStates {
    Eigen::VectorXcd eigenvalues;  // lambda_m (eV)
    Eigen::MatrixXcd right;
    Eigen::MatrixXcd left;
    Eigen::VectorXd condition;     // 1 / |L_m^dagger R_m| with both unit-normalised
    double emitter_energy_ev = 0.0;
    std::vector<int> orders;

    Eigen::Index size() const { return eigenvalues.size(); }
    double dressed_energy(Eigen::Index m) const { return emitter_energy_ev + eigenvalues[m].real(); }
    double dressed_width(Eigen::Index m) const { return -2.0 * eigenvalues[m].imag(); }
};

/// Throws NumericalError when the matrix is (numerically) defective.
DressedStates diagonalize(const EffectiveHamiltonian& h);

struct TwoModeResult {
    double omega_plus_ev = 0.0;
    double omega_minus_ev = 0.0;
    double width_plus_ev = 0.0;
    double width_minus_ev = 0.0;

    double splitting() const { return omega_plus_ev - omega_minus_ev; }
};

/// Closed-form eigenvalues of the 2x2 emitter + single-mode block.
/// Omega = emitter_energy + Re lambda; with zero losses this reduces to
/// (w_eg + w_n)/2 +- sqrt(g^2 + Delta^2/4).
TwoModeResult two_mode_analytic(double coupling_ev, double detuning_ev, double emitter_width_ev, double mode_width_ev,
                                double emitter_energy_ev = 0.0);

/// Row m: |component k|^2 / sum_k |component k|^2 of right vector m.
Eigen::MatrixXd weights(const DressedStates& states);

} // namespace plasmon
