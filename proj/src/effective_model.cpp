#include "plasmon/effective_model.hpp"

#include "plasmon/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace plasmon {

EffectiveHamiltonian build_h_eff(const EmitterParams& emitter, const std::vector<ModeParams>& modes) {
    if (modes.empty()) throw DomainError("effective Hamiltonian needs at least one mode");
    const auto dim = static_cast<Eigen::Index>(modes.size() + 1);
    EffectiveHamiltonian h;
    h.emitter_energy_ev = emitter.transition_energy_ev;
    h.matrix = Eigen::MatrixXcd::Zero(dim, dim);
    h.matrix(0, 0) = cplx(0.0, -0.5 * emitter.linewidth_ev);
    for (Eigen::Index k = 1; k < dim; ++k) {
        const auto& mode = modes[static_cast<std::size_t>(k - 1)];
        if (!(mode.coupling_ev >= 0.0)) throw DomainError("mode couplings must be >= 0");
        h.matrix(0, k) = cplx(0.0, mode.coupling_ev);
        h.matrix(k, 0) = cplx(0.0, -mode.coupling_ev);
        h.matrix(k, k) = cplx(mode.energy_ev - emitter.transition_energy_ev, -0.5 * mode.width_ev);
        h.orders.push_back(mode.order);
    }
    return h;
}

DressedStates diagonalize(const EffectiveHamiltonian& h) {
    const Eigen::Index dim = h.dimension();
    if (dim == 0 || h.matrix.cols() != dim) throw DomainError("effective Hamiltonian must be square and nonempty");
    if (!h.matrix.allFinite()) throw DomainError("effective Hamiltonian has non-finite entries");

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(h.matrix, true);
    if (solver.info() != Eigen::Success) throw NumericalError("complex eigendecomposition did not converge");

    std::vector<Eigen::Index> order(static_cast<std::size_t>(dim));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    const auto& ev = solver.eigenvalues();
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        if (ev[a].real() != ev[b].real()) return ev[a].real() < ev[b].real();
        return ev[a].imag() < ev[b].imag();
    });

    const double scale = std::max(h.matrix.cwiseAbs().maxCoeff(), 1e-300);

    DressedStates out;
    out.emitter_energy_ev = h.emitter_energy_ev;
    out.orders = h.orders;
    out.eigenvalues.resize(dim);
    out.right.resize(dim, dim);
    out.left.resize(dim, dim);
    out.condition.resize(dim);

    for (Eigen::Index m = 0; m < dim; ++m) {
        const Eigen::Index src = order[static_cast<std::size_t>(m)];
        out.eigenvalues[m] = ev[src];
        Eigen::VectorXcd r = solver.eigenvectors().col(src);
        r.normalize();
        Eigen::Index anchor = 0;
        if (std::abs(r[0]) <= 1e-12) {
            anchor = -1;
            for (Eigen::Index k = 0; k < dim; ++k) {
                if (std::abs(r[k]) > 1e-12) {
                    anchor = k;
                    break;
                }
            }
            if (anchor < 0) throw NumericalError("eigenvector vanished");
        }
        r *= std::conj(r[anchor]) / std::abs(r[anchor]);
        r[anchor] = std::abs(r[anchor]);

        Eigen::VectorXcd l = r.conjugate();
        l[0] = -l[0];
        // Bilinear product L^dagger R = R^T D R.
        const cplx s = l.adjoint() * r;
        // A coalescing pair shows up as a tiny bilinear norm together with a
        // nearly vanishing eigenvalue separation.
        double separation = std::numeric_limits<double>::infinity();
        for (Eigen::Index k = 0; k < dim; ++k) {
            if (k != src) separation = std::min(separation, std::abs(ev[k] - ev[src]));
        }
        const bool defective = std::abs(s) < 1e-10 || (std::abs(s) < 1e-6 && separation < 1e-6 * scale);
        if (defective) {
            std::ostringstream msg;
            msg << "effective Hamiltonian is numerically defective at state " << m + 1 << " (|R^T D R| = "
                << std::abs(s) << ", eigenvalue separation " << separation
                << " eV); perturb mode parameters away from the exceptional point";
            throw NumericalError(msg.str());
        }
        l /= std::conj(s);
        out.right.col(m) = r;
        out.left.col(m) = l;
        out.condition[m] = 1.0 / std::abs(s);
    }
    return out;
}

TwoModeResult two_mode_analytic(double coupling_ev, double detuning_ev, double emitter_width_ev, double mode_width_ev,
                                double emitter_energy_ev) {
    const cplx a(0.0, -0.5 * emitter_width_ev);
    const cplx d(detuning_ev, -0.5 * mode_width_ev);
    const cplx mean = 0.5 * (a + d);
    // Off-diagonal product (i g)(-i g) = g^2.
    cplx root = std::sqrt(0.25 * (a - d) * (a - d) + coupling_ev * coupling_ev);
    if (root.real() < 0.0) root = -root;
    const cplx plus = mean + root, minus = mean - root;
    TwoModeResult out;
    out.omega_plus_ev = emitter_energy_ev + plus.real();
    out.omega_minus_ev = emitter_energy_ev + minus.real();
    out.width_plus_ev = -2.0 * plus.imag();
    out.width_minus_ev = -2.0 * minus.imag();
    if (out.omega_plus_ev < out.omega_minus_ev) {
        std::swap(out.omega_plus_ev, out.omega_minus_ev);
        std::swap(out.width_plus_ev, out.width_minus_ev);
    }
    return out;
}

Eigen::MatrixXd weights(const DressedStates& states) {
    Eigen::MatrixXd w = states.right.cwiseAbs2().transpose();
    for (Eigen::Index m = 0; m < w.rows(); ++m) w.row(m) /= w.row(m).sum();
    return w;
}

} // namespace plasmon
