#include "plasmon/dynamics.hpp"

#include "plasmon/errors.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace plasmon {

using constants::hbar_ev_fs;

namespace {

void require_times(std::span<const double> t) {
    if (t.empty()) throw DomainError("time grid must not be empty");
    if (t.front() < 0.0) throw DomainError("times must be >= 0");
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (t[i] < t[i - 1]) throw DomainError("time grid must be nondecreasing");
    }
}

PopulationTrace empty_trace(std::span<const double> t, std::size_t mode_count, const std::vector<int>& orders) {
    PopulationTrace out;
    out.time_fs.assign(t.begin(), t.end());
    out.emitter.resize(t.size());
    out.norm.resize(t.size());
    out.modes.assign(mode_count, std::vector<double>(t.size()));
    out.orders = orders;
    return out;
}

void record(PopulationTrace& trace, std::size_t i, const Eigen::VectorXcd& amp) {
    trace.emitter[i] = std::norm(amp[0]);
    double total = trace.emitter[i];
    for (Eigen::Index k = 1; k < amp.size(); ++k) {
        const double p = std::norm(amp[k]);
        trace.modes[static_cast<std::size_t>(k - 1)][i] = p;
        total += p;
    }
    trace.norm[i] = total;
}

} // namespace

PopulationTrace populations_eigen(const DressedStates& states, std::span<const double> times_fs) {
    require_times(times_fs);
    const Eigen::Index dim = states.size();
    // eta_m = <L_m | e,0> = conj(L_m[0]).
    Eigen::VectorXcd eta = states.left.row(0).adjoint();
    const cplx c0 = (states.right.row(0).transpose().array() * eta.array()).sum();
    if (std::abs(c0 - 1.0) > 1e-8) {
        std::ostringstream msg;
        msg << "dressed-state expansion gives C_e(0) = " << c0.real() << (c0.imag() >= 0 ? "+" : "") << c0.imag()
            << "i instead of 1";
        throw NumericalError(msg.str());
    }
    auto trace = empty_trace(times_fs, static_cast<std::size_t>(dim - 1), states.orders);
    Eigen::VectorXcd phase(dim);
    for (std::size_t i = 0; i < times_fs.size(); ++i) {
        const double t = times_fs[i];
        for (Eigen::Index m = 0; m < dim; ++m) phase[m] = eta[m] * std::exp(cplx(0.0, -1.0) * states.eigenvalues[m] * (t / hbar_ev_fs));
        record(trace, i, states.right * phase);
    }
    return trace;
}

PopulationTrace populations_propagate(const EffectiveHamiltonian& h, std::span<const double> times_fs) {
    require_times(times_fs);
    const Eigen::Index dim = h.dimension();
    const bool dissipative = (h.matrix.diagonal().imag().array() <= 0.0).all();
    std::map<double, Eigen::MatrixXcd> cache;
    auto step_operator = [&](double dt) -> const Eigen::MatrixXcd& {
        auto it = cache.find(dt);
        if (it != cache.end()) return it->second;
        const Eigen::MatrixXcd gen = h.matrix * cplx(0.0, -dt / hbar_ev_fs);
        Eigen::MatrixXcd u = gen.exp();
        const Eigen::MatrixXcd half = (gen * 0.5).exp();
        const double drift = (half * half - u).cwiseAbs().maxCoeff();
        if (!u.allFinite() || drift > 1e-12) {
            std::ostringstream msg;
            msg << "propagator for dt = " << dt << " fs failed the half-step check (max deviation " << drift << ")";
            throw NumericalError(msg.str());
        }
        if (dissipative) {
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(u);
            const double growth = svd.singularValues()[0];
            if (growth > 1.0 + 1e-10) {
                std::ostringstream msg;
                msg << "propagator for dt = " << dt << " fs amplifies the norm (largest singular value " << growth << ")";
                throw NumericalError(msg.str());
            }
        }
        return cache.emplace(dt, std::move(u)).first->second;
    };

    auto trace = empty_trace(times_fs, static_cast<std::size_t>(dim - 1), h.orders);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    psi[0] = 1.0;
    double now = 0.0;
    for (std::size_t i = 0; i < times_fs.size(); ++i) {
        const double dt = times_fs[i] - now;
        if (dt > 0.0) psi = step_operator(dt) * psi;
        now = times_fs[i];
        record(trace, i, psi);
    }
    return trace;
}

std::vector<ModeRank> dominant_mode_report(const PopulationTrace& trace, RankBy metric) {
    std::vector<ModeRank> out;
    const auto& t = trace.time_fs;
    for (std::size_t k = 0; k < trace.modes.size(); ++k) {
        const auto& p = trace.modes[k];
        ModeRank r;
        r.order = k < trace.orders.size() ? trace.orders[k] : static_cast<int>(k + 1);
        const auto top = std::max_element(p.begin(), p.end());
        r.peak_population = top == p.end() ? 0.0 : *top;
        r.peak_time_fs = top == p.end() ? 0.0 : t[static_cast<std::size_t>(top - p.begin())];
        for (std::size_t i = 1; i < t.size(); ++i) r.integrated_fs += 0.5 * (t[i] - t[i - 1]) * (p[i] + p[i - 1]);
        out.push_back(r);
    }
    std::stable_sort(out.begin(), out.end(), [metric](const ModeRank& a, const ModeRank& b) {
        const double ka = metric == RankBy::peak ? a.peak_population : a.integrated_fs;
        const double kb = metric == RankBy::peak ? b.peak_population : b.integrated_fs;
        if (ka != kb) return ka > kb;
        return a.order < b.order;
    });
    return out;
}

DecayFit fit_initial_decay(const PopulationTrace& trace) {
    const auto& t = trace.time_fs;
    const auto& p = trace.emitter;
    const double level = std::exp(-1.0);
    std::size_t end = 0;
    while (end < p.size() && p[end] >= level) ++end;
    if (end == p.size()) throw NumericalError("emitter population never drops below 1/e on the time grid");
    if (end < 2) throw NumericalError("decay window resolves fewer than 3 samples; refine the time grid");
    const std::size_t n = end + 1;
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += t[i];
        sy += std::log(p[i]);
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = t[i] - mx, dy = std::log(p[i]) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    DecayFit fit;
    const double slope = sxy / sxx;
    fit.rate_per_fs = -slope;
    fit.intercept = my - slope * mx;
    fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    fit.window_end_fs = t[end];
    return fit;
}

double oscillation_period(const PopulationTrace& trace) {
    const auto& p = trace.emitter;
    std::vector<double> maxima;
    for (std::size_t i = 1; i + 1 < p.size(); ++i) {
        if (p[i] > p[i - 1] && p[i] >= p[i + 1]) maxima.push_back(trace.time_fs[i]);
    }
    if (maxima.size() < 2) throw NumericalError("fewer than two population revivals; no oscillation period");
    return (maxima.back() - maxima.front()) / static_cast<double>(maxima.size() - 1);
}

double golden_rule_rate(const EmitterParams& emitter, const SphereSystem& system, int truncation,
                        GreensBackend backend) {
    const double e = emitter.transition_energy_ev;
    const double im_g = scattered_Guu(system, emitter.geometry, e, truncation, backend).value.imag();
    return (emitter.linewidth_ev + 2.0 * coupling_prefactor(e, emitter.dipole_debye) * im_g) / hbar_ev_fs;
}

bool norm_nonincreasing(const PopulationTrace& trace, double tol) {
    for (std::size_t i = 1; i < trace.norm.size(); ++i) {
        if (trace.norm[i] > trace.norm[i - 1] + tol) return false;
    }
    return true;
}

std::vector<double> default_time_grid() { return linear_grid(0.0, 200.0, 2000); }

} // namespace plasmon
