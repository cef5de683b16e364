#include "plasmon/special_functions.hpp"

#include "plasmon/errors.hpp"

#include <cmath>

namespace plasmon::special {

SphericalBessel spherical_bessel(int nmax, double x) {
    if (nmax < 0) throw DomainError("spherical_bessel: nmax must be >= 0");
    if (!(x > 0.0)) throw DomainError("spherical_bessel: argument must be > 0");
    SphericalBessel out;
    const int keep = std::max(nmax, 1);  // j_1 is needed for the sign fix
    out.j.assign(keep + 1, 0.0);
    out.y.assign(nmax + 1, 0.0);

    const double span = std::max(static_cast<double>(nmax), x);
    const int start = static_cast<int>(span + 20.0 + std::ceil(std::sqrt(40.0 * span)));
    // Downward recurrence j_{n-1} = (2n+1)/x j_n - j_{n+1}, arbitrary scale.
    double upper = 0.0;
    double current = 1e-20;
    double norm = 0.0;
    for (int n = start; n >= 1; --n) {
        const double lower = (2.0 * n + 1.0) / x * current - upper;
        upper = current;
        current = lower;
        if (n - 1 <= keep) out.j[n - 1] = current;
        norm += (2.0 * (n - 1) + 1.0) * current * current;
        if (std::abs(current) > 1e100) {
            const double s = 1e-100;
            upper *= s;
            current *= s;
            norm *= s * s;
            for (int k = n - 1; k <= keep; ++k) out.j[k] *= s;
        }
    }
    // The n = start term omitted from `norm` is negligible by construction.
    const double scale = 1.0 / std::sqrt(norm);
    // Fix the overall sign against whichever of j_0, j_1 is farther from a zero.
    const double j0 = std::sin(x) / x;
    const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
    const bool use_j0 = std::abs(j0) >= std::abs(j1);
    const double sign = ((use_j0 ? j0 : j1) * (use_j0 ? out.j[0] : out.j[1]) >= 0.0) ? 1.0 : -1.0;
    for (auto& v : out.j) v *= sign * scale;
    out.j.resize(nmax + 1);

    out.y[0] = -std::cos(x) / x;
    if (nmax >= 1) out.y[1] = -std::cos(x) / (x * x) - std::sin(x) / x;
    for (int n = 1; n < nmax; ++n) out.y[n + 1] = (2.0 * n + 1.0) / x * out.y[n] - out.y[n - 1];
    return out;
}

std::vector<cplx> riccati_log_derivative(int nmax, cplx z) {
    if (nmax < 0) throw DomainError("riccati_log_derivative: nmax must be >= 0");
    if (std::abs(z) == 0.0) throw DomainError("riccati_log_derivative: argument must be nonzero");
    const int start = static_cast<int>(std::max(static_cast<double>(nmax), std::abs(z)) + 16.0 + std::sqrt(std::abs(z)));
    std::vector<cplx> d(nmax + 1);
    cplx current{0.0, 0.0};
    for (int n = start; n >= 1; --n) {
        const cplx ratio = static_cast<double>(n) / z;
        current = ratio - 1.0 / (current + ratio);
        if (n - 1 <= nmax) d[n - 1] = current;
    }
    return d;
}

Legendre legendre(int nmax, double mu) {
    if (nmax < 0) throw DomainError("legendre: nmax must be >= 0");
    Legendre out;
    out.p.assign(nmax + 1, 0.0);
    out.dp.assign(nmax + 1, 0.0);
    out.p[0] = 1.0;
    if (nmax >= 1) {
        out.p[1] = mu;
        out.dp[1] = 1.0;
    }
    for (int n = 2; n <= nmax; ++n) {
        out.p[n] = ((2.0 * n - 1.0) * mu * out.p[n - 1] - (n - 1.0) * out.p[n - 2]) / n;
        out.dp[n] = ((2.0 * n - 1.0) * mu * out.dp[n - 1] - static_cast<double>(n) * out.dp[n - 2]) / (n - 1.0);
    }
    return out;
}

} // namespace plasmon::special
