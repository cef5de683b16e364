// special_functions.hpp: spherical Bessel family and Legendre angular functions
// needed by the multipole sphere response.

#pragma once

#include "plasmon/units.hpp"

#include <vector>

namespace plasmon::special {

/// j_n(x) and y_n(x) for n = 0..nmax at real x > 0.
///
/// j_n comes from Miller's downward recurrence normalised with
/// sum_n (2n+1) j_n^2 = 1, y_n from upward recurrence (stable for both).
struct SphericalBessel {
    std::vector<double> j;
    std::vector<double> y;

    cplx hankel1(int n) const { return {j[n], y[n]}; }
    /// d/dx [x h1_n(x)] = x h1_{n-1}(x) - n h1_n(x), valid for n >= 1.
    cplx riccati_hankel_derivative(int n, double x) const { return x * hankel1(n - 1) - static_cast<double>(n) * hankel1(n); }
};

SphericalBessel spherical_bessel(int nmax, double x);

/// Logarithmic derivative D_n(z) = psi_n'(z) / psi_n(z) of the Riccati-Bessel
/// function psi_n(z) = z j_n(z), n = 0..nmax, by downward recurrence.
std::vector<cplx> riccati_log_derivative(int nmax, cplx z);

/// Legendre P_n(mu) and pi_n(mu) = dP_n/dmu for n = 0..nmax. The polar
/// derivative used by the m = 0 multipoles is dP_n/dtheta = -sin(theta) pi_n.
struct Legendre {
    std::vector<double> p;
    std::vector<double> dp;
};

Legendre legendre(int nmax, double mu);

} // namespace plasmon::special
