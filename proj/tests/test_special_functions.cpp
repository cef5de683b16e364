#include "doctest.h"

#include "plasmon/special_functions.hpp"

#include <cmath>

using namespace plasmon;
using namespace plasmon::special;

TEST_CASE("spherical Bessel functions against the standard library") {
    for (double x : {0.05, 0.3, 1.0, 4.7, 20.0, 60.0}) {
        const auto b = spherical_bessel(40, x);
        for (unsigned n = 0; n <= 40; ++n) {
            const double j = std::sph_bessel(n, x);
            if (std::abs(j) > 1e-280) {
                CHECK(b.j[n] == doctest::Approx(j).epsilon(1e-11));
            }
            const double y = std::sph_neumann(n, x);
            if (std::isfinite(y)) {
                CHECK(b.y[n] == doctest::Approx(y).epsilon(1e-11));
            }
        }
    }
}

TEST_CASE("spherical Bessel closed forms") {
    const double x = 2.3;
    const auto b = spherical_bessel(2, x);
    CHECK(b.j[0] == doctest::Approx(std::sin(x) / x).epsilon(1e-14));
    CHECK(b.j[1] == doctest::Approx(std::sin(x) / (x * x) - std::cos(x) / x).epsilon(1e-13));
    CHECK(b.y[0] == doctest::Approx(-std::cos(x) / x).epsilon(1e-14));
    const cplx h0 = b.hankel1(0);
    const cplx expected = cplx(0.0, -1.0) * std::exp(cplx(0.0, x)) / x;
    CHECK(std::abs(h0 - expected) < 1e-14);
}

TEST_CASE("Riccati log derivative at real argument") {
    const double x = 1.7;
    const auto d = riccati_log_derivative(20, cplx(x, 0.0));
    for (unsigned n = 1; n <= 20; ++n) {
        const double expected = std::sph_bessel(n - 1, x) / std::sph_bessel(n, x) - n / x;
        CHECK(d[n].real() == doctest::Approx(expected).epsilon(1e-10));
        CHECK(std::abs(d[n].imag()) < 1e-12);
    }
}

TEST_CASE("Riccati log derivative at complex argument satisfies the recurrence") {
    const cplx z(0.4, 2.1);
    const auto d = riccati_log_derivative(30, z);
    // D_{n-1} = n/z - 1/(D_n + n/z)
    for (int n = 1; n <= 30; ++n) {
        const cplx nz = static_cast<double>(n) / z;
        CHECK(std::abs(d[n - 1] - (nz - 1.0 / (d[n] + nz))) < 1e-10 * (1.0 + std::abs(d[n - 1])));
    }
    CHECK(std::abs(d[0] - (std::cos(z) / std::sin(z))) < 1e-12);
}

TEST_CASE("Legendre functions") {
    for (double mu : {-0.9, 0.0, 0.35, 1.0}) {
        const auto l = legendre(12, mu);
        for (unsigned n = 0; n <= 12; ++n) CHECK(l.p[n] == doctest::Approx(std::legendre(n, mu)).epsilon(1e-13));
        CHECK(l.dp[1] == doctest::Approx(1.0));
        CHECK(l.dp[2] == doctest::Approx(3.0 * mu));
        CHECK(l.dp[3] == doctest::Approx(0.5 * (15.0 * mu * mu - 3.0)));
    }
    const auto end = legendre(10, 1.0);
    for (int n = 0; n <= 10; ++n) CHECK(end.dp[n] == doctest::Approx(0.5 * n * (n + 1.0)));
}
