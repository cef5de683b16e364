#include "doctest.h"

#include "plasmon/errors.hpp"
#include "plasmon/special_functions.hpp"
#include "plasmon/sphere_greens.hpp"

#include <cmath>

using namespace plasmon;
using constants::pi;

namespace {

const SphereSystem kSilver8{8.0, DrudeMaterial::silver(), 1.0};
const EmitterGeometry kGap2{10.0};

/// Radiated power relative to the same dipole in free space, from the Mie
/// multipole expansion of the total field at infinity.
double radiative_enhancement(const SphereSystem& s, const EmitterGeometry& g, double e, int nmax) {
    const double k = s.background_wavenumber(e);
    const double kz = k * g.center_distance_nm;
    const auto b = mie_coefficients(s, nmax, e);
    const auto bz = special::spherical_bessel(nmax, kz);
    double sum = 0.0;
    for (int n = 1; n <= nmax; ++n) {
        const cplx t = (bz.j[n] - b[n] * bz.hankel1(n)) / kz;
        sum += n * (n + 1.0) * (2.0 * n + 1.0) * std::norm(t);
    }
    return 1.5 * sum;
}

double angular_power(const SphereSystem& s, const EmitterGeometry& g, double e, double r, int nmax, FieldParts parts) {
    const int m = 1201;
    double acc = 0.0;
    for (int i = 0; i < m; ++i) {
        const double th = pi * i / (m - 1);
        const double w = (i == 0 || i == m - 1) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        const auto col = far_field_green_column(s, g, DetectorPosition{r, th}, e, nmax, parts);
        acc += w * col.norm2() * std::sin(th);
    }
    return acc * (pi / (m - 1)) / 3.0 * 2.0 * pi * r * r;
}

} // namespace

TEST_CASE("quasi-static polarizability closed form") {
    const double e = 2.9;
    const cplx eps = kSilver8.permittivity(e);
    for (int n : {1, 2, 5}) {
        const cplx expected = std::pow(8.0, 2 * n + 1) * double(n) * (eps - 1.0) / (double(n) * eps + double(n + 1));
        CHECK(std::abs(quasistatic_polarizability(kSilver8, n, e) - expected) < 1e-12 * std::abs(expected));
    }
}

TEST_CASE("quasi-static and Mie agree for a small sphere") {
    const SphereSystem small{1.0, DrudeMaterial::silver(), 1.0};
    const EmitterGeometry g{1.5};
    for (double e : {2.2, 2.7, 2.9, 3.3}) {
        for (int n = 1; n <= 8; ++n) {
            const cplx qs = quasistatic_scattered_Guu_order(small, g, n, e);
            const cplx mie = mie_scattered_Guu_order(small, g, n, e);
            CHECK(std::abs(mie - qs) / std::abs(qs) < 0.02);
        }
    }
}

TEST_CASE("lossless dielectric sphere is unitary") {
    const SphereSystem glass{20.0, DrudeMaterial{2.25, 0.0, 0.05}, 1.0};
    for (double e : {0.5, 2.0, 5.0}) {
        const auto b = mie_coefficients(glass, 40, e);
        for (int n = 1; n <= 40; ++n) CHECK(std::abs(std::abs(b[n] - 0.5) - 0.5) < 1e-12);
    }
}

TEST_CASE("absorbing sphere stays inside the unitarity disc") {
    for (double e : {2.5, 2.8, 3.0}) {
        const auto b = mie_coefficients(kSilver8, 30, e);
        for (int n = 1; n <= 30; ++n) CHECK(std::abs(b[n] - 0.5) <= 0.5);
    }
}

TEST_CASE("free-space LDOS") {
    CHECK(free_Guu_imag(kSilver8, 2.9) == doctest::Approx(vacuum_wavenumber(2.9) / (6.0 * pi)).epsilon(1e-14));
}

TEST_CASE("scattered LDOS is positive order by order") {
    for (auto backend : {GreensBackend::mie, GreensBackend::quasistatic}) {
        for (double e = 2.0; e <= 3.4; e += 0.01) {
            const auto t = scattered_Guu_orders(kSilver8, kGap2, e, 25, backend);
            for (const auto& v : t) CHECK(v.imag() > 0.0);
        }
    }
}

TEST_CASE("multipole series convergence at N = 25") {
    for (double e : {2.79, 2.92, 3.0}) {
        const auto g25 = scattered_Guu(kSilver8, kGap2, e, 25);
        const auto g50 = scattered_Guu(kSilver8, kGap2, e, 50);
        CHECK(std::abs(g25.value - g50.value) / std::abs(g50.value) < 0.02);
        CHECK(g25.truncation == 25);
        CHECK(g25.last_term_ratio < 0.01);
    }
}

TEST_CASE("subset sum matches the per-order terms") {
    const auto t = scattered_Guu_orders(kSilver8, kGap2, 2.9, 5, GreensBackend::mie);
    const cplx s = scattered_Guu_subset(kSilver8, kGap2, 2.9, {2, 3}, GreensBackend::mie);
    CHECK(std::abs(s - (t[1] + t[2])) < 1e-15 * std::abs(s));
    CHECK_THROWS(scattered_Guu_subset(kSilver8, kGap2, 2.9, {}, GreensBackend::mie));
}

TEST_CASE("free column is the transverse dipole field in the far zone") {
    const double e = 2.8, r = 2.0e4;
    const double k = kSilver8.background_wavenumber(e);
    for (double th : {0.3, pi / 2, 2.5}) {
        const auto col = far_field_green_column(kSilver8, kGap2, DetectorPosition{r, th}, e, 25, FieldParts::free_only);
        // |G u| -> sin(theta') / (4 pi R) with theta' measured from the emitter.
        const double x = r * std::sin(th), zz = r * std::cos(th) - kGap2.center_distance_nm;
        const double big_r = std::hypot(x, zz);
        const double expected = (x / big_r) / (4.0 * pi * big_r);
        CHECK(std::sqrt(col.norm2()) == doctest::Approx(expected).epsilon(2.0 / (k * big_r)));
    }
}

TEST_CASE("far-field power balance") {
    for (double e : {2.6, 2.79, 2.95}) {
        const double ratio = angular_power(kSilver8, kGap2, e, 2.0e4, 30, FieldParts::total) /
                             angular_power(kSilver8, kGap2, e, 2.0e4, 30, FieldParts::free_only);
        CHECK(ratio == doctest::Approx(radiative_enhancement(kSilver8, kGap2, e, 30)).epsilon(1e-4));
    }
}

TEST_CASE("scattered field decays as 1/r") {
    const double e = 2.86;
    const auto a = far_field_green_column(kSilver8, kGap2, DetectorPosition{1.0e4, 1.0}, e, 25, FieldParts::scattered_only);
    const auto b = far_field_green_column(kSilver8, kGap2, DetectorPosition{2.0e4, 1.0}, e, 25, FieldParts::scattered_only);
    CHECK(std::sqrt(a.norm2()) * 1.0e4 == doctest::Approx(std::sqrt(b.norm2()) * 2.0e4).epsilon(1e-3));
}

TEST_CASE("scalar projection") {
    const auto col = far_field_green_column(kSilver8, kGap2, DetectorPosition{1000.0, pi / 2}, 2.8, 25);
    CHECK(std::abs(col.axial(pi / 2) + col.polar) < 1e-15 * std::abs(col.polar));
    CHECK(col.azimuthal == cplx(0.0, 0.0));
}

TEST_CASE("geometry errors") {
    CHECK_THROWS_AS(far_field_green_column(kSilver8, kGap2, DetectorPosition{5.0, 1.0}, 2.8, 10), GeometryError);
    CHECK_THROWS_AS(far_field_green_column(kSilver8, kGap2, DetectorPosition{9.0, 1.0}, 2.8, 10), GeometryError);
    CHECK_THROWS_AS(scattered_Guu(kSilver8, EmitterGeometry{7.0}, 2.8, 10), GeometryError);
    CHECK_THROWS(SphereSystem{-1.0, DrudeMaterial::silver(), 1.0}.validate());
}
