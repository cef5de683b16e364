// sphere_greens.hpp: multipole-resolved scattered Green's tensor of a metal
// sphere for a radially oriented dipole on the sphere axis.
//
// Green's function convention: curl curl G - k^2 G = delta, so that in free
// space Im G_uu(r, r) = k / (6 pi). All values are in 1/nm. Only m = 0 TM
// multipoles couple to the on-axis radial dipole; "order n" collapses the
// 2n+1 sublevels onto that single combination.

#pragma once

#include "plasmon/units.hpp"

#include <vector>

namespace plasmon {

struct SphereSystem {
    double radius_nm = 8.0;
    DrudeMaterial material{};
    double eps_background = 1.0;

    void validate() const;
    cplx permittivity(double energy_ev) const { return drude_permittivity(material, energy_ev); }
    double background_wavenumber(double energy_ev) const;  // 1/nm
};

/// Emitter on the +z axis, dipole along the axis (radial).
struct EmitterGeometry {
    double center_distance_nm = 10.0;

    static EmitterGeometry from_gap(const SphereSystem& s, double gap_nm) { return {s.radius_nm + gap_nm}; }
};

enum class GreensBackend { mie, quasistatic };

const char* to_string(GreensBackend backend) noexcept;

/// Nonretarded multipole polarizability (nm^(2n+1)).
cplx quasistatic_polarizability(const SphereSystem& system, int order, double energy_ev);

/// Order-n nonretarded scattered G_uu at the emitter (1/nm).
cplx quasistatic_scattered_Guu_order(const SphereSystem& system, const EmitterGeometry& geometry, int order,
                                     double energy_ev);

/// Electric (TM) Mie coefficients for orders 1..nmax (index 0 unused), Bohren-Huffman
/// convention for exp(-i w t): lossless spheres satisfy |b_n - 1/2| = 1/2.
std::vector<cplx> mie_coefficients(const SphereSystem& system, int nmax, double energy_ev);
cplx mie_coefficient_b(const SphereSystem& system, int order, double energy_ev);

/// Order-n retarded scattered G_uu at the emitter (1/nm):
/// -(i k / 4 pi) n(n+1)(2n+1) b_n [h1_n(kz) / kz]^2.
cplx mie_scattered_Guu_order(const SphereSystem& system, const EmitterGeometry& geometry, int order,
                             double energy_ev);

/// Per-order contributions for n = 1..nmax (index n-1) from one backend.
std::vector<cplx> scattered_Guu_orders(const SphereSystem& system, const EmitterGeometry& geometry, double energy_ev,
                                       int nmax, GreensBackend backend);

struct ScatteredGreens {
    cplx value;
    int truncation = 0;
    double last_term_ratio = 0.0;  // |term N| / |sum|
};

/// Sum over orders 1..truncation. Non-convergence is reported via last_term_ratio.
ScatteredGreens scattered_Guu(const SphereSystem& system, const EmitterGeometry& geometry, double energy_ev,
                              int truncation, GreensBackend backend = GreensBackend::mie);

/// Sum restricted to the listed orders.
cplx scattered_Guu_subset(const SphereSystem& system, const EmitterGeometry& geometry, double energy_ev,
                          const std::vector<int>& orders, GreensBackend backend);

/// Im G_uu of the homogeneous background at the source point, k / (6 pi).
double free_Guu_imag(const SphereSystem& system, double energy_ev);

struct DetectorPosition {
    double r_nm = 1000.0;
    double theta_rad = constants::pi / 2.0;
};

enum class FieldParts { total, free_only, scattered_only };

/// G(r_det, r_emitter) u in spherical components at the detector (1/nm).
struct GreenColumn {
    cplx radial;
    cplx polar;
    cplx azimuthal;  // identically zero for the on-axis radial source

    double norm2() const { return std::norm(radial) + std::norm(polar) + std::norm(azimuthal); }
    /// u . G u, the literal scalar G_uu(r, r_d) with u the z axis.
    cplx axial(double theta_rad) const;
};

/// Free dyad (analytic) plus the scattered m = 0 TM multipole series evaluated
/// at the detector. Throws GeometryError unless r > R and r > z.
GreenColumn far_field_green_column(const SphereSystem& system, const EmitterGeometry& geometry,
                                   const DetectorPosition& detector, double energy_ev, int truncation,
                                   FieldParts parts = FieldParts::total);

} // namespace plasmon
