#pragma once

#include <stdexcept>

#include "curvelast/tensor.hpp"

// Compressible neo-Hookean bulk model:
//   W = mu/2 (I1 - 3 - 2 ln J) + D/2 ((J^2 - 1)/2 - ln J)
// with the homogeneous base state F = diag(a, lambda, a), J = a^2 lambda.
// The closed coefficient table for the incremental actual stress chi is the
// production path; the general metric-based tangent moduli are the oracle.

namespace curvelast {

struct BulkMaterial {
    double mu = 1.0;         // shear modulus
    double d_modulus = 0.0;  // second Lame-type modulus D

    BulkMaterial() = default;
    BulkMaterial(double mu_, double d_) : mu(mu_), d_modulus(d_) {
        if (mu <= 0.0) throw std::domain_error("BulkMaterial: mu must be positive");
        if (d_modulus < 0.0) throw std::domain_error("BulkMaterial: D must be nonnegative");
    }

    // nu = D / (2 (D + mu)), in [0, 1/2)
    double poisson() const { return d_modulus / (2.0 * (d_modulus + mu)); }

    static BulkMaterial from_poisson(double mu_, double nu) {
        if (nu < 0.0 || nu >= 0.5) throw std::domain_error("BulkMaterial: nu must lie in [0, 1/2)");
        return BulkMaterial(mu_, 2.0 * nu * mu_ / (1.0 - 2.0 * nu));
    }
};

// Axisymmetric incremental displacement-gradient components in the
// orthonormal basis: eta = (u/r) e_tt + v_z e_zz + v_r e_zr + u_z e_rz + u_r e_rr.
struct AxisymGradient {
    double u_over_r = 0.0;
    double dv_dz = 0.0;
    double dv_dr = 0.0;
    double du_dz = 0.0;
    double du_dr = 0.0;

    Tensor2 as_tensor() const {
        Tensor2 t;
        t(0, 0) = u_over_r;
        t(1, 1) = dv_dz;
        t(1, 2) = dv_dr;
        t(2, 1) = du_dz;
        t(2, 2) = du_dr;
        return t;
    }
};

// The ten scalar coefficients of the closed table for chi:
//   chi11 = diag_hoop * (u/r)   + cross * (du/dr + dv/dz)
//   chi22 = diag_axial * dv/dz  + cross * (du/dr + u/r)
//   chi33 = diag_hoop * du/dr   + cross * (dv/dz + u/r)
//   chi23 = shear_mixed * du/dz + shear_zr * dv/dr
//   chi32 = shear_mixed * dv/dr + shear_rz * du/dz
struct IncrementalBulkCoeffs {
    double diag_hoop = 0.0;    // (2 mu (a^2+1) + D S) / (2 a^2 lambda), S = a^4 lambda^2 + 1
    double diag_axial = 0.0;   // (2 mu (lambda^2+1) + D S) / (2 a^2 lambda)
    double cross = 0.0;        // D a^2 lambda
    double shear_mixed = 0.0;  // (2 mu + D (1 - a^4 lambda^2)) / (2 a^2 lambda)
    double shear_zr = 0.0;     // mu / lambda
    double shear_rz = 0.0;     // mu lambda / a^2

    Tensor2 evaluate(const AxisymGradient& g) const {
        Tensor2 chi;
        chi(0, 0) = diag_hoop * g.u_over_r + cross * (g.du_dr + g.dv_dz);
        chi(1, 1) = diag_axial * g.dv_dz + cross * (g.du_dr + g.u_over_r);
        chi(2, 2) = diag_hoop * g.du_dr + cross * (g.dv_dz + g.u_over_r);
        chi(1, 2) = shear_mixed * g.du_dz + shear_zr * g.dv_dr;
        chi(2, 1) = shear_mixed * g.dv_dr + shear_rz * g.du_dz;
        return chi;
    }
};

// W(a, a, lambda); domain error on nonpositive stretch.
double bulk_energy(double a, double lambda, const BulkMaterial& mat);

// Base first Piola-Kirchhoff stress, diagonal, P11 = P33.
Tensor2 base_pk1(double a, double lambda, const BulkMaterial& mat);

IncrementalBulkCoeffs incremental_bulk_coeffs(double a, double lambda, const BulkMaterial& mat);

// Tangent moduli assembled through the metric formulation on the adapted
// curvilinear chart, converted to physical components: contracting the
// result with an orthonormal eta gives the physical components of the
// incremental nominal stress. chart_radius is the coordinate radius R of the
// evaluation point; physical components are independent of it.
Tensor4Block bulk_moduli_check(double a, double lambda, const BulkMaterial& mat,
                               double chart_radius = 1.0);

// chi = Jbar^-1 (A : eta) Fbar^T with Fbar = diag(a, lambda, a).
Tensor2 chi_from_moduli(const Tensor4Block& moduli, const Tensor2& eta, double a, double lambda);

}  // namespace curvelast
