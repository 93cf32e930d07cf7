#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <utility>

#include "curvelast/tensor.hpp"

// Surface constitutive layer: stretching-resistance and Helfrich bending
// models plus a generic principal-form energy. The base surface stress and
// moment are diag(dPsi/dl_alpha) and diag(dPsi/dk_alpha); the incremental
// response is carried by four stiffness blocks mapping (eta_s, rho_s) to the
// incremental stress and moment measures (sigma_s, m_s).

namespace curvelast {

enum class SurfaceKind { SurfaceTensionOnly, StretchResistance, HelfrichBending, GenericPrincipal };

// Value and first/second derivatives of the principal-form energy
// Psi(l1, l2, k1, k2). Variable order: l1, l2, k1, k2.
struct PrincipalDerivs {
    double psi = 0.0;
    std::array<double, 4> d1{};
    std::array<std::array<double, 4>, 4> d2{};
};

using PrincipalEnergyFn = std::function<PrincipalDerivs(double, double, double, double)>;

struct SurfaceModel {
    SurfaceKind kind = SurfaceKind::SurfaceTensionOnly;
    double gamma = 0.0;    // surface tension
    double alpha_s = 0.0;  // stretching rigidity (StretchResistance only)
    double beta_s = 0.0;   // bending rigidity (HelfrichBending only)
    double h0 = 0.0;       // spontaneous curvature (HelfrichBending only)
    PrincipalEnergyFn principal;  // GenericPrincipal only

    static SurfaceModel tension(double gamma);
    static SurfaceModel stretch(double gamma, double alpha_s);
    static SurfaceModel helfrich(double gamma, double beta_s, double h0);
    static SurfaceModel generic(PrincipalEnergyFn fn);

    bool curvature_dependent() const { return kind == SurfaceKind::HelfrichBending || kind == SurfaceKind::GenericPrincipal; }
};

// Aligned state: principal surface stretches and relative curvatures.
// On the cylinder: lam1 = a, lam2 = lambda, kap1 = a/A, kap2 = 0.
struct SurfacePrincipalState {
    double lam1 = 1.0;
    double lam2 = 1.0;
    double kap1 = 0.0;
    double kap2 = 0.0;
    double radius_ref = 1.0;

    static SurfacePrincipalState cylinder(double a, double lambda, double A) {
        if (a <= 0.0 || lambda <= 0.0 || A <= 0.0)
            throw std::domain_error("SurfacePrincipalState: positive stretches/radius required");
        return {a, lambda, a / A, 0.0, A};
    }
    double js_bar() const { return lam1 * lam2; }
};

// The six invariants of (C_s, kappa) at an aligned state (I6 = 0).
struct SurfaceInvariants {
    double i1 = 0.0, i2 = 0.0, i3 = 0.0, i4 = 0.0, i5 = 0.0, i6 = 0.0;

    static SurfaceInvariants from_state(const SurfacePrincipalState& s) {
        SurfaceInvariants v;
        const double l1sq = s.lam1 * s.lam1, l2sq = s.lam2 * s.lam2;
        v.i1 = l1sq + l2sq;
        v.i2 = l1sq * l2sq;
        v.i3 = s.kap1 + s.kap2;
        v.i4 = s.kap1 * s.kap2;
        v.i5 = l1sq * s.kap1 + l2sq * s.kap2;
        v.i6 = 0.0;
        return v;
    }
};

// First/second derivatives of the invariant-form energy Psi(I1..I6).
struct InvariantDerivs {
    std::array<double, 6> d1{};
    std::array<std::array<double, 6>, 6> d2{};
};

using InvariantEnergyFn = std::function<double(const std::array<double, 6>&)>;

// Four stiffness blocks in the orthonormal basis (indices 0,1 in-plane,
// 2 normal):  sigma_s = A : eta_s + B : rho_s,  m_s = C : eta_s + D : rho_s.
// B and D act on the symmetric rho_s; their off-diagonal slots hold the
// symmetrized halves.
struct SurfaceModuli {
    Tensor4Block A, B, C, D;
    double js_bar = 1.0;
};

// Principal-form derivative table for the shipped models (closed forms) or
// the stored callback for GenericPrincipal.
PrincipalDerivs principal_derivs(const SurfaceModel& model, double l1, double l2, double k1,
                                 double k2);

// Invariant-form derivative table for the shipped models (closed forms).
// Throws for GenericPrincipal (no invariant representation is stored).
InvariantDerivs invariant_derivs(const SurfaceModel& model, const SurfaceInvariants& inv);

// Energy per unit reference area.
double surface_energy(const SurfaceModel& model, const SurfacePrincipalState& s);

// Base surface stress and moment in the intermediate configuration,
// diagonal in (e_theta, e_z): (P_s, M_s).
std::pair<Tensor2, Tensor2> base_surface_stress_moment(const SurfaceModel& model, double a,
                                                       double lambda, double A);

// Aligned-state moduli from the principal form. The transverse
// (alpha beta alpha beta) entries use the two-stretch / two-curvature ratio
// formulas with analytic limits at equal stretches or curvatures; those
// limits exist only when the paired first derivatives coincide at equality
// (always true without stretch-curvature coupling).
SurfaceModuli surface_moduli_aligned(const SurfaceModel& model, const SurfacePrincipalState& s);

// Full moduli from invariant derivatives, including the I6-coupled entries.
SurfaceModuli surface_moduli_invariant(const InvariantDerivs& psi, const SurfacePrincipalState& s);

// Finite-difference oracle, principal sector: central differences of the
// base stress/moment diag(dPsi/dl), diag(dPsi/dk) over aligned perturbations
// plus the out-of-plane stress rows. Populates the blocks reachable from the
// principal form. step must lie in [1e-7, 1e-4].
SurfaceModuli fd_surface_moduli_oracle(const SurfaceModel& model, const SurfacePrincipalState& s,
                                       double step);

// Finite-difference oracle, full sector: differentiates the invariant-form
// stress P_s(F_s, kappa) and moment M_s(F_s, kappa) along arbitrary (eta,
// rho) directions and assembles the same blocks, including the geometric
// terms. Ground truth for surface_moduli_invariant.
SurfaceModuli fd_surface_moduli_oracle_invariant(const InvariantEnergyFn& psi,
                                                 const SurfacePrincipalState& s, double step);

// Coefficient tables of the incremental actual surface stress components on
// the cylinder (generic assembly: stress/moment measures, curvature terms,
// surface divergence of the moment measure, and the geometric terms):
//   chi_s11 = c11_u u + c11_vz v_z + c11_uzz u_zz
//   chi_s22 = c22_u u + c22_vz v_z + c22_uzz u_zz
//   chi_s32 = c32_uz u_z + c32_vzz v_zz + c32_uzzz u_zzz
struct SurfaceIncrementalCoeffs {
    double c11_u = 0.0, c11_vz = 0.0, c11_uzz = 0.0;
    double c22_u = 0.0, c22_vz = 0.0, c22_uzz = 0.0;
    double c32_uz = 0.0, c32_vzz = 0.0, c32_uzzz = 0.0;
};

SurfaceIncrementalCoeffs incremental_surface_coeffs(const SurfaceModel& model, double a,
                                                    double lambda, double A);

// The printed Helfrich component table (golden oracle for the generic path).
SurfaceIncrementalCoeffs helfrich_coeffs_printed(double gamma, double beta_s, double h0, double a,
                                                 double lambda, double A);

}  // namespace curvelast
