#pragma once

#include <stdexcept>
#include <string>

#include "curvelast/bulk.hpp"
#include "curvelast/surface.hpp"

// Finite homogeneous deformation of the coated cylinder: the azimuthal
// stretch a(lambda) solves the radial traction balance
//   P33 + (Ps11 + Ms11/A)/A = 0,
// scaled here by 8 a^2 A^3 so the Helfrich case reproduces the closed
// relation between a and lambda term by term.

namespace curvelast {

struct NoBracketError : std::runtime_error {
    double a_lo, a_hi, f_lo, f_hi;
    NoBracketError(double alo, double ahi, double flo, double fhi)
        : std::runtime_error("solve_azimuthal_stretch: no sign change in [" + std::to_string(alo) +
                             ", " + std::to_string(ahi) + "], residuals " + std::to_string(flo) +
                             " / " + std::to_string(fhi)),
          a_lo(alo),
          a_hi(ahi),
          f_lo(flo),
          f_hi(fhi) {}
};

struct Bracket {
    double lo = 0.2;
    double hi = 3.0;
};

double base_residual(double a, double lambda, const BulkMaterial& mat, const SurfaceModel& surf,
                     double A);

// Bisection bracket scan then Newton refinement; the bracket is widened
// geometrically (factor 2, up to 4 times) before giving up.
double solve_azimuthal_stretch(double lambda, const BulkMaterial& mat, const SurfaceModel& surf,
                               double A, Bracket bracket = {});

struct BaseState {
    double lambda_ax = 1.0;
    double a = 1.0;
    double radius_ref = 1.0;
    BulkMaterial mat;
    SurfaceModel surf;

    static BaseState solve(double lambda, const BulkMaterial& mat, const SurfaceModel& surf,
                           double A, Bracket bracket = {});
    double surface_radius() const { return a * radius_ref; }
};

// F_z = pi A^2 P22 + 2 pi A Ps22
double axial_force(double lambda, double a, const BulkMaterial& mat, const SurfaceModel& surf,
                   double A);

// total derivative along the base-state branch, central differences with
// step 1e-6 * lambda
double dFz_dlambda(double lambda, const BulkMaterial& mat, const SurfaceModel& surf, double A,
                   Bracket bracket = {});

// Exact incompressible limit (mu = 1, A = 1): a = lambda^{-1/2} and the
// indeterminate product D (a^4 lambda^2 - 1) replaced by its limit from the
// a-lambda relation.
double axial_force_incompressible(double lambda, const SurfaceModel& surf);

}  // namespace curvelast
