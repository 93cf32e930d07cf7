#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "curvelast/base_state.hpp"

// Axisymmetric bifurcation of the coated cylinder. Normal modes
// u = f(r) e^{ikz}, v = g(r) e^{ikz} built from modified Bessel functions;
// the two radial roots and per-mode amplitude ratios reduce the problem to a
// 2x2 boundary determinant Omega(k, lambda).

namespace curvelast {

struct DegenerateRootsError : std::runtime_error {
    DegenerateRootsError() : std::runtime_error("characteristic roots coincide (a = lambda)") {}
};

struct NotARootError : std::runtime_error {
    explicit NotARootError(double res)
        : std::runtime_error("mode residual exceeds tolerance: " + std::to_string(res)) {}
};

// Squared radial root parameters (q1^2, q2^2) of the factorized normal-mode
// operator; q1^2 = (lambda/a)^2 and q2^2 is the companion root of the
// characteristic quadratic. Throws DegenerateRootsError when they coincide.
std::pair<double, double> characteristic_roots(double a, double lambda, const BulkMaterial& mat);

// Residual of the characteristic quadratic at q^2 = qsq, normalized by the
// polynomial's coefficient scale (the q2 interpretation oracle).
double characteristic_poly_residual(double qsq, double a, double lambda, const BulkMaterial& mat);

// Amplitude ratio c = g-amplitude / f-amplitude for the mode with radial
// parameter q (u = I1(kqr) e^{ikz}, v = c I0(kqr) e^{ikz}); purely imaginary.
// Cross-checked between the two equilibrium equations.
std::complex<double> mode_amplitude_ratio(double k, double q, double a, double lambda,
                                          const BulkMaterial& mat);

// Relative residuals of both incremental equilibrium equations for the
// reconstructed mode at radius r.
std::pair<double, double> mode_pde_residual(double k, double q, std::complex<double> c, double a,
                                            double lambda, const BulkMaterial& mat, double r);

struct DispersionProblem {
    BaseState base;
    double k = 0.0;
    double q1sq = 0.0, q2sq = 0.0;
    std::complex<double> mode_ratio[2];
    std::complex<double> boundary_matrix[2][2];
    double omega = 0.0;           // phase-normalized real determinant
    double omega_deflated = 0.0;  // omega / (q1sq - q2sq), no spurious zero at a = lambda
    bool lambda_perturbed = false;

    static DispersionProblem assemble(double k, const BaseState& base, bool validate_modes = true);
};

// 2x2 boundary-condition matrix, column j = conditions evaluated on mode j.
// Exposed for tests; dispersion_det is the scalar wrapper.
DispersionProblem boundary_matrix(double k, double lambda, const BulkMaterial& mat,
                                  const SurfaceModel& surf, double A);

double dispersion_det(double k, double lambda, const BulkMaterial& mat, const SurfaceModel& surf,
                      double A);

// Closed-form incompressible dispersion function (mu = 1, A = 1
// normalization), bending/tension surface energy.
double dispersion_det_incompressible(double k, double lambda, double gamma, double beta_s,
                                     double h0);

struct BifurcationPoint {
    double k = 0.0;
    double lambda_crit = 0.0;
    double a = 0.0;
    double omega_residual = 0.0;
};

// Largest root of Omega(k, .) in [lambda_lo, lambda_hi]: 64-interval
// bisection scan then Brent refinement on the deflated determinant.
// Throws NoBracketError when no sign change is found.
BifurcationPoint critical_stretch(double k, const BulkMaterial& mat, const SurfaceModel& surf,
                                  double A, double lambda_lo, double lambda_hi);

// Same on the closed incompressible form; the trivial lambda = 1 zero is
// deflated away.
BifurcationPoint critical_stretch_incompressible(double k, double gamma, double beta_s, double h0,
                                                 double lambda_lo, double lambda_hi);

// Per-k critical stretch with continuation: the previous root seeds a +/-20%
// bracket, falling back to the full range; missing roots are left empty.
std::vector<std::optional<BifurcationPoint>> bifurcation_curve(const std::vector<double>& k_grid,
                                                               const BulkMaterial& mat,
                                                               const SurfaceModel& surf, double A,
                                                               double lambda_lo, double lambda_hi);

std::vector<std::optional<BifurcationPoint>> bifurcation_curve_incompressible(
    const std::vector<double>& k_grid, double gamma, double beta_s, double h0, double lambda_lo,
    double lambda_hi);

}  // namespace curvelast
