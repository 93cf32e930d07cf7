#include "curvelast/base_state.hpp"

#include <cmath>

namespace curvelast {

double base_residual(double a, double lambda, const BulkMaterial& mat, const SurfaceModel& surf,
                     double A) {
    if (a <= 0.0 || lambda <= 0.0 || A <= 0.0)
        throw std::domain_error("base_residual: positive arguments required");
    const Tensor2 p = base_pk1(a, lambda, mat);
    const auto [ps, ms] = base_surface_stress_moment(surf, a, lambda, A);
    const double balance = p(2, 2) + (ps(0, 0) + ms(0, 0) / A) / A;
    return 8.0 * a * a * A * A * A * balance;
}

double solve_azimuthal_stretch(double lambda, const BulkMaterial& mat, const SurfaceModel& surf,
                               double A, Bracket bracket) {
    auto f = [&](double a) { return base_residual(a, lambda, mat, surf, A); };

    double lo = bracket.lo, hi = bracket.hi;
    double flo = f(lo), fhi = f(hi);
    for (int widen = 0; widen < 4 && flo * fhi > 0.0; ++widen) {
        lo *= 0.5;
        hi *= 2.0;
        flo = f(lo);
        fhi = f(hi);
    }
    if (flo * fhi > 0.0) throw NoBracketError(lo, hi, flo, fhi);

    for (int it = 0; it < 200 && hi - lo > 1e-6 * lo; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) {
            lo = hi = mid;
            break;
        }
        if (flo * fm < 0.0) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }

    // Newton refinement with a numeric derivative, clamped to the bracket.
    // Iterates to machine precision in a; the residual bound
    // |f| <= 1e-12 max(mu, D) A^3 is then met with a wide margin.
    double a = 0.5 * (lo + hi);
    for (int it = 0; it < 60; ++it) {
        const double fa = f(a);
        if (fa == 0.0) break;
        const double h = 1e-7 * a;
        const double df = (f(a + h) - f(a - h)) / (2.0 * h);
        if (df == 0.0) break;
        double next = a - fa / df;
        if (next <= lo || next >= hi) next = 0.5 * (lo + hi);
        if (fa * flo < 0.0)
            hi = a;
        else
            lo = a;
        if (std::fabs(next - a) <= 4e-16 * a) {
            a = next;
            break;
        }
        a = next;
    }
    return a;
}

BaseState BaseState::solve(double lambda, const BulkMaterial& mat, const SurfaceModel& surf,
                           double A, Bracket bracket) {
    BaseState s;
    s.lambda_ax = lambda;
    s.radius_ref = A;
    s.mat = mat;
    s.surf = surf;
    s.a = solve_azimuthal_stretch(lambda, mat, surf, A, bracket);
    return s;
}

double axial_force(double lambda, double a, const BulkMaterial& mat, const SurfaceModel& surf,
                   double A) {
    const Tensor2 p = base_pk1(a, lambda, mat);
    const auto [ps, ms] = base_surface_stress_moment(surf, a, lambda, A);
    (void)ms;
    return M_PI * A * A * p(1, 1) + 2.0 * M_PI * A * ps(1, 1);
}

double dFz_dlambda(double lambda, const BulkMaterial& mat, const SurfaceModel& surf, double A,
                   Bracket bracket) {
    const double h = 1e-6 * lambda;
    auto F = [&](double l) {
        const double a = solve_azimuthal_stretch(l, mat, surf, A, bracket);
        return axial_force(l, a, mat, surf, A);
    };
    return (F(lambda + h) - F(lambda - h)) / (2.0 * h);
}

double axial_force_incompressible(double lambda, const SurfaceModel& surf) {
    if (lambda <= 0.0) throw std::domain_error("axial_force_incompressible: lambda must be positive");
    const double a = 1.0 / std::sqrt(lambda);
    const auto [ps, ms] = base_surface_stress_moment(surf, a, lambda, 1.0);
    (void)ms;
    // lim D (a^4 lambda^2 - 1) from the radial balance at A = 1, mu = 1
    const double dlim =
        -2.0 * (a * a - 1.0) - 2.0 * surf.gamma * lambda * a -
        surf.beta_s * lambda * (4.0 * a * a * surf.h0 * surf.h0 - 1.0) / (4.0 * a);
    const double p22 = (lambda - 1.0 / lambda) + 0.5 * dlim / lambda;
    return M_PI * p22 + 2.0 * M_PI * ps(1, 1);
}

}  // namespace curvelast
