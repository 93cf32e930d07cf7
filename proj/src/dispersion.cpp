#include "curvelast/dispersion.hpp"

#include <algorithm>
#include <cmath>

#include "curvelast/bessel.hpp"

namespace curvelast {

namespace {

struct PdeCoeffs {
    double a1, a2, a3, a4;  // eq. coefficients of the two equilibrium equations
};

PdeCoeffs pde_coeffs(double a, double lambda, const BulkMaterial& mat) {
    const double mu = mat.mu, D = mat.d_modulus;
    const double S = a * a * a * a * lambda * lambda + 1.0;
    return {2.0 * mu * (1.0 + lambda * lambda) + D * S, 2.0 * mu * a * a, 2.0 * mu + D * S,
            2.0 * mu * (a * a + 1.0) + D * S};
}

// Brent root refinement on a bracketing interval.
template <typename F>
double brent(F f, double x1, double x2, double f1, double f2, double xtol) {
    double a = x1, b = x2, c = x2;
    double fa = f1, fb = f2, fc = f2;
    double d = b - a, e = b - a;
    for (int iter = 0; iter < 100; ++iter) {
        if (fb * fc > 0.0) {
            c = a;
            fc = fa;
            e = d = b - a;
        }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 2.0 * 1e-16 * std::fabs(b) + 0.5 * xtol;
        const double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || fb == 0.0) return b;
        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::fabs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::fabs(tol1 * q), std::fabs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::fabs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
    }
    return b;
}

}  // namespace

double characteristic_poly_residual(double qsq, double a, double lambda, const BulkMaterial& mat) {
    const auto c = pde_coeffs(a, lambda, mat);
    const double mu = mat.mu, D = mat.d_modulus;
    const double a2 = a * a, l2 = lambda * lambda;
    const double S = a2 * a2 * l2 + 1.0;
    // a3^2 - 2 mu l^2 a2 - a1 a4, expanded so the D^2 S^2 parts cancel exactly
    const double middle =
        -2.0 * mu * D * S * (l2 + a2) - 4.0 * mu * mu * (l2 + a2 + 2.0 * l2 * a2);
    const double t1 = c.a2 * c.a4 * qsq * qsq;
    const double t2 = middle * qsq;
    const double t3 = 2.0 * mu * l2 * c.a1;
    const double scale = std::fabs(t1) + std::fabs(t2) + std::fabs(t3);
    return std::fabs(t1 + t2 + t3) / scale;
}

std::pair<double, double> characteristic_roots(double a, double lambda, const BulkMaterial& mat) {
    if (a <= 0.0 || lambda <= 0.0)
        throw std::domain_error("characteristic_roots: stretches must be positive");
    const auto c = pde_coeffs(a, lambda, mat);
    const double q1sq = (lambda / a) * (lambda / a);
    const double q2sq = c.a1 / c.a4;
    if (std::fabs(q1sq - q2sq) < 1e-10) throw DegenerateRootsError();
    return {q1sq, q2sq};
}

std::complex<double> mode_amplitude_ratio(double k, double q, double a, double lambda,
                                          const BulkMaterial& mat) {
    (void)k;  // the ratio of the I0/I1 amplitudes is k-independent
    const auto c = pde_coeffs(a, lambda, mat);
    const double mu = mat.mu;
    const double den1 = c.a2 * q * q - c.a1;
    const std::complex<double> i(0.0, 1.0);
    const std::complex<double> c1 = -i * c.a3 * q / den1;
    const std::complex<double> c2 = -i * (2.0 * mu * lambda * lambda - c.a4 * q * q) / (q * c.a3);
    if (std::abs(c1 - c2) > 1e-12 * (std::abs(c1) + std::abs(c2)))
        throw NotARootError(std::abs(c1 - c2) / (std::abs(c1) + std::abs(c2)));
    return c1;
}

std::pair<double, double> mode_pde_residual(double k, double q, std::complex<double> c, double a,
                                            double lambda, const BulkMaterial& mat, double r) {
    const auto cf = pde_coeffs(a, lambda, mat);
    const double mu = mat.mu;
    const double x = k * q * r;
    const double i0 = bessel_i(0, x), i1 = bessel_i(1, x);
    const double i1p = bessel_i1_prime(x);
    const double i1pp = i1 - i0 / x + 2.0 * i1 / (x * x);

    const std::complex<double> iu(0.0, 1.0);
    const double f = i1, fp = k * q * i1p, fpp = k * q * k * q * i1pp;
    const std::complex<double> g = c * i0, gp = c * k * q * i1,
                               gpp = c * k * q * k * q * i1p;

    // axial equation: a1 v_zz + a2 (v_rr + v_r / r) + a3 (u_zr + u_z / r) = 0
    const std::complex<double> e1[4] = {-cf.a1 * k * k * g, cf.a2 * (gpp + gp / r),
                                        cf.a3 * iu * k * fp, cf.a3 * iu * k * f / r};
    std::complex<double> sum1 = 0.0;
    double scale1 = 0.0;
    for (const auto& t : e1) {
        sum1 += t;
        scale1 = std::max(scale1, std::abs(t));
    }

    // radial equation: 2 mu lambda^2 u_zz + a3 v_zr + a4 (u_rr + u_r/r - u/r^2) = 0
    const std::complex<double> e2[4] = {-2.0 * mu * lambda * lambda * k * k * f, cf.a3 * iu * k * gp,
                                        cf.a4 * (fpp + fp / r),
                                        -cf.a4 * f / (r * r)};
    std::complex<double> sum2 = 0.0;
    double scale2 = 0.0;
    for (const auto& t : e2) {
        sum2 += t;
        scale2 = std::max(scale2, std::abs(t));
    }
    return {std::abs(sum1) / std::max(scale1, 1e-300), std::abs(sum2) / std::max(scale2, 1e-300)};
}

DispersionProblem DispersionProblem::assemble(double k, const BaseState& base_in,
                                              bool validate_modes) {
    if (k <= 0.0) throw std::domain_error("DispersionProblem: k must be positive");
    DispersionProblem dp;
    dp.base = base_in;
    dp.k = k;

    // repeated-root case (a = lambda): nudge lambda and re-solve
    if (std::fabs(dp.base.a - dp.base.lambda_ax) < 1e-9 * std::max(1.0, dp.base.lambda_ax)) {
        dp.lambda_perturbed = true;
        dp.base = BaseState::solve(dp.base.lambda_ax * (1.0 + 1e-9), dp.base.mat, dp.base.surf,
                                   dp.base.radius_ref);
    }

    const double a = dp.base.a, lambda = dp.base.lambda_ax, A = dp.base.radius_ref;
    const BulkMaterial& mat = dp.base.mat;
    std::tie(dp.q1sq, dp.q2sq) = characteristic_roots(a, lambda, mat);

    const double r = a * A;
    const auto cb = incremental_bulk_coeffs(a, lambda, mat);
    const auto cs = incremental_surface_coeffs(dp.base.surf, a, lambda, A);

    const std::complex<double> iu(0.0, 1.0);
    const double qsq[2] = {dp.q1sq, dp.q2sq};
    for (int j = 0; j < 2; ++j) {
        const double q = std::sqrt(qsq[j]);
        const std::complex<double> c = mode_amplitude_ratio(k, q, a, lambda, mat);
        dp.mode_ratio[j] = c;

        if (validate_modes) {
            if (characteristic_poly_residual(qsq[j], a, lambda, mat) > 1e-12)
                throw NotARootError(characteristic_poly_residual(qsq[j], a, lambda, mat));
            for (double frac : {0.2, 0.4, 0.6, 0.8, 1.0}) {
                const auto [r1, r2] = mode_pde_residual(k, q, c, a, lambda, mat, frac * r);
                if (r1 > 1e-8 || r2 > 1e-8) throw NotARootError(std::max(r1, r2));
            }
        }

        // column normalized by f_j(aA) = 1; only the ratio I0/I1 enters
        const double x = k * q * r;
        const double R01 = bessel_i_ratio01(x);
        const double fp = k * q * R01 - 1.0 / r;             // f'(aA)
        const std::complex<double> g = c * R01;              // g(aA)
        const std::complex<double> gp = c * k * q;           // g'(aA)

        // condition 1: d(chi_s22)/dz - chi_23 = 0
        dp.boundary_matrix[0][j] = iu * k * (cs.c22_u - k * k * cs.c22_uzz - cb.shear_mixed) -
                                   k * k * cs.c22_vz * g - cb.shear_zr * gp;
        // condition 2: d(chi_s32)/dz - chi_s11/(aA) - chi_33 = 0
        dp.boundary_matrix[1][j] =
            (-k * k * cs.c32_uz + k * k * k * k * cs.c32_uzzz) -
            iu * k * k * k * cs.c32_vzz * g -
            (cs.c11_u - k * k * cs.c11_uzz + iu * k * cs.c11_vz * g) / r - cb.diag_hoop * fp -
            cb.cross * (iu * k * g + 1.0 / r);
    }

    const std::complex<double> det = dp.boundary_matrix[0][0] * dp.boundary_matrix[1][1] -
                                     dp.boundary_matrix[0][1] * dp.boundary_matrix[1][0];
    if (std::abs(det) > 0.0 && std::fabs(det.real()) > 1e-8 * std::abs(det))
        throw NotARootError(std::fabs(det.real()) / std::abs(det));
    dp.omega = det.imag();
    dp.omega_deflated = dp.omega / (dp.q1sq - dp.q2sq);
    return dp;
}

DispersionProblem boundary_matrix(double k, double lambda, const BulkMaterial& mat,
                                  const SurfaceModel& surf, double A) {
    return DispersionProblem::assemble(k, BaseState::solve(lambda, mat, surf, A));
}

double dispersion_det(double k, double lambda, const BulkMaterial& mat, const SurfaceModel& surf,
                      double A) {
    return boundary_matrix(k, lambda, mat, surf, A).omega;
}

double dispersion_det_incompressible(double k, double lambda, double gamma, double beta_s,
                                     double h0) {
    if (k <= 0.0 || lambda <= 0.0)
        throw std::domain_error("dispersion_det_incompressible: k and lambda must be positive");
    const double L = lambda;
    const double sqL = std::sqrt(L);
    const double L3 = L * L * L;
    const double r_outer = bessel_i_ratio01(k * L);
    const double r_inner = bessel_i_ratio01(k / sqL);
    const double t1 = -16.0 * sqL * (L3 - 1.0 + 2.0 * k * L * r_outer);
    const double t2 = 8.0 * k * (L3 + 1.0) * (L3 + 1.0) * r_inner;
    const double t3 = 8.0 * gamma * L * (L3 - 1.0) * (k * k - L);
    const double t4 = beta_s * L * (L3 - 1.0) *
                      (4.0 * h0 * h0 * (k * k - L) + 8.0 * h0 * k * k * sqL + 2.0 * k * k * k * k +
                       3.0 * L * L - k * k * L);
    return t1 + t2 + t3 + t4;
}

namespace {

constexpr int kScanIntervals = 64;

// Largest root of f in [lo, hi] by interval scan + Brent; nullopt if no sign
// change. Also reports the max |f| seen over the scan (residual scale).
template <typename F>
std::optional<std::pair<double, double>> largest_root(F f, double lo, double hi) {
    double xs[kScanIntervals + 1], fs[kScanIntervals + 1];
    double scale = 0.0;
    for (int i = 0; i <= kScanIntervals; ++i) {
        xs[i] = lo + (hi - lo) * i / kScanIntervals;
        fs[i] = f(xs[i]);
        scale = std::max(scale, std::fabs(fs[i]));
    }
    for (int i = kScanIntervals - 1; i >= 0; --i) {
        if (fs[i] == 0.0) return std::make_pair(xs[i], scale);
        if (fs[i] * fs[i + 1] < 0.0) {
            // xtol 0: Brent terminates at its machine-precision floor
            const double root = brent(f, xs[i], xs[i + 1], fs[i], fs[i + 1], 0.0);
            return std::make_pair(root, scale);
        }
    }
    return std::nullopt;
}

}  // namespace

BifurcationPoint critical_stretch(double k, const BulkMaterial& mat, const SurfaceModel& surf,
                                  double A, double lambda_lo, double lambda_hi) {
    auto f = [&](double lambda) {
        return DispersionProblem::assemble(k, BaseState::solve(lambda, mat, surf, A)).omega_deflated;
    };
    const auto root = largest_root(f, lambda_lo, lambda_hi);
    if (!root) {
        const double flo = f(lambda_lo), fhi = f(lambda_hi);
        throw NoBracketError(lambda_lo, lambda_hi, flo, fhi);
    }
    BifurcationPoint p;
    p.k = k;
    p.lambda_crit = root->first;
    p.a = solve_azimuthal_stretch(root->first, mat, surf, A);
    p.omega_residual = std::fabs(f(root->first)) / std::max(root->second, 1e-300);
    return p;
}

BifurcationPoint critical_stretch_incompressible(double k, double gamma, double beta_s, double h0,
                                                 double lambda_lo, double lambda_hi) {
    auto f = [&](double lambda) {
        if (std::fabs(lambda - 1.0) < 1e-12) lambda += 2e-12;
        return dispersion_det_incompressible(k, lambda, gamma, beta_s, h0) / (lambda - 1.0);
    };
    const auto root = largest_root(f, lambda_lo, lambda_hi);
    if (!root) {
        const double flo = f(lambda_lo), fhi = f(lambda_hi);
        throw NoBracketError(lambda_lo, lambda_hi, flo, fhi);
    }
    BifurcationPoint p;
    p.k = k;
    p.lambda_crit = root->first;
    p.a = 1.0 / std::sqrt(root->first);
    p.omega_residual = std::fabs(f(root->first)) / std::max(root->second, 1e-300);
    return p;
}

namespace {

template <typename Solve>
std::vector<std::optional<BifurcationPoint>> trace_curve(const std::vector<double>& k_grid,
                                                         double lambda_lo, double lambda_hi,
                                                         Solve solve) {
    if (k_grid.empty()) throw std::domain_error("bifurcation_curve: empty k grid");
    for (std::size_t i = 1; i < k_grid.size(); ++i)
        if (k_grid[i] <= k_grid[i - 1])
            throw std::domain_error("bifurcation_curve: k grid must be strictly increasing");

    std::vector<std::optional<BifurcationPoint>> out(k_grid.size());
    std::optional<double> prev;
    for (std::size_t i = 0; i < k_grid.size(); ++i) {
        std::optional<BifurcationPoint> point;
        if (prev) {
            const double lo = std::max(lambda_lo, *prev * 0.8);
            const double hi = std::min(lambda_hi, *prev * 1.2);
            if (lo < hi) {
                try {
                    point = solve(k_grid[i], lo, hi);
                } catch (const NoBracketError&) {
                }
            }
        }
        if (!point) {
            try {
                point = solve(k_grid[i], lambda_lo, lambda_hi);
            } catch (const NoBracketError&) {
            }
        }
        if (point) prev = point->lambda_crit;
        out[i] = point;
    }
    return out;
}

}  // namespace

std::vector<std::optional<BifurcationPoint>> bifurcation_curve(const std::vector<double>& k_grid,
                                                               const BulkMaterial& mat,
                                                               const SurfaceModel& surf, double A,
                                                               double lambda_lo, double lambda_hi) {
    return trace_curve(k_grid, lambda_lo, lambda_hi, [&](double k, double lo, double hi) {
        return critical_stretch(k, mat, surf, A, lo, hi);
    });
}

std::vector<std::optional<BifurcationPoint>> bifurcation_curve_incompressible(
    const std::vector<double>& k_grid, double gamma, double beta_s, double h0, double lambda_lo,
    double lambda_hi) {
    return trace_curve(k_grid, lambda_lo, lambda_hi, [&](double k, double lo, double hi) {
        return critical_stretch_incompressible(k, gamma, beta_s, h0, lo, hi);
    });
}

}  // namespace curvelast
