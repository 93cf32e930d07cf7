#include "curvelast/bulk.hpp"

#include <cmath>

namespace curvelast {

namespace {
void check_stretches(double a, double lambda) {
    if (a <= 0.0 || lambda <= 0.0) throw std::domain_error("bulk: stretches must be positive");
}
}  // namespace

double bulk_energy(double a, double lambda, const BulkMaterial& mat) {
    check_stretches(a, lambda);
    const double J = a * a * lambda;
    const double i1 = 2.0 * a * a + lambda * lambda;
    return 0.5 * mat.mu * (i1 - 3.0 - 2.0 * std::log(J)) +
           0.5 * mat.d_modulus * (0.5 * (J * J - 1.0) - std::log(J));
}

Tensor2 base_pk1(double a, double lambda, const BulkMaterial& mat) {
    check_stretches(a, lambda);
    const double mu = mat.mu, D = mat.d_modulus;
    const double p_hoop = mu * (a - 1.0 / a) + 0.5 * D * (a * a * a * lambda * lambda - 1.0 / a);
    const double p_axial =
        mu * (lambda - 1.0 / lambda) + 0.5 * D * (a * a * a * a * lambda - 1.0 / lambda);
    return Tensor2::diag(p_hoop, p_axial, p_hoop);
}

IncrementalBulkCoeffs incremental_bulk_coeffs(double a, double lambda, const BulkMaterial& mat) {
    check_stretches(a, lambda);
    const double mu = mat.mu, D = mat.d_modulus;
    const double a2 = a * a;
    const double S = a2 * a2 * lambda * lambda + 1.0;
    const double den = 2.0 * a2 * lambda;
    IncrementalBulkCoeffs c;
    c.diag_hoop = (2.0 * mu * (a2 + 1.0) + D * S) / den;
    c.diag_axial = (2.0 * mu * (lambda * lambda + 1.0) + D * S) / den;
    c.cross = D * a2 * lambda;
    c.shear_mixed = (2.0 * mu + D * (2.0 - S)) / den;  // 1 - a^4 lambda^2 = 2 - S
    c.shear_zr = mu / lambda;
    c.shear_rz = mu * lambda / a2;
    return c;
}

Tensor4Block bulk_moduli_check(double a, double lambda, const BulkMaterial& mat,
                               double chart_radius) {
    check_stretches(a, lambda);
    const double mu = mat.mu, D = mat.d_modulus;
    const double R = chart_radius;

    // adapted-chart metrics: G = diag(R^2, 1, 1), g = diag(a^2 R^2, lambda^2, a^2)
    const double G[3] = {R * R, 1.0, 1.0};
    const double g[3] = {a * a * R * R, lambda * lambda, a * a};
    double Gi[3], gi[3];
    for (int i = 0; i < 3; ++i) {
        Gi[i] = 1.0 / G[i];
        gi[i] = 1.0 / g[i];
    }
    const double J2 = (g[0] * g[1] * g[2]) / (G[0] * G[1] * G[2]);

    // dW/dg_ij = mu/2 (G^ij - g^ij) + D/4 (J^2 - 1) g^ij            (diagonal)
    // d2W/dg_ij dg_kl = (mu/2 - D/4 (J^2-1)) sym(g^ik g^jl) + D/4 J^2 g^ij g^kl
    auto dW = [&](int i, int j) {
        if (i != j) return 0.0;
        return 0.5 * mu * (Gi[i] - gi[i]) + 0.25 * D * (J2 - 1.0) * gi[i];
    };
    auto giv = [&](int i, int j) { return i == j ? gi[i] : 0.0; };
    auto d2W = [&](int i, int j, int k, int l) {
        const double c1 = 0.5 * mu - 0.25 * D * (J2 - 1.0);
        return c1 * 0.5 * (giv(i, k) * giv(j, l) + giv(i, l) * giv(j, k)) +
               0.25 * D * J2 * giv(i, j) * giv(k, l);
    };

    // mixed components A_m^j_n^l = 4 g_im g_kn d2W_ijkl + 2 g_nm dW_lj,
    // then physical components against orthonormal eta:
    //   A_phys[m,j,n,l] = A_m^j_n^l * (H_j / h_m) * (h_l / h_n)
    const double h[3] = {a * R, lambda, a};
    const double H[3] = {R, 1.0, 1.0};
    Tensor4Block out;
    for (int m = 0; m < 3; ++m)
        for (int j = 0; j < 3; ++j)
            for (int n = 0; n < 3; ++n)
                for (int l = 0; l < 3; ++l) {
                    // diagonal metric: g_im = g[i] delta_im collapses the i,k sums
                    double s = 4.0 * g[m] * g[n] * d2W(m, j, n, l);
                    if (n == m) s += 2.0 * g[m] * dW(l, j);
                    const double val = s * (H[j] / h[m]) * (h[l] / h[n]);
                    if (val != 0.0) out.set(m, j, n, l, val);
                }
    return out;
}

Tensor2 chi_from_moduli(const Tensor4Block& moduli, const Tensor2& eta, double a, double lambda) {
    const Tensor2 p1 = double_contract(moduli, eta);
    const Tensor2 fbar = Tensor2::diag(a, lambda, a);
    Tensor2 chi = matmul(p1, fbar.transpose());
    chi *= 1.0 / (a * a * lambda);
    return chi;
}

}  // namespace curvelast
