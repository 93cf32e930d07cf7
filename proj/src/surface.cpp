#include "curvelast/surface.hpp"

#include <cmath>

namespace curvelast {

namespace {

void check_state(const SurfacePrincipalState& s) {
    if (s.lam1 <= 0.0 || s.lam2 <= 0.0)
        throw std::domain_error("surface: principal stretches must be positive");
}

bool nearly_equal(double x, double y) { return std::fabs(x - y) <= 1e-9 * (1.0 + std::fabs(x) + std::fabs(y)); }

}  // namespace

SurfaceModel SurfaceModel::tension(double gamma) {
    if (gamma < 0.0) throw std::domain_error("SurfaceModel: gamma must be nonnegative");
    SurfaceModel m;
    m.kind = SurfaceKind::SurfaceTensionOnly;
    m.gamma = gamma;
    return m;
}

SurfaceModel SurfaceModel::stretch(double gamma, double alpha_s) {
    if (gamma < 0.0 || alpha_s < 0.0)
        throw std::domain_error("SurfaceModel: gamma and alpha_s must be nonnegative");
    SurfaceModel m;
    m.kind = SurfaceKind::StretchResistance;
    m.gamma = gamma;
    m.alpha_s = alpha_s;
    return m;
}

SurfaceModel SurfaceModel::helfrich(double gamma, double beta_s, double h0) {
    if (gamma < 0.0 || beta_s < 0.0)
        throw std::domain_error("SurfaceModel: gamma and beta_s must be nonnegative");
    SurfaceModel m;
    m.kind = SurfaceKind::HelfrichBending;
    m.gamma = gamma;
    m.beta_s = beta_s;
    m.h0 = h0;
    return m;
}

SurfaceModel SurfaceModel::generic(PrincipalEnergyFn fn) {
    SurfaceModel m;
    m.kind = SurfaceKind::GenericPrincipal;
    m.principal = std::move(fn);
    return m;
}

PrincipalDerivs principal_derivs(const SurfaceModel& model, double l1, double l2, double k1,
                                 double k2) {
    if (l1 <= 0.0 || l2 <= 0.0) throw std::domain_error("principal_derivs: stretches must be positive");
    PrincipalDerivs p;
    switch (model.kind) {
        case SurfaceKind::SurfaceTensionOnly: {
            p.psi = model.gamma * l1 * l2;
            p.d1 = {model.gamma * l2, model.gamma * l1, 0.0, 0.0};
            p.d2[0][1] = p.d2[1][0] = model.gamma;
            return p;
        }
        case SurfaceKind::StretchResistance: {
            const double J = l1 * l2;
            const double dJ = model.gamma + model.alpha_s * (J - 1.0);
            p.psi = model.gamma * J + 0.5 * model.alpha_s * (J - 1.0) * (J - 1.0);
            p.d1 = {dJ * l2, dJ * l1, 0.0, 0.0};
            p.d2[0][0] = model.alpha_s * l2 * l2;
            p.d2[1][1] = model.alpha_s * l1 * l1;
            p.d2[0][1] = p.d2[1][0] = dJ + model.alpha_s * J;
            return p;
        }
        case SurfaceKind::HelfrichBending: {
            const double g = model.gamma, b = model.beta_s;
            const double J = l1 * l2;
            const double c = 0.5 * k1 / (l1 * l1) + 0.5 * k2 / (l2 * l2) + model.h0;
            // gradients of J and of the curvature measure c; variable order l1,l2,k1,k2
            const double Jd[4] = {l2, l1, 0.0, 0.0};
            const double cd[4] = {-k1 / (l1 * l1 * l1), -k2 / (l2 * l2 * l2), 0.5 / (l1 * l1),
                                  0.5 / (l2 * l2)};
            double cdd[4][4] = {};
            cdd[0][0] = 3.0 * k1 / (l1 * l1 * l1 * l1);
            cdd[1][1] = 3.0 * k2 / (l2 * l2 * l2 * l2);
            cdd[0][2] = cdd[2][0] = -1.0 / (l1 * l1 * l1);
            cdd[1][3] = cdd[3][1] = -1.0 / (l2 * l2 * l2);
            const double e = g + 0.5 * b * c * c;
            p.psi = J * e;
            for (int x = 0; x < 4; ++x) p.d1[x] = Jd[x] * e + J * b * c * cd[x];
            for (int x = 0; x < 4; ++x)
                for (int y = 0; y < 4; ++y) {
                    const double Jxy = (x + y == 1) ? 1.0 : 0.0;  // only d2J/dl1 dl2 = 1
                    p.d2[x][y] = Jxy * e + Jd[x] * b * c * cd[y] + Jd[y] * b * c * cd[x] +
                                 J * b * (cd[x] * cd[y] + c * cdd[x][y]);
                }
            return p;
        }
        case SurfaceKind::GenericPrincipal:
            if (!model.principal) throw std::domain_error("GenericPrincipal: missing energy callback");
            return model.principal(l1, l2, k1, k2);
    }
    throw std::logic_error("principal_derivs: unreachable");
}

InvariantDerivs invariant_derivs(const SurfaceModel& model, const SurfaceInvariants& inv) {
    InvariantDerivs d;
    const double s = std::sqrt(inv.i2);
    switch (model.kind) {
        case SurfaceKind::SurfaceTensionOnly: {
            d.d1[1] = 0.5 * model.gamma / s;
            d.d2[1][1] = -0.25 * model.gamma / (s * s * s);
            return d;
        }
        case SurfaceKind::StretchResistance: {
            const double t = model.gamma + model.alpha_s * (s - 1.0);
            d.d1[1] = 0.5 * t / s;
            d.d2[1][1] = 0.25 * model.alpha_s / (s * s) - 0.25 * t / (s * s * s);
            return d;
        }
        case SurfaceKind::HelfrichBending: {
            // Psi = sqrt(I2) (gamma + beta/2 (h + H0)^2), h = (I1 I3 - I5)/(2 I2)
            const double b = model.beta_s;
            const double I1 = inv.i1, I2 = inv.i2, I3 = inv.i3, I5 = inv.i5;
            const double h = 0.5 * (I1 * I3 - I5) / I2;
            const double ct = h + model.h0;
            double hd[6] = {};
            hd[0] = 0.5 * I3 / I2;
            hd[2] = 0.5 * I1 / I2;
            hd[4] = -0.5 / I2;
            hd[1] = -h / I2;
            double hdd[6][6] = {};
            hdd[0][2] = hdd[2][0] = 0.5 / I2;
            hdd[0][1] = hdd[1][0] = -0.5 * I3 / (I2 * I2);
            hdd[2][1] = hdd[1][2] = -0.5 * I1 / (I2 * I2);
            hdd[4][1] = hdd[1][4] = 0.5 / (I2 * I2);
            hdd[1][1] = 2.0 * h / (I2 * I2);
            double sd[6] = {};
            sd[1] = 0.5 / s;
            const double sdd11 = -0.25 / (s * s * s);
            const double e = model.gamma + 0.5 * b * ct * ct;
            for (int x = 0; x < 6; ++x) d.d1[x] = sd[x] * e + s * b * ct * hd[x];
            for (int x = 0; x < 6; ++x)
                for (int y = 0; y < 6; ++y) {
                    double v = sd[x] * b * ct * hd[y] + sd[y] * b * ct * hd[x] +
                               s * b * (hd[x] * hd[y] + ct * hdd[x][y]);
                    if (x == 1 && y == 1) v += sdd11 * e;
                    d.d2[x][y] = v;
                }
            return d;
        }
        case SurfaceKind::GenericPrincipal:
            throw std::domain_error("invariant_derivs: GenericPrincipal has no invariant form");
    }
    throw std::logic_error("invariant_derivs: unreachable");
}

double surface_energy(const SurfaceModel& model, const SurfacePrincipalState& s) {
    check_state(s);
    return principal_derivs(model, s.lam1, s.lam2, s.kap1, s.kap2).psi;
}

std::pair<Tensor2, Tensor2> base_surface_stress_moment(const SurfaceModel& model, double a,
                                                       double lambda, double A) {
    const auto s = SurfacePrincipalState::cylinder(a, lambda, A);
    const auto p = principal_derivs(model, s.lam1, s.lam2, s.kap1, s.kap2);
    return {Tensor2::diag(p.d1[0], p.d1[1], 0.0), Tensor2::diag(p.d1[2], p.d1[3], 0.0)};
}

SurfaceModuli surface_moduli_aligned(const SurfaceModel& model, const SurfacePrincipalState& s) {
    check_state(s);
    const auto p = principal_derivs(model, s.lam1, s.lam2, s.kap1, s.kap2);
    const double l[2] = {s.lam1, s.lam2};
    const double kp[2] = {s.kap1, s.kap2};
    const double js = s.js_bar();

    SurfaceModuli M;
    M.js_bar = js;
    for (int al = 0; al < 2; ++al)
        for (int be = 0; be < 2; ++be) {
            M.A.set(al, al, be, be, l[al] * l[be] * p.d2[al][be] / js);
            M.B.set(al, al, be, be, l[al] * l[be] * l[be] * p.d2[al][2 + be] / js);
            const double delta = (al == be) ? p.d1[2 + al] : 0.0;
            M.C.set(al, al, be, be, l[al] * l[al] * (delta + l[be] * p.d2[be][2 + al]) / js);
            M.D.set(al, al, be, be, l[al] * l[al] * l[be] * l[be] * p.d2[2 + al][2 + be] / js);
        }
    for (int al = 0; al < 2; ++al) {
        M.A.set(2, al, 2, al, l[al] * p.d1[al] / js);
        M.C.set(2, al, 2, al, l[al] * l[al] * p.d1[2 + al] / js);
    }
    for (int al = 0; al < 2; ++al) {
        const int be = 1 - al;
        // shear entries: ratio formulas with analytic limits at equal
        // stretches (valid when the energy sees the two directions
        // symmetrically there, i.e. without stretch-curvature coupling)
        double a_abab, a_abba;
        if (nearly_equal(l[al], l[be])) {
            const double lb = l[be];
            a_abab = lb * (p.d1[al] + lb * (p.d2[al][al] - p.d2[al][be])) / (2.0 * js);
            a_abba = -lb * (p.d1[be] + lb * (p.d2[al][be] - p.d2[al][al])) / (2.0 * js);
        } else {
            const double den = l[al] * l[al] - l[be] * l[be];
            a_abab = l[be] * l[be] * (l[al] * p.d1[al] - l[be] * p.d1[be]) / (den * js);
            a_abba = -l[al] * l[be] * (l[al] * p.d1[be] - l[be] * p.d1[al]) / (den * js);
        }
        M.A.set(al, be, al, be, a_abab);
        M.A.set(al, be, be, al, a_abba);
        M.C.set(al, be, al, be, l[be] * l[be] * p.d1[2 + be] / js);
        double d_sh;
        if (nearly_equal(kp[al], kp[be])) {
            d_sh = l[al] * l[al] * l[be] * l[be] * (p.d2[2 + al][2 + al] - p.d2[2 + al][2 + be]) /
                   (2.0 * js);
        } else {
            d_sh = l[al] * l[al] * l[be] * l[be] * (p.d1[2 + al] - p.d1[2 + be]) /
                   (2.0 * (kp[al] - kp[be]) * js);
        }
        M.D.set(al, be, al, be, d_sh);
        M.D.set(al, be, be, al, d_sh);
    }
    return M;
}

SurfaceModuli surface_moduli_invariant(const InvariantDerivs& psi, const SurfacePrincipalState& s) {
    check_state(s);
    const double l1 = s.lam1, l2 = s.lam2, kp1 = s.kap1, kp2 = s.kap2;
    const double p1 = psi.d1[0], p2 = psi.d1[1], p3 = psi.d1[2], p4 = psi.d1[3], p5 = psi.d1[4],
                 p6 = psi.d1[5];
    const double p11 = psi.d2[0][0], p12 = psi.d2[0][1], p13 = psi.d2[0][2], p14 = psi.d2[0][3],
                 p15 = psi.d2[0][4], p16 = psi.d2[0][5];
    const double p22 = psi.d2[1][1], p23 = psi.d2[1][2], p24 = psi.d2[1][3], p25 = psi.d2[1][4],
                 p26 = psi.d2[1][5];
    const double p33 = psi.d2[2][2], p34 = psi.d2[2][3], p35 = psi.d2[2][4], p36 = psi.d2[2][5];
    const double p44 = psi.d2[3][3], p45 = psi.d2[3][4], p46 = psi.d2[3][5];
    const double p55 = psi.d2[4][4], p56 = psi.d2[4][5];
    const double p66 = psi.d2[5][5];

    SurfaceModuli M;
    M.js_bar = s.js_bar();

    // Entries generated from the first-order perturbation of the
    // six-invariant stress and moment representation (stress rows first,
    // then moment rows; off-diagonal symmetric slots split by set_sym).
    M.A.set(0,0,0,0, 2*l1*(2*std::pow(kp1, 2)*std::pow(l1, 2)*p55 + 4*kp1*std::pow(l1, 2)*std::pow(l2, 2)*p25 + 4*kp1*std::pow(l1, 2)*p15 + kp1*p5 + 2*std::pow(l1, 2)*std::pow(l2, 4)*p22 + 4*std::pow(l1, 2)*std::pow(l2, 2)*p12 + 2*std::pow(l1, 2)*p11 + std::pow(l2, 2)*p2 + p1)/l2);
    M.A.set(0,0,1,1, 4*l1*l2*(kp1*kp2*p55 + kp1*std::pow(l1, 2)*p25 + kp1*p15 + kp2*std::pow(l2, 2)*p25 + kp2*p15 + std::pow(l1, 2)*std::pow(l2, 2)*p22 + std::pow(l1, 2)*p12 + std::pow(l2, 2)*p12 + p11 + p2));
    M.A.set(0,0,0,1, (kp1 - kp2)*(2*kp1*std::pow(l1, 2)*p56 + 2*std::pow(l1, 2)*std::pow(l2, 2)*p26 + 2*std::pow(l1, 2)*p16 + p6));
    M.A.set(0,0,1,0, 2*std::pow(l1, 2)*(kp1 - kp2)*(kp1*p56 + std::pow(l2, 2)*p26 + p16));
    M.B.set(0,0,0,0, 2*std::pow(l1, 3)*(kp1*kp2*p45 + kp1*std::pow(l1, 2)*p55 + kp1*p35 + kp2*std::pow(l2, 2)*p24 + kp2*p14 + std::pow(l1, 2)*std::pow(l2, 2)*p25 + std::pow(l1, 2)*p15 + std::pow(l2, 2)*p23 + p13 + p5)/l2);
    M.B.set(0,0,1,1, 2*l1*l2*(std::pow(kp1, 2)*p45 + kp1*std::pow(l2, 2)*p24 + kp1*std::pow(l2, 2)*p55 + kp1*p14 + kp1*p35 + std::pow(l2, 4)*p25 + std::pow(l2, 2)*p15 + std::pow(l2, 2)*p23 + p13));
    M.B.set_sym(0,0,0,1, -2*std::pow(l1, 2)*(kp1*std::pow(l1, 2)*p56 - kp1*std::pow(l2, 2)*p56 + std::pow(l1, 2)*std::pow(l2, 2)*p26 + std::pow(l1, 2)*p16 - std::pow(l2, 4)*p26 - std::pow(l2, 2)*p16 + p6));
    M.A.set(0,1,0,0, (kp1 - kp2)*(2*kp1*std::pow(l1, 2)*p56 + 2*std::pow(l1, 2)*std::pow(l2, 2)*p26 + 2*std::pow(l1, 2)*p16 + p6));
    M.A.set(0,1,1,1, 2*std::pow(l2, 2)*(kp1 - kp2)*(kp2*p56 + std::pow(l1, 2)*p26 + p16));
    M.A.set(0,1,0,1, l2*(std::pow(kp1, 2)*std::pow(l1, 2)*p66 - 2*kp1*kp2*std::pow(l1, 2)*p66 + std::pow(kp2, 2)*std::pow(l1, 2)*p66 + 2*kp2*p5 + 2*p1)/l1);
    M.A.set(0,1,1,0, -l1*l2*(-std::pow(kp1, 2)*p66 + 2*kp1*kp2*p66 - std::pow(kp2, 2)*p66 + 2*p2));
    M.B.set(0,1,0,0, std::pow(l1, 2)*(kp1*kp2*p46 + kp1*std::pow(l1, 2)*p56 + kp1*p36 - std::pow(kp2, 2)*p46 - kp2*std::pow(l1, 2)*p56 - kp2*p36 + p6));
    M.B.set(0,1,1,1, std::pow(l2, 2)*(std::pow(kp1, 2)*p46 - kp1*kp2*p46 + kp1*std::pow(l2, 2)*p56 + kp1*p36 - kp2*std::pow(l2, 2)*p56 - kp2*p36 - p6));
    M.B.set_sym(0,1,0,1, -l1*l2*(kp1*std::pow(l1, 2)*p66 - kp1*std::pow(l2, 2)*p66 - kp2*std::pow(l1, 2)*p66 + kp2*std::pow(l2, 2)*p66 - 2*p5));
    M.A.set(1,0,0,0, 2*std::pow(l1, 2)*(kp1 - kp2)*(kp1*p56 + std::pow(l2, 2)*p26 + p16));
    M.A.set(1,0,1,1, (kp1 - kp2)*(2*kp2*std::pow(l2, 2)*p56 + 2*std::pow(l1, 2)*std::pow(l2, 2)*p26 + 2*std::pow(l2, 2)*p16 + p6));
    M.A.set(1,0,0,1, -l1*l2*(-std::pow(kp1, 2)*p66 + 2*kp1*kp2*p66 - std::pow(kp2, 2)*p66 + 2*p2));
    M.A.set(1,0,1,0, l1*(std::pow(kp1, 2)*std::pow(l2, 2)*p66 - 2*kp1*kp2*std::pow(l2, 2)*p66 + 2*kp1*p5 + std::pow(kp2, 2)*std::pow(l2, 2)*p66 + 2*p1)/l2);
    M.B.set(1,0,0,0, std::pow(l1, 2)*(kp1*kp2*p46 + kp1*std::pow(l1, 2)*p56 + kp1*p36 - std::pow(kp2, 2)*p46 - kp2*std::pow(l1, 2)*p56 - kp2*p36 + p6));
    M.B.set(1,0,1,1, std::pow(l2, 2)*(std::pow(kp1, 2)*p46 - kp1*kp2*p46 + kp1*std::pow(l2, 2)*p56 + kp1*p36 - kp2*std::pow(l2, 2)*p56 - kp2*p36 - p6));
    M.B.set_sym(1,0,0,1, -l1*l2*(kp1*std::pow(l1, 2)*p66 - kp1*std::pow(l2, 2)*p66 - kp2*std::pow(l1, 2)*p66 + kp2*std::pow(l2, 2)*p66 - 2*p5));
    M.A.set(1,1,0,0, 4*l1*l2*(kp1*kp2*p55 + kp1*std::pow(l1, 2)*p25 + kp1*p15 + kp2*std::pow(l2, 2)*p25 + kp2*p15 + std::pow(l1, 2)*std::pow(l2, 2)*p22 + std::pow(l1, 2)*p12 + std::pow(l2, 2)*p12 + p11 + p2));
    M.A.set(1,1,1,1, 2*l2*(2*std::pow(kp2, 2)*std::pow(l2, 2)*p55 + 4*kp2*std::pow(l1, 2)*std::pow(l2, 2)*p25 + 4*kp2*std::pow(l2, 2)*p15 + kp2*p5 + 2*std::pow(l1, 4)*std::pow(l2, 2)*p22 + 4*std::pow(l1, 2)*std::pow(l2, 2)*p12 + std::pow(l1, 2)*p2 + 2*std::pow(l2, 2)*p11 + p1)/l1);
    M.A.set(1,1,0,1, 2*std::pow(l2, 2)*(kp1 - kp2)*(kp2*p56 + std::pow(l1, 2)*p26 + p16));
    M.A.set(1,1,1,0, (kp1 - kp2)*(2*kp2*std::pow(l2, 2)*p56 + 2*std::pow(l1, 2)*std::pow(l2, 2)*p26 + 2*std::pow(l2, 2)*p16 + p6));
    M.B.set(1,1,0,0, 2*l1*l2*(std::pow(kp2, 2)*p45 + kp2*std::pow(l1, 2)*p24 + kp2*std::pow(l1, 2)*p55 + kp2*p14 + kp2*p35 + std::pow(l1, 4)*p25 + std::pow(l1, 2)*p15 + std::pow(l1, 2)*p23 + p13));
    M.B.set(1,1,1,1, 2*std::pow(l2, 3)*(kp1*kp2*p45 + kp1*std::pow(l1, 2)*p24 + kp1*p14 + kp2*std::pow(l2, 2)*p55 + kp2*p35 + std::pow(l1, 2)*std::pow(l2, 2)*p25 + std::pow(l1, 2)*p23 + std::pow(l2, 2)*p15 + p13 + p5)/l1);
    M.B.set_sym(1,1,0,1, -2*std::pow(l2, 2)*(kp2*std::pow(l1, 2)*p56 - kp2*std::pow(l2, 2)*p56 + std::pow(l1, 4)*p26 - std::pow(l1, 2)*std::pow(l2, 2)*p26 + std::pow(l1, 2)*p16 - std::pow(l2, 2)*p16 - p6));
    M.A.set(2,0,2,0, 2*l1*(kp1*p5 + std::pow(l2, 2)*p2 + p1)/l2);
    M.A.set(2,0,2,1, p6*(kp1 - kp2));
    M.A.set(2,1,2,0, p6*(kp1 - kp2));
    M.A.set(2,1,2,1, 2*l2*(kp2*p5 + std::pow(l1, 2)*p2 + p1)/l1);

    M.C.set(0,0,0,0, l1*(2*kp1*kp2*std::pow(l1, 2)*p45 + 2*kp1*std::pow(l1, 4)*p55 + 2*kp1*std::pow(l1, 2)*p35 + 2*kp2*std::pow(l1, 2)*std::pow(l2, 2)*p24 + 2*kp2*std::pow(l1, 2)*p14 + kp2*p4 + 2*std::pow(l1, 4)*std::pow(l2, 2)*p25 + 2*std::pow(l1, 4)*p15 + 2*std::pow(l1, 2)*std::pow(l2, 2)*p23 + 2*std::pow(l1, 2)*p13 + 3*std::pow(l1, 2)*p5 + p3)/l2);
    M.C.set(0,0,1,1, 2*l1*l2*(std::pow(kp2, 2)*p45 + kp2*std::pow(l1, 2)*p24 + kp2*std::pow(l1, 2)*p55 + kp2*p14 + kp2*p35 + std::pow(l1, 4)*p25 + std::pow(l1, 2)*p15 + std::pow(l1, 2)*p23 + p13));
    M.C.set(0,0,0,1, kp1*kp2*std::pow(l1, 2)*p46 + kp1*std::pow(l1, 4)*p56 + kp1*std::pow(l1, 2)*p36 - std::pow(kp2, 2)*std::pow(l1, 2)*p46 - kp2*std::pow(l1, 4)*p56 - kp2*std::pow(l1, 2)*p36 + 0.5*std::pow(l1, 2)*p6 + 0.5*std::pow(l2, 2)*p6);
    M.C.set(0,0,1,0, std::pow(l1, 2)*(kp1*kp2*p46 + kp1*std::pow(l1, 2)*p56 + kp1*p36 - std::pow(kp2, 2)*p46 - kp2*std::pow(l1, 2)*p56 - kp2*p36 + p6));
    M.D.set(0,0,0,0, std::pow(l1, 3)*(std::pow(kp2, 2)*p44 + 2*kp2*std::pow(l1, 2)*p45 + 2*kp2*p34 + std::pow(l1, 4)*p55 + 2*std::pow(l1, 2)*p35 + p33)/l2);
    M.D.set(0,0,1,1, l1*l2*(kp1*kp2*p44 + kp1*std::pow(l1, 2)*p45 + kp1*p34 + kp2*std::pow(l2, 2)*p45 + kp2*p34 + std::pow(l1, 2)*std::pow(l2, 2)*p55 + std::pow(l1, 2)*p35 + std::pow(l2, 2)*p35 + p33 + p4));
    M.D.set_sym(0,0,0,1, -std::pow(l1, 2)*(l1 - l2)*(l1 + l2)*(kp2*p46 + std::pow(l1, 2)*p56 + p36));
    M.C.set(0,1,0,0, -kp1*std::pow(l1, 4)*p56 + kp1*std::pow(l1, 2)*std::pow(l2, 2)*p56 - std::pow(l1, 4)*std::pow(l2, 2)*p26 - std::pow(l1, 4)*p16 + std::pow(l1, 2)*std::pow(l2, 4)*p26 + std::pow(l1, 2)*std::pow(l2, 2)*p16 - 1.5*std::pow(l1, 2)*p6 + 0.5*std::pow(l2, 2)*p6);
    M.C.set(0,1,1,1, -std::pow(l2, 2)*(kp2*std::pow(l1, 2)*p56 - kp2*std::pow(l2, 2)*p56 + std::pow(l1, 4)*p26 - std::pow(l1, 2)*std::pow(l2, 2)*p26 + std::pow(l1, 2)*p16 - std::pow(l2, 2)*p16 - p6));
    M.C.set(0,1,0,1, -0.5*l2*(kp1*std::pow(l1, 4)*p66 - kp1*std::pow(l1, 2)*std::pow(l2, 2)*p66 - 2*kp1*p4 - kp2*std::pow(l1, 4)*p66 + kp2*std::pow(l1, 2)*std::pow(l2, 2)*p66 - 2*std::pow(l1, 2)*p5 - 2*std::pow(l2, 2)*p5 - 2*p3)/l1);
    M.C.set(0,1,1,0, -0.5*l1*l2*(kp1*std::pow(l1, 2)*p66 - kp1*std::pow(l2, 2)*p66 - kp2*std::pow(l1, 2)*p66 + kp2*std::pow(l2, 2)*p66 - 2*p5));
    M.D.set(0,1,0,0, -0.5*std::pow(l1, 2)*(l1 - l2)*(l1 + l2)*(kp2*p46 + std::pow(l1, 2)*p56 + p36));
    M.D.set(0,1,1,1, -0.5*std::pow(l2, 2)*(l1 - l2)*(l1 + l2)*(kp1*p46 + std::pow(l2, 2)*p56 + p36));
    M.D.set_sym(0,1,0,1, 0.5*l1*l2*(std::pow(l1, 4)*p66 - 2*std::pow(l1, 2)*std::pow(l2, 2)*p66 + std::pow(l2, 4)*p66 - 2*p4));
    M.C.set(1,0,0,0, -std::pow(l1, 2)*(kp1*std::pow(l1, 2)*p56 - kp1*std::pow(l2, 2)*p56 + std::pow(l1, 2)*std::pow(l2, 2)*p26 + std::pow(l1, 2)*p16 - std::pow(l2, 4)*p26 - std::pow(l2, 2)*p16 + p6));
    M.C.set(1,0,1,1, -kp2*std::pow(l1, 2)*std::pow(l2, 2)*p56 + kp2*std::pow(l2, 4)*p56 - std::pow(l1, 4)*std::pow(l2, 2)*p26 + std::pow(l1, 2)*std::pow(l2, 4)*p26 - std::pow(l1, 2)*std::pow(l2, 2)*p16 - 0.5*std::pow(l1, 2)*p6 + std::pow(l2, 4)*p16 + 1.5*std::pow(l2, 2)*p6);
    M.C.set(1,0,0,1, -0.5*l1*l2*(kp1*std::pow(l1, 2)*p66 - kp1*std::pow(l2, 2)*p66 - kp2*std::pow(l1, 2)*p66 + kp2*std::pow(l2, 2)*p66 - 2*p5));
    M.C.set(1,0,1,0, -0.5*l1*(kp1*std::pow(l1, 2)*std::pow(l2, 2)*p66 - kp1*std::pow(l2, 4)*p66 - kp2*std::pow(l1, 2)*std::pow(l2, 2)*p66 + kp2*std::pow(l2, 4)*p66 - 2*kp2*p4 - 2*std::pow(l1, 2)*p5 - 2*std::pow(l2, 2)*p5 - 2*p3)/l2);
    M.D.set(1,0,0,0, -0.5*std::pow(l1, 2)*(l1 - l2)*(l1 + l2)*(kp2*p46 + std::pow(l1, 2)*p56 + p36));
    M.D.set(1,0,1,1, -0.5*std::pow(l2, 2)*(l1 - l2)*(l1 + l2)*(kp1*p46 + std::pow(l2, 2)*p56 + p36));
    M.D.set_sym(1,0,0,1, 0.5*l1*l2*(std::pow(l1, 4)*p66 - 2*std::pow(l1, 2)*std::pow(l2, 2)*p66 + std::pow(l2, 4)*p66 - 2*p4));
    M.C.set(1,1,0,0, 2*l1*l2*(std::pow(kp1, 2)*p45 + kp1*std::pow(l2, 2)*p24 + kp1*std::pow(l2, 2)*p55 + kp1*p14 + kp1*p35 + std::pow(l2, 4)*p25 + std::pow(l2, 2)*p15 + std::pow(l2, 2)*p23 + p13));
    M.C.set(1,1,1,1, l2*(2*kp1*kp2*std::pow(l2, 2)*p45 + 2*kp1*std::pow(l1, 2)*std::pow(l2, 2)*p24 + 2*kp1*std::pow(l2, 2)*p14 + kp1*p4 + 2*kp2*std::pow(l2, 4)*p55 + 2*kp2*std::pow(l2, 2)*p35 + 2*std::pow(l1, 2)*std::pow(l2, 4)*p25 + 2*std::pow(l1, 2)*std::pow(l2, 2)*p23 + 2*std::pow(l2, 4)*p15 + 2*std::pow(l2, 2)*p13 + 3*std::pow(l2, 2)*p5 + p3)/l1);
    M.C.set(1,1,0,1, std::pow(l2, 2)*(std::pow(kp1, 2)*p46 - kp1*kp2*p46 + kp1*std::pow(l2, 2)*p56 + kp1*p36 - kp2*std::pow(l2, 2)*p56 - kp2*p36 - p6));
    M.C.set(1,1,1,0, std::pow(kp1, 2)*std::pow(l2, 2)*p46 - kp1*kp2*std::pow(l2, 2)*p46 + kp1*std::pow(l2, 4)*p56 + kp1*std::pow(l2, 2)*p36 - kp2*std::pow(l2, 4)*p56 - kp2*std::pow(l2, 2)*p36 - 0.5*std::pow(l1, 2)*p6 - 0.5*std::pow(l2, 2)*p6);
    M.D.set(1,1,0,0, l1*l2*(kp1*kp2*p44 + kp1*std::pow(l1, 2)*p45 + kp1*p34 + kp2*std::pow(l2, 2)*p45 + kp2*p34 + std::pow(l1, 2)*std::pow(l2, 2)*p55 + std::pow(l1, 2)*p35 + std::pow(l2, 2)*p35 + p33 + p4));
    M.D.set(1,1,1,1, std::pow(l2, 3)*(std::pow(kp1, 2)*p44 + 2*kp1*std::pow(l2, 2)*p45 + 2*kp1*p34 + std::pow(l2, 4)*p55 + 2*std::pow(l2, 2)*p35 + p33)/l1);
    M.D.set_sym(1,1,0,1, -std::pow(l2, 2)*(l1 - l2)*(l1 + l2)*(kp1*p46 + std::pow(l2, 2)*p56 + p36));
    M.C.set(2,0,2,0, l1*(kp2*p4 + std::pow(l1, 2)*p5 + p3)/l2);
    M.C.set(2,0,2,1, -0.5*p6*(l1 - l2)*(l1 + l2));
    M.C.set(2,1,2,0, -0.5*p6*(l1 - l2)*(l1 + l2));
    M.C.set(2,1,2,1, l2*(kp1*p4 + std::pow(l2, 2)*p5 + p3)/l1);
    return M;
}

namespace {

// P_s and M_s at an aligned state perturbed along aligned directions only:
// F = diag(f1, f2) with possible out-of-plane rows handled by the caller,
// kappa = diag(c1, c2). For diagonal data the stress and moment are
// diag(dPsi/dl_alpha), diag(dPsi/dk_alpha).
struct DiagStress {
    double p1, p2, m1, m2;
};

DiagStress diag_stress(const SurfaceModel& model, double f1, double f2, double c1, double c2) {
    const auto d = principal_derivs(model, f1, f2, c1, c2);
    return {d.d1[0], d.d1[1], d.d1[2], d.d1[3]};
}

}  // namespace

SurfaceModuli fd_surface_moduli_oracle(const SurfaceModel& model, const SurfacePrincipalState& s,
                                       double step) {
    check_state(s);
    if (step < 1e-7 || step > 1e-4)
        throw std::domain_error("fd_surface_moduli_oracle: step must lie in [1e-7, 1e-4]");
    const double l[2] = {s.lam1, s.lam2};
    const double kp[2] = {s.kap1, s.kap2};
    const double js = s.js_bar();

    SurfaceModuli M;
    M.js_bar = js;

    // derivative blocks by central differences of the base stress/moment
    for (int be = 0; be < 2; ++be) {
        const double hl = step * l[be];
        double f1p = l[0], f2p = l[1], f1m = l[0], f2m = l[1];
        (be == 0 ? f1p : f2p) += hl;
        (be == 0 ? f1m : f2m) -= hl;
        const auto sp = diag_stress(model, f1p, f2p, kp[0], kp[1]);
        const auto sm = diag_stress(model, f1m, f2m, kp[0], kp[1]);
        const double dP[2] = {(sp.p1 - sm.p1) / (2.0 * hl), (sp.p2 - sm.p2) / (2.0 * hl)};
        const double dM[2] = {(sp.m1 - sm.m1) / (2.0 * hl), (sp.m2 - sm.m2) / (2.0 * hl)};
        for (int al = 0; al < 2; ++al) {
            M.A.set(al, al, be, be, l[al] * l[be] * dP[al] / js);
            M.C.add(al, al, be, be, l[al] * l[al] * l[be] * dM[al] / js);
        }

        const double hk = step * (1.0 + std::fabs(kp[be]));
        double c1p = kp[0], c2p = kp[1], c1m = kp[0], c2m = kp[1];
        (be == 0 ? c1p : c2p) += hk;
        (be == 0 ? c1m : c2m) -= hk;
        const auto tp = diag_stress(model, l[0], l[1], c1p, c2p);
        const auto tm = diag_stress(model, l[0], l[1], c1m, c2m);
        const double dPk[2] = {(tp.p1 - tm.p1) / (2.0 * hk), (tp.p2 - tm.p2) / (2.0 * hk)};
        const double dMk[2] = {(tp.m1 - tm.m1) / (2.0 * hk), (tp.m2 - tm.m2) / (2.0 * hk)};
        for (int al = 0; al < 2; ++al) {
            M.B.set(al, al, be, be, l[al] * l[be] * l[be] * dPk[al] / js);
            M.D.set(al, al, be, be, l[al] * l[al] * l[be] * l[be] * dMk[al] / js);
        }
    }
    // stress (non-derivative) contributions
    const auto s0 = diag_stress(model, l[0], l[1], kp[0], kp[1]);
    const double P0[2] = {s0.p1, s0.p2}, M0[2] = {s0.m1, s0.m2};
    for (int al = 0; al < 2; ++al) {
        M.A.set(2, al, 2, al, l[al] * P0[al] / js);
        M.C.set(2, al, 2, al, l[al] * l[al] * M0[al] / js);
        M.C.add(al, al, al, al, l[al] * l[al] * M0[al] / js);
    }
    return M;
}

namespace {

struct Mat32 {
    double v[3][2] = {};
};
struct Mat22 {
    double v[2][2] = {};
};

struct StressPair {
    Mat32 P;
    Mat22 M;
};

StressPair eval_invariant_stress(const InvariantEnergyFn& psi, const Mat32& F, const Mat22& K,
                                 double h1) {
    // invariants of C = F^T F and K
    Mat22 C;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            double t = 0.0;
            for (int i = 0; i < 3; ++i) t += F.v[i][a] * F.v[i][b];
            C.v[a][b] = t;
        }
    std::array<double, 6> I{};
    I[0] = C.v[0][0] + C.v[1][1];
    I[1] = C.v[0][0] * C.v[1][1] - C.v[0][1] * C.v[1][0];
    I[2] = K.v[0][0] + K.v[1][1];
    I[3] = K.v[0][0] * K.v[1][1] - K.v[0][1] * K.v[1][0];
    I[4] = C.v[0][0] * K.v[0][0] + C.v[0][1] * K.v[1][0] + C.v[1][0] * K.v[0][1] +
           C.v[1][1] * K.v[1][1];
    // I6 = tr(C K E), E = [[0,1],[-1,0]]
    // (C K E) trace = (CK)_{01}*E_{10}+... = (CK)_{10} - (CK)_{01} with this E
    const double CK00 = C.v[0][0] * K.v[0][0] + C.v[0][1] * K.v[1][0];
    const double CK01 = C.v[0][0] * K.v[0][1] + C.v[0][1] * K.v[1][1];
    const double CK10 = C.v[1][0] * K.v[0][0] + C.v[1][1] * K.v[1][0];
    const double CK11 = C.v[1][0] * K.v[0][1] + C.v[1][1] * K.v[1][1];
    (void)CK00;
    (void)CK11;
    I[5] = CK10 - CK01;

    // first derivatives of psi by central differences
    std::array<double, 6> dPsi{};
    for (int n = 0; n < 6; ++n) {
        auto Ip = I, Im = I;
        const double h = h1 * (1.0 + std::fabs(I[n]));
        Ip[n] += h;
        Im[n] -= h;
        dPsi[n] = (psi(Ip) - psi(Im)) / (2.0 * h);
    }

    // C^{-1}
    const double det = I[1];
    Mat22 Ci;
    Ci.v[0][0] = C.v[1][1] / det;
    Ci.v[1][1] = C.v[0][0] / det;
    Ci.v[0][1] = -C.v[0][1] / det;
    Ci.v[1][0] = -C.v[1][0] / det;

    // KE - EK and EC - CE with E = [[0,1],[-1,0]]
    auto commutE = [](const Mat22& X) {
        // X*E - E*X
        Mat22 R;
        R.v[0][0] = -X.v[0][1] - X.v[1][0];
        R.v[0][1] = X.v[0][0] - X.v[1][1];
        R.v[1][0] = X.v[0][0] - X.v[1][1];
        R.v[1][1] = X.v[0][1] + X.v[1][0];
        return R;
    };
    const Mat22 KEmEK = commutE(K);
    Mat22 ECmCE = commutE(C);
    for (auto& row : ECmCE.v)
        for (double& x : row) x = -x;

    StressPair out;
    // P = 2 Psi1 F + 2 I2 Psi2 F C^-1 + 2 Psi5 F K + Psi6 F (KE - EK)
    for (int i = 0; i < 3; ++i)
        for (int a = 0; a < 2; ++a) {
            double fci = 0.0, fk = 0.0, fc6 = 0.0;
            for (int b = 0; b < 2; ++b) {
                fci += F.v[i][b] * Ci.v[b][a];
                fk += F.v[i][b] * K.v[b][a];
                fc6 += F.v[i][b] * KEmEK.v[b][a];
            }
            out.P.v[i][a] =
                2.0 * dPsi[0] * F.v[i][a] + 2.0 * I[1] * dPsi[1] * fci + 2.0 * dPsi[4] * fk +
                dPsi[5] * fc6;
        }
    // M = Psi3 1 + Psi4 (tr K 1 - K) + Psi5 C + Psi6/2 (EC - CE)
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            const double kstar = (a == b ? I[2] : 0.0) - K.v[a][b];
            out.M.v[a][b] = (a == b ? dPsi[2] : 0.0) + dPsi[3] * kstar + dPsi[4] * C.v[a][b] +
                            0.5 * dPsi[5] * ECmCE.v[a][b];
        }
    return out;
}

}  // namespace

SurfaceModuli fd_surface_moduli_oracle_invariant(const InvariantEnergyFn& psi,
                                                 const SurfacePrincipalState& s, double step) {
    check_state(s);
    if (step < 1e-7 || step > 1e-4)
        throw std::domain_error("fd_surface_moduli_oracle_invariant: step must lie in [1e-7, 1e-4]");
    const double l[2] = {s.lam1, s.lam2};
    const double js = s.js_bar();
    // inner step for the scalar-energy derivatives; its smooth truncation
    // error mostly cancels in the outer central differences
    const double h1 = 1e-4;

    Mat32 Fb;
    Fb.v[0][0] = l[0];
    Fb.v[1][1] = l[1];
    Mat22 Kb;
    Kb.v[0][0] = s.kap1;
    Kb.v[1][1] = s.kap2;

    // base moment measure tau_bar = Js^-1 Fb Mb Fb^T; off-diagonal entries
    // appear for orientation-coupled energies
    const auto base = eval_invariant_stress(psi, Fb, Kb, h1);
    double tau[2][2];
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) tau[a][b] = l[a] * base.M.v[a][b] * l[b] / js;

    SurfaceModuli out;
    out.js_bar = js;

    // eta probes: unit eta = e_i x e_k  =>  F -> Fb + h (eta Fb)
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 2; ++k) {
            const double h = step;
            Mat32 Fp = Fb, Fm = Fb;
            Fp.v[i][k] += h * l[k];
            Fm.v[i][k] -= h * l[k];
            const auto sp = eval_invariant_stress(psi, Fp, Kb, h1);
            const auto sm = eval_invariant_stress(psi, Fm, Kb, h1);
            // sigma column: Js^-1 dP Fb^T ; m column: Js^-1 Fb dM Fb^T + eta tau_bar
            for (int p = 0; p < 3; ++p)
                for (int q = 0; q < 2; ++q) {
                    const double dP = (sp.P.v[p][q] - sm.P.v[p][q]) / (2.0 * h);
                    out.A.add(p, q, i, k, dP * l[q] / js);
                }
            for (int p = 0; p < 2; ++p)
                for (int q = 0; q < 2; ++q) {
                    const double dM = (sp.M.v[p][q] - sm.M.v[p][q]) / (2.0 * h);
                    out.C.add(p, q, i, k, l[p] * dM * l[q] / js);
                }
            // geometric term (eta tau_bar)_{pq} = delta_{pi} tau_{kq}
            for (int q = 0; q < 2; ++q) out.C.add(i, q, i, k, tau[k][q]);
        }

    // rho probes: symmetric slots (0,0), (1,1), (0,1)
    const int slots[3][2] = {{0, 0}, {1, 1}, {0, 1}};
    for (const auto& sl : slots) {
        const int a = sl[0], b = sl[1];
        const double h = step;
        Mat22 Kp = Kb, Km = Kb;
        // kappa increment = Fb^T rho Fb with rho = sym(e_a x e_b)
        if (a == b) {
            Kp.v[a][a] += h * l[a] * l[a];
            Km.v[a][a] -= h * l[a] * l[a];
        } else {
            Kp.v[0][1] += h * l[0] * l[1];
            Kp.v[1][0] += h * l[0] * l[1];
            Km.v[0][1] -= h * l[0] * l[1];
            Km.v[1][0] -= h * l[0] * l[1];
        }
        const auto sp = eval_invariant_stress(psi, Fb, Kp, h1);
        const auto sm = eval_invariant_stress(psi, Fb, Km, h1);
        for (int p = 0; p < 3; ++p)
            for (int q = 0; q < 2; ++q) {
                const double dP = (sp.P.v[p][q] - sm.P.v[p][q]) / (2.0 * h);
                const double val = dP * l[q] / js;
                if (a == b)
                    out.B.add(p, q, a, b, val);
                else {
                    out.B.add(p, q, 0, 1, 0.5 * val);
                    out.B.add(p, q, 1, 0, 0.5 * val);
                }
            }
        for (int p = 0; p < 2; ++p)
            for (int q = 0; q < 2; ++q) {
                const double dM = (sp.M.v[p][q] - sm.M.v[p][q]) / (2.0 * h);
                const double val = l[p] * dM * l[q] / js;
                if (a == b)
                    out.D.add(p, q, a, b, val);
                else {
                    out.D.add(p, q, 0, 1, 0.5 * val);
                    out.D.add(p, q, 1, 0, 0.5 * val);
                }
            }
    }
    return out;
}

SurfaceIncrementalCoeffs incremental_surface_coeffs(const SurfaceModel& model, double a,
                                                    double lambda, double A) {
    const auto s = SurfacePrincipalState::cylinder(a, lambda, A);
    const auto M = surface_moduli_aligned(model, s);
    const auto p = principal_derivs(model, s.lam1, s.lam2, s.kap1, s.kap2);
    const double M11 = p.d1[2], M22 = p.d1[3];  // base moment components
    const double iaA = 1.0 / (a * A);

    // cylinder kinematics: eta11 = u/(aA), eta22 = v_z, eta32 = u_z,
    //                      rho11 = u/(aA)^2, rho22 = -u_zz
    SurfaceIncrementalCoeffs c;
    // sigma components
    const double s11_u = M.A(0, 0, 0, 0) * iaA + M.B(0, 0, 0, 0) * iaA * iaA;
    const double s11_vz = M.A(0, 0, 1, 1);
    const double s11_uzz = -M.B(0, 0, 1, 1);
    const double s22_u = M.A(1, 1, 0, 0) * iaA + M.B(1, 1, 0, 0) * iaA * iaA;
    const double s22_vz = M.A(1, 1, 1, 1);
    const double s22_uzz = -M.B(1, 1, 1, 1);
    const double s32_uz = M.A(2, 1, 2, 1);
    // moment measure components
    const double m11_u = M.C(0, 0, 0, 0) * iaA + M.D(0, 0, 0, 0) * iaA * iaA;
    const double m11_vz = M.C(0, 0, 1, 1);
    const double m11_uzz = -M.D(0, 0, 1, 1);
    const double m22_u = M.C(1, 1, 0, 0) * iaA + M.D(1, 1, 0, 0) * iaA * iaA;
    const double m22_vz = M.C(1, 1, 1, 1);
    const double m22_uzz = -M.D(1, 1, 1, 1);

    // chi_s11 = sigma11 + m11/(aA) + theta11,  theta11 = -u M11/(a lambda A^2)
    c.c11_u = s11_u + m11_u * iaA - M11 / (a * lambda * A * A);
    c.c11_vz = s11_vz + m11_vz * iaA;
    c.c11_uzz = s11_uzz + m11_uzz * iaA;
    // chi_s22 = sigma22 + theta22,             theta22 = -(lambda/a) M22 u_zz
    c.c22_u = s22_u;
    c.c22_vz = s22_vz;
    c.c22_uzz = s22_uzz - (lambda / a) * M22;
    // chi_s32 = sigma32 + d m22/dz + theta32,  theta32 = -M11/(lambda A) u_z
    c.c32_uz = s32_uz + m22_u - M11 / (lambda * A);
    c.c32_vzz = m22_vz;
    c.c32_uzzz = m22_uzz;
    return c;
}

SurfaceIncrementalCoeffs helfrich_coeffs_printed(double gamma, double beta_s, double h0, double a,
                                                 double lambda, double A) {
    (void)lambda;
    const double aA = a * A;
    SurfaceIncrementalCoeffs c;
    c.c11_vz = gamma + beta_s / (8.0 * aA * aA) * (4.0 * h0 * h0 * aA * aA - 1.0);
    c.c11_u = beta_s / (4.0 * aA * aA * aA);
    c.c11_uzz = -0.5 * beta_s * h0;
    c.c22_u = gamma / aA + beta_s / (8.0 * aA * aA * aA) * (4.0 * h0 * h0 * aA * aA - 1.0);
    c.c32_uz = gamma + beta_s / (8.0 * aA * aA) * (4.0 * h0 * h0 * aA * aA + 4.0 * h0 * aA - 1.0);
    c.c32_uzzz = -0.25 * beta_s;
    return c;
}

}  // namespace curvelast
