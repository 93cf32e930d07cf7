#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "curvelast/surface.hpp"

using namespace curvelast;

namespace {

double entry_gap(const Tensor4Block& x, const Tensor4Block& y, int i, int j, int k, int l) {
    return std::fabs(x(i, j, k, l) - y(i, j, k, l));
}

// synthetic polynomial invariant energy with stretch-curvature and
// orientation coupling, used to exercise the I5/I6 entries
struct PolyEnergy {
    double value(const std::array<double, 6>& I) const {
        return 0.3 * I[0] * I[0] + 0.2 * I[0] * I[1] + 0.15 * I[2] * I[4] + 0.1 * I[3] * I[3] +
               0.25 * I[4] * I[5] + 0.2 * I[5] * I[5] + 0.12 * I[0] * I[5] + 0.4 * I[1] +
               0.05 * I[4] * I[4];
    }
    InvariantDerivs derivs(const SurfaceInvariants& inv) const {
        InvariantDerivs d;
        const double I1 = inv.i1, I2 = inv.i2, I3 = inv.i3, I4 = inv.i4, I5 = inv.i5, I6 = inv.i6;
        d.d1 = {0.6 * I1 + 0.2 * I2 + 0.12 * I6,
                0.2 * I1 + 0.4,
                0.15 * I5,
                0.2 * I4,
                0.15 * I3 + 0.25 * I6 + 0.1 * I5,
                0.25 * I5 + 0.4 * I6 + 0.12 * I1};
        auto set = [&](int i, int j, double v) { d.d2[i][j] = d.d2[j][i] = v; };
        set(0, 0, 0.6);
        set(0, 1, 0.2);
        set(0, 5, 0.12);
        set(2, 4, 0.15);
        set(3, 3, 0.2);
        set(4, 5, 0.25);
        set(5, 5, 0.4);
        set(4, 4, 0.1);
        return d;
    }
};

}  // namespace

TEST_CASE("surface_energy examples") {
    CHECK(surface_energy(SurfaceModel::tension(1.0), {1.0, 1.0, 0.0, 0.0, 1.0}) == 1.0);
    CHECK(surface_energy(SurfaceModel::stretch(0.0, 2.0), {2.0, 1.0, 0.0, 0.0, 1.0}) ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK(surface_energy(SurfaceModel::helfrich(0.0, 8.0, 0.0), {1.0, 1.0, 1.0, 0.0, 1.0}) ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(surface_energy(SurfaceModel::tension(1.0), {0.0, 1.0, 0.0, 0.0, 1.0}),
                    std::domain_error);
}

TEST_CASE("SurfaceModel factories enforce parameter invariants") {
    CHECK_THROWS_AS(SurfaceModel::tension(-1.0), std::domain_error);
    CHECK_THROWS_AS(SurfaceModel::stretch(1.0, -0.1), std::domain_error);
    CHECK_THROWS_AS(SurfaceModel::helfrich(1.0, -2.0, 0.0), std::domain_error);
    CHECK(SurfaceModel::stretch(1.0, 2.0).beta_s == 0.0);
    CHECK(SurfaceModel::helfrich(1.0, 2.0, -1.0).alpha_s == 0.0);
}

TEST_CASE("base surface stress and moment") {
    SUBCASE("pure tension") {
        const auto [ps, ms] = base_surface_stress_moment(SurfaceModel::tension(1.0), 0.8, 1.5, 1.0);
        CHECK(ps(0, 0) == doctest::Approx(1.5).epsilon(1e-15));
        CHECK(ps(1, 1) == doctest::Approx(0.8).epsilon(1e-15));
        CHECK(ms.max_abs() == 0.0);
    }
    SUBCASE("bending moment at the reference state") {
        const auto [ps, ms] =
            base_surface_stress_moment(SurfaceModel::helfrich(0.0, 4.0, 0.0), 1.0, 1.0, 1.0);
        CHECK(ms(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(ms(1, 1) == doctest::Approx(1.0).epsilon(1e-14));
        (void)ps;
    }
    SUBCASE("zero model") {
        const auto [ps, ms] = base_surface_stress_moment(SurfaceModel::tension(0.0), 1.2, 0.7, 1.0);
        CHECK(ps.max_abs() == 0.0);
        CHECK(ms.max_abs() == 0.0);
    }
    SUBCASE("printed Helfrich components at a general state") {
        const double g = 0.7, b = 1.9, h0 = -1.2, a = 0.85, lam = 1.35, A = 1.2;
        const auto [ps, ms] = base_surface_stress_moment(SurfaceModel::helfrich(g, b, h0), a, lam, A);
        const double aA = a * A;
        CHECK(ps(0, 0) == doctest::Approx(g * lam + b * lam / (8 * aA * aA) *
                                                        (4 * aA * aA * h0 * h0 - 4 * aA * h0 - 3))
                              .epsilon(1e-13));
        CHECK(ps(1, 1) ==
              doctest::Approx(g * a + b / (8 * a * A * A) * (2 * aA * h0 + 1) * (2 * aA * h0 + 1))
                  .epsilon(1e-13));
        CHECK(ms(0, 0) ==
              doctest::Approx(b * lam / (4 * a * aA) * (2 * aA * h0 + 1)).epsilon(1e-13));
        CHECK(ms(1, 1) == doctest::Approx(b / (4 * lam * A) * (2 * aA * h0 + 1)).epsilon(1e-13));
    }
}

TEST_CASE("aligned moduli closed-form spot values") {
    SUBCASE("pure tension at the reference state") {
        const auto M = surface_moduli_aligned(SurfaceModel::tension(1.0), {1.0, 1.0, 0.0, 0.0, 1.0});
        CHECK(M.js_bar * M.A(0, 0, 1, 1) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(M.js_bar * M.A(2, 0, 2, 0) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(M.A(0, 1, 0, 1) == doctest::Approx(0.0));  // equal-stretch limit
    }
    SUBCASE("curvature-independent models have zero B, C, D") {
        for (const auto& model : {SurfaceModel::tension(1.3), SurfaceModel::stretch(0.7, 2.1)}) {
            const auto M = surface_moduli_aligned(model, {0.9, 1.4, 0.8, -0.3, 1.0});
            CHECK(M.B.max_abs() == 0.0);
            CHECK(M.C.max_abs() == 0.0);
            CHECK(M.D.max_abs() == 0.0);
        }
    }
    SUBCASE("Helfrich curvature stiffness at the flat reference") {
        const auto M =
            surface_moduli_aligned(SurfaceModel::helfrich(0.0, 1.0, 0.0), {1.0, 1.0, 0.0, 0.0, 1.0});
        CHECK(M.js_bar * M.D(0, 0, 0, 0) == doctest::Approx(0.25).epsilon(1e-14));
    }
}

TEST_CASE("FD oracle validates the aligned moduli (principal sector)") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> sd(0.6, 1.6), kd(-1.5, 1.5);
    const SurfaceModel models[] = {SurfaceModel::tension(1.1), SurfaceModel::stretch(0.8, 1.7),
                                   SurfaceModel::helfrich(0.6, 1.3, -0.8)};
    for (const auto& model : models) {
        for (int trial = 0; trial < 50; ++trial) {
            SurfacePrincipalState s{sd(rng), sd(rng), kd(rng), kd(rng), 1.0};
            const auto an = surface_moduli_aligned(model, s);
            const auto fd = fd_surface_moduli_oracle(model, s, 1e-5);
            const Tensor4Block* a4[4] = {&an.A, &an.B, &an.C, &an.D};
            const Tensor4Block* f4[4] = {&fd.A, &fd.B, &fd.C, &fd.D};
            for (int b = 0; b < 4; ++b)
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j)
                        for (int k = 0; k < 3; ++k)
                            for (int l = 0; l < 3; ++l) {
                                if (!f4[b]->in_mask(i, j, k, l)) continue;
                                const double want = (*f4[b])(i, j, k, l);
                                const double got = (*a4[b])(i, j, k, l);
                                CHECK(std::fabs(got - want) <=
                                      std::max(1e-6 * std::fabs(want), 1e-10));
                            }
        }
    }
    CHECK_THROWS_AS(fd_surface_moduli_oracle(models[0], {1.0, 1.0, 0.0, 0.0, 1.0}, 1e-2),
                    std::domain_error);
}

TEST_CASE("invariant-form equals aligned-form moduli on matching energies") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> sd(0.7, 1.5), kd(-1.0, 1.0);

    SUBCASE("coupling-free models agree on every populated entry") {
        for (const auto& model : {SurfaceModel::tension(0.9), SurfaceModel::stretch(1.2, 0.6)}) {
            for (int trial = 0; trial < 20; ++trial) {
                SurfacePrincipalState s{sd(rng), sd(rng), kd(rng), kd(rng), 1.0};
                const auto al = surface_moduli_aligned(model, s);
                const auto in =
                    surface_moduli_invariant(invariant_derivs(model, SurfaceInvariants::from_state(s)), s);
                const Tensor4Block* x4[4] = {&al.A, &al.B, &al.C, &al.D};
                const Tensor4Block* y4[4] = {&in.A, &in.B, &in.C, &in.D};
                for (int b = 0; b < 4; ++b)
                    for (int i = 0; i < 3; ++i)
                        for (int j = 0; j < 3; ++j)
                            for (int k = 0; k < 3; ++k)
                                for (int l = 0; l < 3; ++l)
                                    CHECK(entry_gap(*x4[b], *y4[b], i, j, k, l) <= 1e-10);
            }
        }
    }

    SUBCASE("Helfrich agrees on the tangential and out-of-plane sector") {
        const auto model = SurfaceModel::helfrich(0.5, 1.1, -0.7);
        for (int trial = 0; trial < 20; ++trial) {
            SurfacePrincipalState s{sd(rng), sd(rng), kd(rng), kd(rng), 1.0};
            const auto al = surface_moduli_aligned(model, s);
            const auto in =
                surface_moduli_invariant(invariant_derivs(model, SurfaceInvariants::from_state(s)), s);
            for (int al_i = 0; al_i < 2; ++al_i)
                for (int be = 0; be < 2; ++be) {
                    CHECK(entry_gap(al.A, in.A, al_i, al_i, be, be) <= 1e-10);
                    CHECK(entry_gap(al.B, in.B, al_i, al_i, be, be) <= 1e-10);
                    CHECK(entry_gap(al.C, in.C, al_i, al_i, be, be) <= 1e-10);
                    CHECK(entry_gap(al.D, in.D, al_i, al_i, be, be) <= 1e-10);
                }
            for (int al_i = 0; al_i < 2; ++al_i) {
                CHECK(entry_gap(al.A, in.A, 2, al_i, 2, al_i) <= 1e-10);
                CHECK(entry_gap(al.C, in.C, 2, al_i, 2, al_i) <= 1e-10);
            }
        }
    }
}

TEST_CASE("full FD oracle validates the invariant moduli, including I5/I6 coupling") {
    const PolyEnergy poly;
    InvariantEnergyFn fn = [&poly](const std::array<double, 6>& I) { return poly.value(I); };
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> sd(0.7, 1.4), kd(-0.9, 0.9);
    for (int trial = 0; trial < 10; ++trial) {
        SurfacePrincipalState s{sd(rng), sd(rng), kd(rng), kd(rng), 1.0};
        const auto an = surface_moduli_invariant(poly.derivs(SurfaceInvariants::from_state(s)), s);
        const auto fd = fd_surface_moduli_oracle_invariant(fn, s, 1e-4);
        const Tensor4Block* a4[4] = {&an.A, &an.B, &an.C, &an.D};
        const Tensor4Block* f4[4] = {&fd.A, &fd.B, &fd.C, &fd.D};
        for (int b = 0; b < 4; ++b)
            for (int n = 0; n < 81; ++n)
                CHECK(std::fabs(a4[b]->v[n] - f4[b]->v[n]) <=
                      1e-6 * std::max({std::fabs(a4[b]->v[n]), std::fabs(f4[b]->v[n]), 1.0}));
    }
    SUBCASE("zero derivatives give zero moduli") {
        const auto zero = surface_moduli_invariant(InvariantDerivs{}, {1.1, 0.9, 0.4, -0.2, 1.0});
        CHECK(zero.A.max_abs() == 0.0);
        CHECK(zero.B.max_abs() == 0.0);
        CHECK(zero.C.max_abs() == 0.0);
        CHECK(zero.D.max_abs() == 0.0);
    }
}

TEST_CASE("base stress is recovered from the out-of-plane stiffness entries") {
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> sd(0.6, 1.6);
    for (int trial = 0; trial < 20; ++trial) {
        const double a = sd(rng), lam = sd(rng), A = 1.0;
        const auto model = SurfaceModel::helfrich(0.8, 1.4, -0.9);
        const auto s = SurfacePrincipalState::cylinder(a, lam, A);
        const auto M = surface_moduli_aligned(model, s);
        const auto [ps, ms] = base_surface_stress_moment(model, a, lam, A);
        (void)ms;
        CHECK(ps(0, 0) ==
              doctest::Approx(M.js_bar * M.A(2, 0, 2, 0) / s.lam1).epsilon(1e-12));
        CHECK(ps(1, 1) ==
              doctest::Approx(M.js_bar * M.A(2, 1, 2, 1) / s.lam2).epsilon(1e-12));
    }
}

TEST_CASE("degenerate-limit continuity of the shear entries") {
    // equal stretches: coupling-free model, arbitrary curvatures
    const auto stretch_model = SurfaceModel::stretch(0.9, 1.4);
    const double lim = surface_moduli_aligned(stretch_model, {1.2, 1.2, 0.5, -0.3, 1.0}).A(0, 1, 0, 1);
    for (double eps : {1e-4, 1e-6}) {
        const double off =
            surface_moduli_aligned(stretch_model, {1.2 * (1.0 + eps), 1.2, 0.5, -0.3, 1.0})
                .A(0, 1, 0, 1);
        CHECK(std::fabs(off - lim) <= 50.0 * eps * std::max(1.0, std::fabs(lim)));
    }
    // equal curvatures: curvature-symmetric state for the bending model
    const auto helf = SurfaceModel::helfrich(0.4, 1.2, -0.6);
    const double dlim = surface_moduli_aligned(helf, {1.1, 1.1, 0.7, 0.7, 1.0}).D(0, 1, 0, 1);
    for (double eps : {1e-4, 1e-6}) {
        const double off =
            surface_moduli_aligned(helf, {1.1, 1.1, 0.7 * (1.0 + eps), 0.7, 1.0}).D(0, 1, 0, 1);
        CHECK(std::fabs(off - dlim) <= 50.0 * eps * std::max(1.0, std::fabs(dlim)));
    }
}

TEST_CASE("incremental surface coefficients") {
    SUBCASE("tension-only printed values") {
        const auto c = incremental_surface_coeffs(SurfaceModel::helfrich(1.0, 0.0, 0.0), 0.9, 1.3, 1.1);
        CHECK(c.c11_vz == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(c.c32_uz == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("bending values at the reference state") {
        const auto c = incremental_surface_coeffs(SurfaceModel::helfrich(0.0, 8.0, 0.0), 1.0, 1.0, 1.0);
        CHECK(c.c11_u == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(c.c11_uzz == doctest::Approx(0.0));
    }
    SUBCASE("generic assembly reproduces the printed bending table") {
        std::mt19937_64 rng(12);
        std::uniform_real_distribution<double> sd(0.5, 1.6), rd(0.6, 1.5), pd(0.0, 3.0),
            hd(-2.0, 1.0);
        for (int trial = 0; trial < 50; ++trial) {
            const double a = sd(rng), lam = sd(rng), A = rd(rng);
            const double g = pd(rng), b = pd(rng), h0 = hd(rng);
            const auto gen = incremental_surface_coeffs(SurfaceModel::helfrich(g, b, h0), a, lam, A);
            const auto ref = helfrich_coeffs_printed(g, b, h0, a, lam, A);
            const double pairs[][2] = {
                {gen.c11_u, ref.c11_u},     {gen.c11_vz, ref.c11_vz},   {gen.c11_uzz, ref.c11_uzz},
                {gen.c22_u, ref.c22_u},     {gen.c22_vz, ref.c22_vz},   {gen.c22_uzz, ref.c22_uzz},
                {gen.c32_uz, ref.c32_uz},   {gen.c32_vzz, ref.c32_vzz}, {gen.c32_uzzz, ref.c32_uzzz},
            };
            for (const auto& p : pairs)
                CHECK(std::fabs(p[0] - p[1]) <= 1e-12 * std::max(1.0, std::fabs(p[1])));
        }
    }
    SUBCASE("stretch-resistance has no bending terms") {
        const auto c = incremental_surface_coeffs(SurfaceModel::stretch(0.9, 2.0), 0.8, 1.4, 1.0);
        CHECK(c.c11_uzz == 0.0);
        CHECK(c.c32_uzzz == 0.0);
        CHECK(c.c32_vzz == 0.0);
    }
}
