#include <doctest.h>

#include <cmath>
#include <random>

#include "curvelast/bulk.hpp"

using namespace curvelast;

TEST_CASE("bulk_energy reference values") {
    CHECK(bulk_energy(1.0, 1.0, BulkMaterial(1.0, 3.0)) == 0.0);
    CHECK(bulk_energy(1.0, 2.0, BulkMaterial(1.0, 0.0)) ==
          doctest::Approx(1.5 - std::log(2.0)).epsilon(1e-15));
    CHECK(bulk_energy(1.0, 1.0, BulkMaterial(1e-12, 2.0)) == doctest::Approx(0.0));
    CHECK_THROWS_AS(bulk_energy(-1.0, 1.0, BulkMaterial(1.0, 0.0)), std::domain_error);
}

TEST_CASE("BulkMaterial invariants") {
    CHECK_THROWS_AS(BulkMaterial(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(BulkMaterial(1.0, -1.0), std::domain_error);
    CHECK(BulkMaterial(1.0, 0.0).poisson() == 0.0);
    CHECK(BulkMaterial(1.0, 49.0).poisson() == doctest::Approx(0.49).epsilon(1e-15));
    CHECK(BulkMaterial::from_poisson(1.0, 0.4).d_modulus == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("base_pk1 values") {
    CHECK(base_pk1(1.0, 1.0, BulkMaterial(1.0, 0.0)).max_abs() == 0.0);
    const Tensor2 p = base_pk1(1.0, 2.0, BulkMaterial(1.0, 0.0));
    CHECK(p(0, 0) == 0.0);
    CHECK(p(1, 1) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(p(2, 2) == 0.0);
    CHECK(base_pk1(1.0, 1.0, BulkMaterial(1.0, 2.0)).max_abs() == 0.0);
    // P11 = P33 always
    const Tensor2 q = base_pk1(0.8, 1.7, BulkMaterial(1.3, 2.2));
    CHECK(q(0, 0) == q(2, 2));
}

TEST_CASE("base_pk1 is the stretch gradient of the energy") {
    const double h = 1e-6;
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> sd(0.6, 1.6), md(0.3, 2.0), dd(0.0, 4.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double a = sd(rng), lam = sd(rng);
        const BulkMaterial mat(md(rng), dd(rng));
        const Tensor2 p = base_pk1(a, lam, mat);
        const double dWdl = (bulk_energy(a, lam + h, mat) - bulk_energy(a, lam - h, mat)) / (2 * h);
        const double dWda = (bulk_energy(a + h, lam, mat) - bulk_energy(a - h, lam, mat)) / (2 * h);
        CHECK(dWdl == doctest::Approx(p(1, 1)).epsilon(1e-7));
        CHECK(dWda == doctest::Approx(p(0, 0) + p(2, 2)).epsilon(1e-7));
    }
}

TEST_CASE("incremental coefficient table at the reference state") {
    const auto c1 = incremental_bulk_coeffs(1.0, 1.0, BulkMaterial(1.0, 0.0));
    CHECK(c1.diag_hoop == doctest::Approx(2.0));   // (2 mu (a^2+1)) / (2 a^2 lambda)
    CHECK(c1.shear_zr == doctest::Approx(1.0));    // chi23 coefficient of dv/dr
    CHECK(c1.shear_mixed == doctest::Approx(1.0));
    CHECK(c1.shear_rz == doctest::Approx(1.0));    // isotropy: chi23 and chi32 tables coincide

    const auto c2 = incremental_bulk_coeffs(1.0, 1.0, BulkMaterial(1e-14, 1.0));
    CHECK(c2.diag_hoop == doctest::Approx(1.0));
    CHECK(c2.cross == doctest::Approx(1.0));
}

TEST_CASE("chi33 table equals chi11 table with u/r and du/dr roles swapped") {
    const auto c = incremental_bulk_coeffs(0.9, 1.4, BulkMaterial(1.2, 2.5));
    AxisymGradient g1{0.7, 0.0, 0.0, 0.0, 0.3};
    AxisymGradient g2{0.3, 0.0, 0.0, 0.0, 0.7};
    CHECK(c.evaluate(g1)(0, 0) == doctest::Approx(c.evaluate(g2)(2, 2)).epsilon(1e-15));
}

TEST_CASE("two-path equivalence: coefficient table vs metric moduli contraction") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> sd(0.5, 1.7), md(0.2, 2.0), dd(0.0, 5.0),
        slot(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const double a = sd(rng), lam = sd(rng);
        const BulkMaterial mat(md(rng), dd(rng));
        AxisymGradient g{slot(rng), slot(rng), slot(rng), slot(rng), slot(rng)};
        const Tensor2 chi_table = incremental_bulk_coeffs(a, lam, mat).evaluate(g);
        const double chart_radius = (trial % 3 == 0) ? 1.0 : (trial % 3 == 1 ? 0.6 : 2.4);
        const auto moduli = bulk_moduli_check(a, lam, mat, chart_radius);
        const Tensor2 chi_mod = chi_from_moduli(moduli, g.as_tensor(), a, lam);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK(std::fabs(chi_table(i, j) - chi_mod(i, j)) <=
                      1e-12 * std::max(1.0, std::fabs(chi_table(i, j))));
    }
}

TEST_CASE("moduli contraction examples") {
    // shear mode at the reference state: chi_23 = mu dv/dr
    const auto moduli = bulk_moduli_check(1.0, 1.0, BulkMaterial(1.0, 0.0));
    Tensor2 eta;
    eta(1, 2) = 1.0;  // e_z x e_r
    CHECK(chi_from_moduli(moduli, eta, 1.0, 1.0)(1, 2) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(chi_from_moduli(moduli, Tensor2::zero(), 1.0, 1.0).max_abs() == 0.0);
}

TEST_CASE("volumetric stiffening scales linearly in D near the incompressible branch") {
    // D-coefficient of the dilatational combination du/dr + dv/dz + u/r
    const double lam = 1.5, a = 1.0 / std::sqrt(lam);
    AxisymGradient g{1.0 / 3, 1.0 / 3, 0.0, 0.0, 1.0 / 3};
    double prev = 0.0;
    for (double D : {1e2, 1e3, 1e4}) {
        const auto c = incremental_bulk_coeffs(a, lam, BulkMaterial(1.0, D));
        const double trace_like = c.evaluate(g)(0, 0) + c.evaluate(g)(1, 1) + c.evaluate(g)(2, 2);
        if (prev != 0.0) CHECK(trace_like / prev == doctest::Approx(10.0).epsilon(0.05));
        prev = trace_like;
    }
}
