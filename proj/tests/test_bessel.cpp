#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "curvelast/bessel.hpp"

using namespace curvelast;

namespace {

// independent 30-term ascending-series oracle
double series_oracle(int nu, double x, int terms = 30) {
    double term = (nu == 0) ? 1.0 : 0.5 * x;
    double sum = term;
    for (int m = 1; m < terms; ++m) {
        term *= 0.25 * x * x / (static_cast<double>(m) * (m + nu));
        sum += term;
    }
    return sum;
}

double series_i2(double x, int terms = 40) {
    double term = 0.25 * x * x / 2.0;  // (x/2)^2 / (0! 2!)
    double sum = term;
    for (int m = 1; m < terms; ++m) {
        term *= 0.25 * x * x / (static_cast<double>(m) * (m + 2));
        sum += term;
    }
    return sum;
}

}  // namespace

TEST_CASE("bessel_i endpoint and series values") {
    CHECK(bessel_i(0, 0.0) == 1.0);
    CHECK(bessel_i(1, 0.0) == 0.0);
    CHECK(bessel_i(0, 1.0) == doctest::Approx(1.26606587775201).epsilon(1e-14));
    for (double x : {1e-3, 0.1, 0.5, 1.0, 2.0, 5.0, 9.0, 14.0}) {
        CHECK(bessel_i(0, x) == doctest::Approx(series_oracle(0, x)).epsilon(1e-14));
        CHECK(bessel_i(1, x) == doctest::Approx(series_oracle(1, x)).epsilon(1e-14));
    }
}

TEST_CASE("bessel_i across the series/asymptotic crossover and at large x") {
    // reference values computed at 30 significant digits
    CHECK(bessel_i(0, 30.0) == doctest::Approx(781672297823.97749).epsilon(1e-14));
    CHECK(bessel_i(1, 30.0) == doctest::Approx(768532038938.957).epsilon(1e-14));
    CHECK(bessel_i(0, 30.000001) == doctest::Approx(781673066356.39446).epsilon(1e-14));
    CHECK(bessel_i(1, 30.000001) == doctest::Approx(768532794993.89228).epsilon(1e-14));
    CHECK(bessel_i(0, 100.0) == doctest::Approx(1.0737517071310738e42).epsilon(1e-14));
    CHECK(bessel_i(1, 100.0) == doctest::Approx(1.0683693903381625e42).epsilon(1e-14));
    CHECK(bessel_i(0, 700.0) == doctest::Approx(1.5295933476718737e302).epsilon(1e-13));
}

TEST_CASE("bessel_i domain errors") {
    CHECK_THROWS_AS(bessel_i(0, -1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_i(1, 700.5), std::domain_error);
    CHECK_THROWS_AS(bessel_i(2, 1.0), std::domain_error);
}

TEST_CASE("bessel_i_ratio01 values") {
    CHECK(bessel_i_ratio01(1e-6) == doctest::Approx(2e6 + 2.5e-7).epsilon(1e-12));
    CHECK(bessel_i_ratio01(1.0) == doctest::Approx(2.2401937238700897).epsilon(1e-13));
    CHECK(bessel_i_ratio01(100.0) == doctest::Approx(1.0050378800081568).epsilon(1e-13));
    // asymptotic trend 1 + 1/(2x) + O(x^-2)
    CHECK(bessel_i_ratio01(100.0) == doctest::Approx(1.0 + 0.005).epsilon(1e-4));
    CHECK_THROWS_AS(bessel_i_ratio01(0.0), std::domain_error);
    CHECK_THROWS_AS(bessel_i_ratio01(-2.0), std::domain_error);
    // the small-argument expansion agrees with the series quotient
    for (double x : {0.5e-4, 0.9999e-4}) {
        CHECK(bessel_i_ratio01(x) ==
              doctest::Approx(bessel_i(0, x) / bessel_i(1, x)).epsilon(1e-12));
    }
}

TEST_CASE("derivative identities against central differences") {
    const double h = 1e-6;
    for (double x : {0.3, 1.0, 3.0, 8.0, 20.0}) {
        const double fd0 = (bessel_i(0, x + h) - bessel_i(0, x - h)) / (2.0 * h);
        const double fd1 = (bessel_i(1, x + h) - bessel_i(1, x - h)) / (2.0 * h);
        CHECK(std::fabs(bessel_i0_prime(x) - fd0) < 1e-8 * std::max(1.0, std::fabs(fd0)));
        CHECK(std::fabs(bessel_i1_prime(x) - fd1) < 1e-8 * std::max(1.0, std::fabs(fd1)));
    }
    CHECK(bessel_i1_prime(0.0) == 0.5);
}

TEST_CASE("recurrence I0 - I2 = 2 I1 / x") {
    for (double x : {0.2, 1.0, 4.0, 12.0}) {
        const double lhs = bessel_i(0, x) - series_i2(x);
        const double rhs = 2.0 * bessel_i(1, x) / x;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
    }
}
