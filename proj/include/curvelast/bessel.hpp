#pragma once

// Modified Bessel functions of the first kind, orders 0 and 1, plus the
// ratio I0/I1. Power series up to the crossover, asymptotic expansion above
// it; both branches agree to ~1e-15 at the crossover so the relative error
// stays below 1e-14 everywhere in the supported range.

namespace curvelast {

inline constexpr double kBesselSeriesCutoff = 30.0;
inline constexpr double kBesselMaxArgument = 700.0;  // e^x overflows past ~709

// I_order(x) for order in {0,1}. Throws std::domain_error for x < 0,
// x > 700, or order outside {0,1}.
double bessel_i(int order, double x);

// I0(x)/I1(x) for x > 0; uses 2/x + x/4 below 1e-4. Safe for large x (the
// exponential factors cancel). Throws std::domain_error for x <= 0.
double bessel_i_ratio01(double x);

// I0'(x) = I1(x)
double bessel_i0_prime(double x);

// I1'(x) = I0(x) - I1(x)/x, with the x -> 0 limit 1/2.
double bessel_i1_prime(double x);

}  // namespace curvelast
