#include "curvelast/bessel.hpp"

#include <cmath>
#include <stdexcept>

namespace curvelast {

namespace {

// Ascending series I_nu(x) = (x/2)^nu sum_m (x^2/4)^m / (m! (m+nu)!).
// All terms positive, no cancellation; converges comfortably for x <= 30.
double series_i(int nu, double x) {
    const double q = 0.25 * x * x;
    double term = (nu == 0) ? 1.0 : 0.5 * x;
    double sum = term;
    for (int m = 1; m < 80; ++m) {
        term *= q / (static_cast<double>(m) * (m + nu));
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

// Asymptotic sum S_nu(x) with I_nu(x) = e^x / sqrt(2 pi x) * S_nu(x).
// Term recurrence t_{k} = -t_{k-1} (mu - (2k-1)^2) / (8 k x), mu = 4 nu^2.
double asymptotic_sum(int nu, double x) {
    const double mu = 4.0 * nu * nu;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k <= 20; ++k) {
        const double tk = 2.0 * k - 1.0;
        term *= -(mu - tk * tk) / (8.0 * k * x);
        sum += term;
        if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
    }
    return sum;
}

}  // namespace

double bessel_i(int order, double x) {
    if (order != 0 && order != 1) throw std::domain_error("bessel_i: order must be 0 or 1");
    if (x < 0.0) throw std::domain_error("bessel_i: negative argument");
    if (x > kBesselMaxArgument) throw std::domain_error("bessel_i: argument above overflow guard (700)");
    if (x <= kBesselSeriesCutoff) return series_i(order, x);
    return std::exp(x) / std::sqrt(2.0 * M_PI * x) * asymptotic_sum(order, x);
}

double bessel_i_ratio01(double x) {
    if (x <= 0.0) throw std::domain_error("bessel_i_ratio01: argument must be positive");
    if (x < 1e-4) return 2.0 / x + 0.25 * x;
    if (x <= kBesselSeriesCutoff) return series_i(0, x) / series_i(1, x);
    return asymptotic_sum(0, x) / asymptotic_sum(1, x);
}

double bessel_i0_prime(double x) { return bessel_i(1, x); }

double bessel_i1_prime(double x) {
    if (x == 0.0) return 0.5;
    return bessel_i(0, x) - bessel_i(1, x) / x;
}

}  // namespace curvelast
