#include "solsurf/specfun.hpp"

#include <cmath>
#include <limits>

#include "solsurf/errors.hpp"
#include "solsurf/ode.hpp"

namespace solsurf {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Lanczos coefficients, g = 7.
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

double gamma_positive(double x) {
    // valid for x >= 0.5
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (x - 1.0 + i);
    const double t = x + 6.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, x - 0.5) * std::exp(-t) * acc;
}

// Ai(0), Ai'(0) in terms of gamma values; evaluated once.
double airy_c1() { return 1.0 / (std::pow(3.0, 2.0 / 3.0) * gamma_positive(2.0 / 3.0)); }
double airy_c2() { return -1.0 / (std::pow(3.0, 1.0 / 3.0) * gamma_positive(1.0 / 3.0)); }

// Maclaurin solutions f, g of y'' = z y with f(0)=1, f'(0)=0 and g(0)=0,
// g'(0)=1; coefficients obey a_{n+3} = a_n / ((n+3)(n+2)).
struct SeriesPair {
    double value;
    double deriv;
};

SeriesPair airy_basis_f(double z) {
    double term = 1.0, value = 1.0, deriv = 0.0;
    for (int n = 0; n < 200; ++n) {
        const int m = 3 * n;
        term *= z * z * z / ((m + 3.0) * (m + 2.0));
        value += term;
        deriv += term * (m + 3.0) / z;  // derivative of z^(m+3)
        if (std::abs(term) < 1e-18 * (std::abs(value) + 1.0)) break;
    }
    return {value, deriv};
}

SeriesPair airy_basis_g(double z) {
    double term = z, value = z, deriv = 1.0;
    for (int n = 0; n < 200; ++n) {
        const int m = 3 * n + 1;
        term *= z * z * z / ((m + 3.0) * (m + 2.0));
        value += term;
        deriv += term * (m + 3.0) / z;
    }
    return {value, deriv};
}

AiryValue airy_series(double z) {
    if (z == 0.0) return {airy_c1(), airy_c2()};
    const SeriesPair f = airy_basis_f(z);
    const SeriesPair g = airy_basis_g(z);
    const double c1 = airy_c1(), c2 = airy_c2();
    return {c1 * f.value + c2 * g.value, c1 * f.deriv + c2 * g.deriv};
}

} // namespace

AiryValue airy(double z) {
    if (std::abs(z) > 30.0) throw DomainError("airy: |z| exceeds supported range 30");
    if (std::abs(z) <= 4.0) return airy_series(z);

    // Continue y'' = z y from the series boundary out to z.
    const double z0 = (z > 0.0) ? 4.0 : -4.0;
    const AiryValue start = airy_series(z0);
    std::array<double, 2> y = {start.ai, start.aip};
    OdeOptions opt;
    opt.rel_tol = 1e-13;
    opt.abs_tol = 1e-16;
    integrate_adaptive<2>(
        [](double s, const std::array<double, 2>& v, std::array<double, 2>& dv) {
            dv[0] = v[1];
            dv[1] = s * v[0];
        },
        z0, y, z, opt);
    return {y[0], y[1]};
}

double bessel_i(double nu, double z) {
    if (z <= 0.0) throw DomainError("bessel_i: requires z > 0");
    if (z > 30.0) throw DomainError("bessel_i: z exceeds supported range 30");
    // I_nu(z) = sum_k (z/2)^(nu+2k) / (k! Gamma(nu+k+1)), all terms positive.
    const double q = 0.25 * z * z;
    double term = std::pow(0.5 * z, nu) / gamma_fn(nu + 1.0);
    double sum = term;
    for (int k = 0; k < 500; ++k) {
        term *= q / ((k + 1.0) * (nu + k + 1.0));
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

double gamma_fn(double x) {
    if (x >= 0.5) return gamma_positive(x);
    // Reflection: Gamma(x) = pi / (sin(pi x) Gamma(1-x)).
    const double s = std::sin(kPi * x);
    if (x == std::floor(x) || s == 0.0)
        throw DomainError("gamma_fn: pole at non-positive integer");
    return kPi / (s * gamma_positive(1.0 - x));
}

} // namespace solsurf
