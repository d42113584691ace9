#ifndef SOLSURF_SPECFUN_HPP
#define SOLSURF_SPECFUN_HPP

namespace solsurf {

struct AiryValue {
    double ai;   // Ai(z)
    double aip;  // Ai'(z)
};

// Ai and Ai' for |z| <= 30. Maclaurin series on |z| <= 4, continuation of
// y'' = z y outward from the series boundary beyond that. Absolute or
// relative error <= 1e-10 on the stated range.
AiryValue airy(double z);

// Modified Bessel function I_nu(z), ascending series, z in (0, 30].
// Throws DomainError for z <= 0 or z > series range.
double bessel_i(double nu, double z);

// Gamma function, Lanczos approximation (g = 7, 9 coefficients) with the
// reflection formula on x < 0.5. Throws DomainError at non-positive integers.
double gamma_fn(double x);

} // namespace solsurf

#endif
