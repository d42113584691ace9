#ifndef SOLSURF_HERMITE_HPP
#define SOLSURF_HERMITE_HPP

namespace solsurf {

// Quintic Hermite interpolation on [0, 1] from endpoint values and first and
// second derivatives (the derivative data pre-scaled by h and h^2).
inline double quintic_hermite(double s, double p0, double m0, double a0, double p1, double m1,
                              double a1) {
    const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
    return p0 * (1 - 10 * s3 + 15 * s4 - 6 * s5) + m0 * (s - 6 * s3 + 8 * s4 - 3 * s5) +
           a0 * (0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5) +
           p1 * (10 * s3 - 15 * s4 + 6 * s5) + m1 * (-4 * s3 + 7 * s4 - 3 * s5) +
           a1 * (0.5 * s3 - s4 + 0.5 * s5);
}

inline double quintic_hermite_deriv(double s, double p0, double m0, double a0, double p1,
                                    double m1, double a1) {
    const double s2 = s * s, s3 = s2 * s, s4 = s3 * s;
    return p0 * (-30 * s2 + 60 * s3 - 30 * s4) + m0 * (1 - 18 * s2 + 32 * s3 - 15 * s4) +
           a0 * (s - 4.5 * s2 + 6 * s3 - 2.5 * s4) + p1 * (30 * s2 - 60 * s3 + 30 * s4) +
           m1 * (-12 * s2 + 28 * s3 - 15 * s4) + a1 * (1.5 * s2 - 4 * s3 + 2.5 * s4);
}

} // namespace solsurf

#endif
