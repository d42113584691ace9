#ifndef SOLSURF_JET_HPP
#define SOLSURF_JET_HPP

#include <array>
#include <cmath>

#include "solsurf/errors.hpp"

namespace solsurf {

// Truncated Taylor polynomial in three displacement variables:
//   dt (time direction, order <= 3),
//   dl (spectral direction, order <= 2),
//   ds (symmetry-flow direction, order <= 1).
// Arithmetic on Jet values propagates exact total derivatives through any
// rational expression, which is how the higher derivatives of the potential
// matrices (and of gauge functions) are obtained without hand differentiation.
struct Jet {
    static constexpr int NT = 4;  // dt^0..3
    static constexpr int NL = 3;  // dl^0..2
    static constexpr int NS = 2;  // ds^0..1
    static constexpr int SIZE = NT * NL * NS;

    std::array<double, SIZE> c{};

    static constexpr int idx(int i, int j, int k) { return (i * NL + j) * NS + k; }

    Jet() = default;
    Jet(double v) { c[0] = v; }  // NOLINT: implicit by design, mirrors scalar use

    double& at(int i, int j, int k) { return c[idx(i, j, k)]; }
    double at(int i, int j, int k) const { return c[idx(i, j, k)]; }

    double value() const { return c[0]; }

    // Derivative d^(i+j+k) / dt^i dl^j ds^k at the expansion point.
    double deriv(int i, int j, int k) const {
        static constexpr double fact[4] = {1, 1, 2, 6};
        return at(i, j, k) * fact[i] * fact[j] * fact[k];
    }

    static Jet constant(double v) { return Jet(v); }
    static Jet var_t(double t0) {
        Jet j(t0);
        j.at(1, 0, 0) = 1.0;
        return j;
    }
    static Jet var_lambda(double l0) {
        Jet j(l0);
        j.at(0, 1, 0) = 1.0;
        return j;
    }
    static Jet var_sigma() {
        Jet j(0.0);
        j.at(0, 0, 1) = 1.0;
        return j;
    }
    // Polynomial in dt with given Taylor coefficients (constant term first).
    static Jet t_poly(const std::array<double, NT>& coeff) {
        Jet j;
        for (int i = 0; i < NT; ++i) j.at(i, 0, 0) = coeff[i];
        return j;
    }

    Jet operator-() const {
        Jet r;
        for (int n = 0; n < SIZE; ++n) r.c[n] = -c[n];
        return r;
    }
    Jet operator+(const Jet& o) const {
        Jet r;
        for (int n = 0; n < SIZE; ++n) r.c[n] = c[n] + o.c[n];
        return r;
    }
    Jet operator-(const Jet& o) const {
        Jet r;
        for (int n = 0; n < SIZE; ++n) r.c[n] = c[n] - o.c[n];
        return r;
    }
    Jet operator*(const Jet& o) const {
        Jet r;
        for (int i = 0; i < NT; ++i)
            for (int j = 0; j < NL; ++j)
                for (int k = 0; k < NS; ++k) {
                    const double a = at(i, j, k);
                    if (a == 0.0) continue;
                    for (int p = 0; i + p < NT; ++p)
                        for (int q = 0; j + q < NL; ++q)
                            for (int m = 0; k + m < NS; ++m)
                                r.at(i + p, j + q, k + m) += a * o.at(p, q, m);
                }
        return r;
    }
    Jet operator/(const Jet& o) const {
        if (o.c[0] == 0.0) throw SingularInput("Jet division by zero constant term");
        Jet q;
        // Solve q*o = *this coefficient by coefficient; every index needed on
        // the right-hand side is componentwise smaller, so ascending loops work.
        for (int i = 0; i < NT; ++i)
            for (int j = 0; j < NL; ++j)
                for (int k = 0; k < NS; ++k) {
                    double acc = at(i, j, k);
                    for (int p = 0; p <= i; ++p)
                        for (int r = 0; r <= j; ++r)
                            for (int m = 0; m <= k; ++m) {
                                if (p == i && r == j && m == k) continue;
                                acc -= q.at(p, r, m) * o.at(i - p, j - r, k - m);
                            }
                    q.at(i, j, k) = acc / o.c[0];
                }
        return q;
    }

    Jet operator+(double v) const {
        Jet r = *this;
        r.c[0] += v;
        return r;
    }
    Jet operator-(double v) const {
        Jet r = *this;
        r.c[0] -= v;
        return r;
    }
    Jet operator*(double v) const {
        Jet r;
        for (int n = 0; n < SIZE; ++n) r.c[n] = c[n] * v;
        return r;
    }
    Jet operator/(double v) const { return *this * (1.0 / v); }

    friend Jet operator+(double v, const Jet& j) { return j + v; }
    friend Jet operator-(double v, const Jet& j) { return (-j) + v; }
    friend Jet operator*(double v, const Jet& j) { return j * v; }
    friend Jet operator/(double v, const Jet& j) { return Jet(v) / j; }

    Jet& operator+=(const Jet& o) { return *this = *this + o; }
    Jet& operator-=(const Jet& o) { return *this = *this - o; }
    Jet& operator*=(const Jet& o) { return *this = *this * o; }

    // Total-derivative shift in dt; coefficients beyond the stored order are
    // unknown and left zero, so extract only orders that remain valid.
    Jet d_t() const {
        Jet r;
        for (int i = 0; i + 1 < NT; ++i)
            for (int j = 0; j < NL; ++j)
                for (int k = 0; k < NS; ++k) r.at(i, j, k) = (i + 1) * at(i + 1, j, k);
        return r;
    }
    Jet d_lambda() const {
        Jet r;
        for (int i = 0; i < NT; ++i)
            for (int j = 0; j + 1 < NL; ++j)
                for (int k = 0; k < NS; ++k) r.at(i, j, k) = (j + 1) * at(i, j + 1, k);
        return r;
    }
    Jet d_sigma() const {
        Jet r;
        for (int i = 0; i < NT; ++i)
            for (int j = 0; j < NL; ++j) r.at(i, j, 0) = at(i, j, 1);
        return r;
    }
};

} // namespace solsurf

#endif
