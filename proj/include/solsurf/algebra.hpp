#ifndef SOLSURF_ALGEBRA_HPP
#define SOLSURF_ALGEBRA_HPP

#include <array>
#include <cmath>
#include <complex>

#include "solsurf/errors.hpp"

namespace solsurf {

using cplx = std::complex<double>;

// 2x2 matrix over an arbitrary scalar ring. The complex instantiation Mat2 is
// the working type of the library; the double instantiation Mat2r is used on
// hot numeric paths where everything is known to be real.
template <class T>
struct M2t {
    T a11{}, a12{}, a21{}, a22{};

    static M2t zero() { return {}; }
    static M2t identity() { return {T(1), T(0), T(0), T(1)}; }

    T trace() const { return a11 + a22; }
    T det() const { return a11 * a22 - a12 * a21; }

    M2t operator+(const M2t& o) const {
        return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22};
    }
    M2t operator-(const M2t& o) const {
        return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22};
    }
    M2t operator-() const { return {-a11, -a12, -a21, -a22}; }
    M2t operator*(const M2t& o) const {
        return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
                a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
    }
    M2t operator*(const T& s) const { return {a11 * s, a12 * s, a21 * s, a22 * s}; }
    friend M2t operator*(const T& s, const M2t& m) { return m * s; }

    M2t& operator+=(const M2t& o) { return *this = *this + o; }
    M2t& operator-=(const M2t& o) { return *this = *this - o; }
};

using Mat2 = M2t<cplx>;
using Mat2r = M2t<double>;

// XY - YX. Traceless whenever X, Y are.
template <class T>
M2t<T> commutator(const M2t<T>& x, const M2t<T>& y) {
    return x * y - y * x;
}

inline Mat2 to_complex(const Mat2r& m) {
    return {cplx(m.a11), cplx(m.a12), cplx(m.a21), cplx(m.a22)};
}

inline double max_abs(const Mat2& m) {
    return std::max(std::max(std::abs(m.a11), std::abs(m.a12)),
                    std::max(std::abs(m.a21), std::abs(m.a22)));
}
inline double max_abs(const Mat2r& m) {
    return std::max(std::max(std::abs(m.a11), std::abs(m.a12)),
                    std::max(std::abs(m.a21), std::abs(m.a22)));
}
inline double max_abs_diff(const Mat2& a, const Mat2& b) { return max_abs(a - b); }
inline double max_abs_diff(const Mat2r& a, const Mat2r& b) { return max_abs(a - b); }

// Components of a traceless matrix in the basis
//   e1 = [[1,0],[0,-1]],  e2 = [[0,1],[1,0]],  e3 = [[0,-1],[1,0]].
// These are the coordinates in which surfaces are exported.
struct AlgebraVector {
    double c1 = 0, c2 = 0, c3 = 0;

    AlgebraVector operator+(const AlgebraVector& o) const { return {c1 + o.c1, c2 + o.c2, c3 + o.c3}; }
    AlgebraVector operator-(const AlgebraVector& o) const { return {c1 - o.c1, c2 - o.c2, c3 - o.c3}; }
    AlgebraVector operator*(double s) const { return {c1 * s, c2 * s, c3 * s}; }
    double max_abs() const { return std::max(std::abs(c1), std::max(std::abs(c2), std::abs(c3))); }
};

Mat2 basis_e1();
Mat2 basis_e2();
Mat2 basis_e3();

// Killing form (1/2) tr(XY). On the basis above it is diag(1,1,-1): a
// pseudo-Euclidean metric of signature (2,1). Throws NonRealComponents if the
// basis components of either argument have imaginary parts above tolerance.
double killing(const Mat2& x, const Mat2& y);

// Real fast path, no checks needed.
inline double killing(const Mat2r& x, const Mat2r& y) {
    return 0.5 * (x.a11 * y.a11 + x.a12 * y.a21 + x.a21 * y.a12 + x.a22 * y.a22);
}

// Basis components of a traceless real matrix:
//   c1 = x11, c2 = (x12+x21)/2, c3 = (x21-x12)/2.
// Throws NotTraceless / NonRealComponents.
AlgebraVector decompose(const Mat2& x);
AlgebraVector decompose(const Mat2r& x);

// c1*e1 + c2*e2 + c3*e3, always traceless.
Mat2 reconstruct(const AlgebraVector& v);
Mat2r reconstruct_real(const AlgebraVector& v);

// Throws SingularMatrix when |det| <= 1e-14.
Mat2 inverse(const Mat2& x);
Mat2r inverse(const Mat2r& x);

namespace tol {
// Structural tolerances: double precision on 2x2 products loses at most a
// couple of digits, so these are far above roundoff and far below signal.
inline constexpr double structural = 1e-12;   // tracelessness, reality
inline constexpr double singularity = 1e-14;  // matrix inversion cutoff
} // namespace tol

} // namespace solsurf

#endif
