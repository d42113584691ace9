#include "solsurf/algebra.hpp"

namespace solsurf {

Mat2 basis_e1() { return {cplx(1), cplx(0), cplx(0), cplx(-1)}; }
Mat2 basis_e2() { return {cplx(0), cplx(1), cplx(1), cplx(0)}; }
Mat2 basis_e3() { return {cplx(0), cplx(-1), cplx(1), cplx(0)}; }

namespace {

// Basis components before the reality check; imag parts reported to callers.
struct RawComponents {
    cplx c1, c2, c3;
    double max_imag() const {
        return std::max(std::abs(c1.imag()), std::max(std::abs(c2.imag()), std::abs(c3.imag())));
    }
};

RawComponents raw_components(const Mat2& x) {
    return {x.a11, 0.5 * (x.a12 + x.a21), 0.5 * (x.a21 - x.a12)};
}

} // namespace

double killing(const Mat2& x, const Mat2& y) {
    const RawComponents cx = raw_components(x);
    const RawComponents cy = raw_components(y);
    if (cx.max_imag() > tol::structural || cy.max_imag() > tol::structural)
        throw NonRealComponents("killing: basis components have imaginary parts above tolerance");
    const cplx tr = x.a11 * y.a11 + x.a12 * y.a21 + x.a21 * y.a12 + x.a22 * y.a22;
    return 0.5 * tr.real();
}

AlgebraVector decompose(const Mat2& x) {
    if (std::abs(x.trace()) >= tol::structural)
        throw NotTraceless("decompose: matrix trace exceeds tolerance");
    const RawComponents c = raw_components(x);
    if (c.max_imag() > tol::structural)
        throw NonRealComponents("decompose: basis components have imaginary parts above tolerance");
    return {c.c1.real(), c.c2.real(), c.c3.real()};
}

AlgebraVector decompose(const Mat2r& x) {
    if (std::abs(x.trace()) >= tol::structural)
        throw NotTraceless("decompose: matrix trace exceeds tolerance");
    return {x.a11, 0.5 * (x.a12 + x.a21), 0.5 * (x.a21 - x.a12)};
}

Mat2 reconstruct(const AlgebraVector& v) {
    return {cplx(v.c1), cplx(v.c2 - v.c3), cplx(v.c2 + v.c3), cplx(-v.c1)};
}

Mat2r reconstruct_real(const AlgebraVector& v) {
    return {v.c1, v.c2 - v.c3, v.c2 + v.c3, -v.c1};
}

Mat2 inverse(const Mat2& x) {
    const cplx d = x.det();
    if (std::abs(d) <= tol::singularity)
        throw SingularMatrix("inverse: determinant below cutoff");
    const cplx inv = cplx(1) / d;
    return {x.a22 * inv, -x.a12 * inv, -x.a21 * inv, x.a11 * inv};
}

Mat2r inverse(const Mat2r& x) {
    const double d = x.det();
    if (std::abs(d) <= tol::singularity)
        throw SingularMatrix("inverse: determinant below cutoff");
    const double inv = 1.0 / d;
    return {x.a22 * inv, -x.a12 * inv, -x.a21 * inv, x.a11 * inv};
}

} // namespace solsurf
