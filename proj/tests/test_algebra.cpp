#include <doctest.h>

#include <random>

#include "solsurf/algebra.hpp"

using namespace solsurf;

namespace {

std::mt19937_64 rng(20240811);

double uniform(double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(rng);
}

Mat2 random_traceless() {
    return reconstruct({uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)});
}

Mat2 random_unimodular() {
    // [[a, b], [c, (1+bc)/a]] has determinant 1.
    double a = 0;
    while (std::abs(a) < 0.3) a = uniform(-2, 2);
    const double b = uniform(-1, 1), c = uniform(-1, 1);
    return {cplx(a), cplx(b), cplx(c), cplx((1.0 + b * c) / a)};
}

} // namespace

TEST_CASE("basis commutators") {
    // [e1,e2] = -2 e3 and [e2,e3] = 2 e1 by direct 2x2 multiplication.
    CHECK(max_abs_diff(commutator(basis_e1(), basis_e2()), basis_e3() * cplx(-2)) == 0.0);
    CHECK(max_abs_diff(commutator(basis_e2(), basis_e3()), basis_e1() * cplx(2)) == 0.0);
    const Mat2 x = random_traceless();
    CHECK(max_abs(commutator(x, x)) == 0.0);
}

TEST_CASE("killing form signature") {
    CHECK(killing(basis_e1(), basis_e1()) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(killing(basis_e2(), basis_e2()) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(killing(basis_e3(), basis_e3()) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(std::abs(killing(basis_e1(), basis_e2())) < 1e-14);
    CHECK(std::abs(killing(basis_e1(), basis_e3())) < 1e-14);
    CHECK(std::abs(killing(basis_e2(), basis_e3())) < 1e-14);

    Mat2 bad = basis_e2();
    bad.a12 += cplx(0, 1e-6);
    bad.a21 -= cplx(0, 1e-6);
    CHECK_THROWS_AS(killing(bad, basis_e1()), NonRealComponents);
}

TEST_CASE("decompose") {
    const AlgebraVector v1 = decompose(basis_e1());
    CHECK(v1.c1 == 1.0);
    CHECK(v1.c2 == 0.0);
    CHECK(v1.c3 == 0.0);

    const Mat2 upper = {cplx(0), cplx(1), cplx(0), cplx(0)};
    const AlgebraVector vu = decompose(upper);
    CHECK(vu.c1 == 0.0);
    CHECK(vu.c2 == 0.5);
    CHECK(vu.c3 == -0.5);

    CHECK_THROWS_AS(decompose(Mat2::identity()), NotTraceless);

    Mat2 complex_entries = {cplx(0, 0.1), cplx(0), cplx(0), cplx(0, -0.1)};
    CHECK_THROWS_AS(decompose(complex_entries), NonRealComponents);
}

TEST_CASE("inverse") {
    CHECK(max_abs_diff(inverse(Mat2::identity()), Mat2::identity()) == 0.0);
    const Mat2 d = {cplx(2), cplx(0), cplx(0), cplx(0.5)};
    const Mat2 expect = {cplx(0.5), cplx(0), cplx(0), cplx(2)};
    CHECK(max_abs_diff(inverse(d), expect) < 1e-15);
    const Mat2 sing = {cplx(1), cplx(1), cplx(1), cplx(1)};
    CHECK_THROWS_AS(inverse(sing), SingularMatrix);

    for (int i = 0; i < 50; ++i) {
        const Mat2 g = random_unimodular();
        CHECK(max_abs_diff(g * inverse(g), Mat2::identity()) < 1e-12);
    }
}

TEST_CASE("jacobi identity") {
    for (int i = 0; i < 200; ++i) {
        const Mat2 x = random_traceless(), y = random_traceless(), z = random_traceless();
        const Mat2 j = commutator(x, commutator(y, z)) + commutator(y, commutator(z, x)) +
                       commutator(z, commutator(x, y));
        CHECK(max_abs(j) < 1e-12);
    }
}

TEST_CASE("killing ad-invariance") {
    for (int i = 0; i < 200; ++i) {
        const Mat2 x = random_traceless(), y = random_traceless(), z = random_traceless();
        CHECK(std::abs(killing(commutator(z, x), y) + killing(x, commutator(z, y))) < 1e-12);
    }
}

TEST_CASE("killing conjugation invariance") {
    // This is what makes all the surface geometry independent of the frame.
    for (int i = 0; i < 200; ++i) {
        const Mat2 x = random_traceless(), y = random_traceless();
        const Mat2 g = random_unimodular();
        const Mat2 gi = inverse(g);
        CHECK(killing(gi * x * g, gi * y * g) == doctest::Approx(killing(x, y)).epsilon(1e-10));
    }
}

TEST_CASE("decompose is inverse of reconstruct") {
    for (int i = 0; i < 200; ++i) {
        const AlgebraVector v = {uniform(-5, 5), uniform(-5, 5), uniform(-5, 5)};
        const AlgebraVector w = decompose(reconstruct(v));
        const double ulp = 4 * 1e-16 * std::max(std::abs(v.c2), std::abs(v.c3));
        CHECK(w.c1 == v.c1);
        CHECK(std::abs(w.c2 - v.c2) <= ulp);
        CHECK(std::abs(w.c3 - v.c3) <= ulp);
        CHECK(std::abs(reconstruct(v).trace()) == 0.0);
    }
}
