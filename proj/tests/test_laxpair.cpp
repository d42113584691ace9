#include <doctest.h>

#include <cmath>
#include <random>

#include "solsurf/laxpair.hpp"

using namespace solsurf;

namespace {

std::mt19937_64 rng(424242);

double uniform(double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(rng);
}

LaxPoint random_point_p1() {
    return {uniform(-2, 2), uniform(-2, 2), uniform(-2, 2), uniform(-2, 2), uniform(-2, 2)};
}

LaxPoint random_admissible(const LaxPair& pair) {
    for (;;) {
        LaxPoint p = {uniform(-2, 2), uniform(-2, 2), uniform(-2, 2), uniform(-2, 2),
                      uniform(-2, 2)};
        if (std::abs(p.t) < 0.1 || std::abs(p.x) < 0.1 || std::abs(p.lambda) < 0.1) continue;
        if (!pair.admissible(p)) continue;
        return p;
    }
}

// A real P3 pair exists for gamma >= 0, delta <= 0 only.
PainleveParams random_p3_params() {
    return {Equation::P3, uniform(-1, 1), uniform(-1, 1), uniform(0, 1), uniform(-1, 0)};
}

// Five-point central difference of a matrix-valued function.
template <class F>
Mat2r fd5(F&& f, double h) {
    return (f(-2 * h) + f(2 * h) * -1.0 + (f(h) + f(-h) * -1.0) * 8.0) * (1.0 / (12.0 * h));
}

} // namespace

TEST_CASE("printed potential matrices") {
    const LaxPair p1({Equation::P1, 0, 0, 0, 0});
    const Mat2r u1 = p1.u1({0, 2, 1, 0, 0});
    CHECK(u1.a11 == 0.0);
    CHECK(u1.a12 == 4.0);
    CHECK(u1.a21 == 1.0);
    CHECK(u1.a22 == 0.0);
    const Mat2r u2 = p1.u2({0, 1, 0, 0, 0});
    CHECK(u2.a12 == 2.0);
    CHECK(u2.a21 == 2.0);
    CHECK(u2.a11 == 0.0);

    const LaxPair p2({Equation::P2, 0, 0, 0, 0});
    const Mat2r v1 = p2.u1({0, 3, 2, 0, 0});
    CHECK(v1.a11 == -3.0);
    CHECK(v1.a12 == 2.0);
    CHECK(v1.a21 == 2.0);
    CHECK(v1.a22 == 3.0);
    const Mat2r v2 = p2.u2({0, 1, 1, 0, 0});
    CHECK(v2.a11 == 2.0);
    CHECK(v2.a12 == -4.0);
    CHECK(v2.a21 == -4.0);
    CHECK(v2.a22 == -2.0);

    CHECK_THROWS_AS(p2.u2({0, 0, 1, 0, 0}), SingularInput);
    const LaxPair p3({Equation::P3, 0.5, 0.5, 0.5, -0.5});
    CHECK_THROWS_AS(p3.u1({1, 1, 0, 0, 0}), SingularInput);
}

TEST_CASE("traceless at random admissible points") {
    for (int i = 0; i < 100; ++i) {
        const PainleveParams pp = random_p3_params();
        for (const LaxPair pair :
             {LaxPair({Equation::P1, 0, 0, 0, 0}), LaxPair({Equation::P2, pp.alpha, 0, 0, 0}),
              LaxPair(pp)}) {
            const LaxPoint p = random_admissible(pair);
            CHECK(std::abs(pair.u1(p).trace()) < 1e-12);
            CHECK(std::abs(pair.u2(p).trace()) < 1e-12);
        }
    }
}

TEST_CASE("P1 zero-curvature factorization") {
    const LaxPair pair({Equation::P1, 0, 0, 0, 0});
    // on-shell: the residual vanishes identically
    for (int i = 0; i < 100; ++i) {
        LaxPoint p = random_point_p1();
        p.x_tt = 6 * p.x * p.x + p.t;
        CHECK(max_abs(pair.zcc_residual(p)) < 1e-12);
    }
    // the printed example: x_tt - 6x^2 - t = 8 - 7 = 1 gives e1
    const Mat2r r = pair.zcc_residual({1, 0.3, 1, 0, 8});
    CHECK(r.a11 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.a22 == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(std::abs(r.a12) < 1e-14);
    CHECK(std::abs(r.a21) < 1e-14);
    // full five-coordinate factorization
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        const LaxPoint p = random_point_p1();
        const double scalar = p.x_tt - 6 * p.x * p.x - p.t;
        const Mat2r expe1 = {scalar, 0, 0, -scalar};
        worst = std::max(worst, max_abs(pair.zcc_residual(p) - expe1));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("P2 on-shell zero curvature") {
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        const PainleveParams pp = {Equation::P2, uniform(-1, 1), 0, 0, 0};
        const LaxPair pair(pp);
        LaxPoint p = random_admissible(pair);
        p.x_tt = rhs(pp, {p.t, p.x, p.x_t});
        worst = std::max(worst, max_abs(pair.zcc_residual(p)));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("P3 zero-curvature factorization") {
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
        const PainleveParams pp = random_p3_params();
        const LaxPair pair(pp);
        const LaxPoint p = random_admissible(pair);
        const Mat2r diff = pair.zcc_residual(p) - pair.p3_predicted_residual(p);
        worst = std::max(worst, max_abs(diff));
    }
    CHECK(worst < 1e-9);
    // on-shell special case
    const PainleveParams pp = {Equation::P3, 0.4, -0.3, 0.7, -0.2};
    const LaxPair pair(pp);
    for (int i = 0; i < 100; ++i) {
        LaxPoint p = random_admissible(pair);
        p.x_tt = rhs(pp, {p.t, p.x, p.x_t});
        worst = std::max(worst, max_abs(pair.zcc_residual(p)));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("closed-form partials agree with finite differences") {
    auto check_pair = [&](const LaxPair& pair) {
        for (int i = 0; i < 25; ++i) {
            LaxPoint p = random_admissible(pair);
            // keep clear of the singular sets so the FD stencil stays tame
            p.t = std::copysign(std::max(std::abs(p.t), 0.5), p.t);
            p.x = std::copysign(std::max(std::abs(p.x), 0.5), p.x);
            p.lambda = std::copysign(std::max(std::abs(p.lambda), 0.5), p.lambda);
            const double h = 1e-3;
            // D_t follows the formal line (t+d, x+d x_t, x_t+d x_tt).
            auto u1_t = [&](double d) {
                return lax_matrices<double>(pair.params(), p.t + d, p.lambda, p.x + d * p.x_t,
                                            p.x_t + d * p.x_tt)
                    .u1;
            };
            auto u2_t = [&](double d) {
                return lax_matrices<double>(pair.params(), p.t + d, p.lambda, p.x + d * p.x_t,
                                            p.x_t + d * p.x_tt)
                    .u2;
            };
            auto u1_l = [&](double d) {
                return lax_matrices<double>(pair.params(), p.t, p.lambda + d, p.x, p.x_t).u1;
            };
            auto u2_l = [&](double d) {
                return lax_matrices<double>(pair.params(), p.t, p.lambda + d, p.x, p.x_t).u2;
            };
            const double s1 = 1.0 + max_abs(pair.dt_u1(p)), s2 = 1.0 + max_abs(pair.dt_u2(p));
            const double s3 = 1.0 + max_abs(pair.dl_u1(p)), s4 = 1.0 + max_abs(pair.dl_u2(p));
            CHECK(max_abs(fd5(u1_t, h) - pair.dt_u1(p)) < 1e-6 * s1);
            CHECK(max_abs(fd5(u2_t, h) - pair.dt_u2(p)) < 1e-6 * s2);
            CHECK(max_abs(fd5(u1_l, h) - pair.dl_u1(p)) < 1e-6 * s3);
            CHECK(max_abs(fd5(u2_l, h) - pair.dl_u2(p)) < 1e-6 * s4);
        }
    };
    check_pair(LaxPair({Equation::P1, 0, 0, 0, 0}));
    check_pair(LaxPair({Equation::P2, 0.7, 0, 0, 0}));
    check_pair(LaxPair(random_p3_params()));
}

TEST_CASE("jet evaluation agrees with the closed forms") {
    for (const PainleveParams pp :
         {PainleveParams{Equation::P1, 0, 0, 0, 0}, PainleveParams{Equation::P2, 0.9, 0, 0, 0},
          random_p3_params()}) {
        const LaxPair pair(pp);
        for (int i = 0; i < 20; ++i) {
            LaxPoint p = random_admissible(pair);
            p.x_tt = rhs(pp, {p.t, p.x, p.x_t});
            const LaxJets jets = onshell_jets(pp, p.t, p.lambda, p.x, p.x_t);
            CHECK(max_abs(jm_value(jets.u1) - pair.u1(p)) < 1e-12);
            CHECK(max_abs(jm_value(jets.u2) - pair.u2(p)) < 1e-12);
            const double scale = 1.0 + max_abs(pair.dt_u2(p));
            CHECK(max_abs(jm_value(jm_dt(jets.u1)) - pair.dt_u1(p)) < 1e-11 * scale);
            CHECK(max_abs(jm_value(jm_dt(jets.u2)) - pair.dt_u2(p)) < 1e-11 * scale);
            CHECK(max_abs(jm_value(jm_dl(jets.u1)) - pair.dl_u1(p)) < 1e-11 * scale);
            CHECK(max_abs(jm_value(jm_dl(jets.u2)) - pair.dl_u2(p)) < 1e-11 * scale);
        }
    }
}

TEST_CASE("off-shell jets carry free higher derivatives") {
    const PainleveParams pp = {Equation::P1, 0, 0, 0, 0};
    const LaxPair pair(pp);
    const LaxPoint p = {0.4, 1.2, -0.7, 0.9, 5.0};
    const LaxJets jets = offshell_jets(pp, p.t, p.lambda, p.x, p.x_t, p.x_tt, 2.0, -3.0);
    CHECK(max_abs(jm_value(jm_dt(jets.u2)) - pair.dt_u2(p)) < 1e-12);
    // For P1: D_t^2 U1 = [[0, 2 x_tt], [0, 0]] and D_t^3 U1 = [[0, 2 x_ttt], [0, 0]].
    const Mat2r d2 = jm_value(jm_dt(jm_dt(jets.u1)));
    CHECK(d2.a12 == doctest::Approx(2.0 * p.x_tt).epsilon(1e-12));
    CHECK(std::abs(d2.a11) < 1e-14);
    const Mat2r d3 = jm_value(jm_dt(jm_dt(jm_dt(jets.u1))));
    CHECK(d3.a12 == doctest::Approx(2.0 * 2.0).epsilon(1e-12));
    // D_t^3 U2 entry (2,1) = -2 x_ttt for P1.
    const Mat2r e3 = jm_value(jm_dt(jm_dt(jm_dt(jets.u2))));
    CHECK(e3.a21 == doctest::Approx(-2.0 * 2.0).epsilon(1e-12));
}
