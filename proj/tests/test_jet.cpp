#include <doctest.h>

#include <cmath>

#include "solsurf/jet.hpp"
#include "solsurf/laxpair.hpp"

using namespace solsurf;

TEST_CASE("jet arithmetic matches hand Taylor expansions") {
    const Jet t = Jet::var_t(2.0);
    const Jet l = Jet::var_lambda(0.5);

    // f = t^2 * l around (2, 0.5): value 2, df/dt = 2tl = 2, d2f/dt2 = 2l = 1,
    // d2f/dtdl = 2t = 4.
    const Jet f = t * t * l;
    CHECK(f.value() == doctest::Approx(2.0));
    CHECK(f.deriv(1, 0, 0) == doctest::Approx(2.0));
    CHECK(f.deriv(2, 0, 0) == doctest::Approx(1.0));
    CHECK(f.deriv(1, 1, 0) == doctest::Approx(4.0));
    CHECK(f.deriv(0, 2, 0) == doctest::Approx(0.0));

    // 1/(1+t') around t0=0 has coefficients (-1)^n.
    const Jet g = 1.0 / (Jet::var_t(0.0) + 1.0);
    CHECK(g.at(0, 0, 0) == doctest::Approx(1.0));
    CHECK(g.at(1, 0, 0) == doctest::Approx(-1.0));
    CHECK(g.at(2, 0, 0) == doctest::Approx(1.0));
    CHECK(g.at(3, 0, 0) == doctest::Approx(-1.0));

    CHECK_THROWS_AS(1.0 / Jet::var_sigma(), SingularInput);
}

TEST_CASE("derivative shifts") {
    const Jet t = Jet::var_t(1.5);
    const Jet l = Jet::var_lambda(-0.25);
    const Jet h = t * t * t + t * l * 3.0;
    const Jet ht = h.d_t();
    CHECK(ht.value() == doctest::Approx(3 * 1.5 * 1.5 + 3 * -0.25));
    CHECK(ht.d_t().value() == doctest::Approx(6 * 1.5));
    CHECK(ht.d_lambda().value() == doctest::Approx(3.0));
}

TEST_CASE("on-shell Taylor bootstrap matches hand derivatives for P1") {
    const PainleveParams p = {Equation::P1, 0, 0, 0, 0};
    const double t = 0.7, x = 0.4, xt = -0.9;
    const auto a = onshell_x_taylor(p, t, x, xt);
    const double xtt = 6 * x * x + t;
    const double xttt = 12 * x * xt + 1;
    const double xtttt = 12 * xt * xt + 12 * x * xtt;
    CHECK(a[0] == doctest::Approx(x));
    CHECK(a[1] == doctest::Approx(xt));
    CHECK(a[2] == doctest::Approx(xtt / 2).epsilon(1e-13));
    CHECK(a[3] == doctest::Approx(xttt / 6).epsilon(1e-13));
    CHECK(a[4] == doctest::Approx(xtttt / 24).epsilon(1e-13));
}

TEST_CASE("on-shell bootstrap for P3 against finite differences") {
    const PainleveParams p = {Equation::P3, 0.3, -0.4, 0.8, 0.6};
    const double t = 1.1, x = 0.9, xt = 0.2;
    const auto a = onshell_x_taylor(p, t, x, xt);
    // March the exact flow a small step and compare with the Taylor value.
    const double h = 1e-3;
    Trajectory tr = integrate(p, {t, x, xt}, t + h, {1e-13, 1e-15});
    const double taylor = a[0] + h * (a[1] + h * (a[2] + h * (a[3] + h * a[4])));
    CHECK(tr.x(tr.size() - 1) == doctest::Approx(taylor).epsilon(1e-11));
}

TEST_CASE("characteristic Taylor solves the linearized equation") {
    const PainleveParams p = {Equation::P2, 1.0, 0, 0, 0};
    const double t = 1.3, x = 1.0 / 1.3, xt = -1.0 / (1.3 * 1.3);
    const auto rc = characteristic_taylor(p, t, x, xt, 0.8, -0.1);
    const Linearization lin = linearization(p, {t, x, xt});
    CHECK(2 * rc[2] == doctest::Approx(lin.w1 * 0.8 + lin.w2 * -0.1).epsilon(1e-12));
}
