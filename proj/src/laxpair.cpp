#include "solsurf/laxpair.hpp"

#include <cmath>

namespace solsurf {

namespace {
constexpr double kSingular = 1e-12;
}

void LaxPair::require_admissible(const LaxPoint& p) const {
    switch (params_.equation) {
        case Equation::P1:
            return;
        case Equation::P2:
            if (std::abs(p.lambda) < kSingular)
                throw SingularInput("LaxPair P2: lambda = 0");
            return;
        case Equation::P3: {
            const P3PairParams pp = p3_pair_parameters(params_);
            if (std::abs(p.x) < kSingular) throw SingularInput("LaxPair P3: x = 0");
            if (std::abs(p.t) < kSingular) throw SingularInput("LaxPair P3: t = 0");
            if (std::abs(p.lambda) < kSingular) throw SingularInput("LaxPair P3: lambda = 0");
            if (std::abs(p.lambda * p.lambda + pp.g * pp.d) < kSingular)
                throw SingularInput("LaxPair P3: lambda^2 + g*d = 0");
            return;
        }
    }
}

bool LaxPair::admissible(const LaxPoint& p) const {
    try {
        require_admissible(p);
        return true;
    } catch (const SingularInput&) {
        return false;
    }
}

Mat2r LaxPair::u1(const LaxPoint& p) const {
    require_admissible(p);
    return lax_matrices<double>(params_, p.t, p.lambda, p.x, p.x_t).u1;
}

Mat2r LaxPair::u2(const LaxPoint& p) const {
    require_admissible(p);
    return lax_matrices<double>(params_, p.t, p.lambda, p.x, p.x_t).u2;
}

Mat2r LaxPair::dt_u1(const LaxPoint& p) const {
    require_admissible(p);
    const double t = p.t, x = p.x, xt = p.x_t, xtt = p.x_tt;
    switch (params_.equation) {
        case Equation::P1:
            return {0, 2 * xt, 0, 0};
        case Equation::P2:
            return {0, xt, xt, 0};
        case Equation::P3: {
            (void)t;
            const auto [g, d] = p3_pair_parameters(params_);
            const double dw = xtt / x - xt * xt / (x * x) + g * xt - d * xt / (x * x);
            return {0.5 * dw, 0, 0, -0.5 * dw};
        }
    }
    return {};
}

Mat2r LaxPair::dl_u1(const LaxPoint& p) const {
    require_admissible(p);
    switch (params_.equation) {
        case Equation::P1:
            return {0, 1, 0, 0};
        case Equation::P2:
            return {-1, 0, 0, 1};
        case Equation::P3:
            return {0, 1, 1, 0};
    }
    return {};
}

Mat2r LaxPair::dt_u2(const LaxPoint& p) const {
    require_admissible(p);
    const double t = p.t, l = p.lambda, x = p.x, xt = p.x_t, xtt = p.x_tt;
    switch (params_.equation) {
        case Equation::P1:
            return {-xtt, 2 * l * xt + 1 + 4 * x * xt, -2 * xt, xtt};
        case Equation::P2: {
            const double d = -4 * x * xt - 1;
            return {d, -4 * l * xt + 2 * xtt, -4 * l * xt - 2 * xtt, -d};
        }
        case Equation::P3: {
            const auto [g, dl] = p3_pair_parameters(params_);
            const double a = params_.alpha, b = params_.beta;
            const double c = l * l + g * dl;
            const double gg = xt + g * x * x + dl;
            const double np = 2 * t * l * l * gg + x * (b * g - a * dl);
            const double dnp = 2 * l * l * gg + 2 * t * l * l * (xtt + 2 * g * x * xt) +
                               xt * (b * g - a * dl);
            const double du11 = (dnp * x - np * xt) / (4 * l * x * x * c);

            const double dnq = -2 * l * l + g * (xt + t * xtt) + g * xt +
                               g * g * (x * x + 2 * t * x * xt) - g * dl + a * xt;
            const double du12 = -dnq / (2 * c);

            const double ns = -2 * t * x * x * l * l + dl * t * xt - dl * x + dl * dl * t -
                              g * dl * t * x * x - b * x;
            const double dns = -2 * l * l * (x * x + 2 * t * x * xt) + dl * (xt + t * xtt) -
                               dl * xt + dl * dl - g * dl * (x * x + 2 * t * x * xt) - b * xt;
            const double du21 = -(dns * x - 2 * xt * ns) / (2 * x * x * x * c);
            return {du11, du12, du21, -du11};
        }
    }
    return {};
}

Mat2r LaxPair::dl_u2(const LaxPoint& p) const {
    require_admissible(p);
    const double t = p.t, l = p.lambda, x = p.x, xt = p.x_t;
    switch (params_.equation) {
        case Equation::P1:
            return {0, 4 * l + 2 * x, 2, 0};
        case Equation::P2: {
            const double off = -4 * x - params_.alpha / (l * l);
            return {8 * l, off, off, -8 * l};
        }
        case Equation::P3: {
            const auto [g, dl] = p3_pair_parameters(params_);
            const double a = params_.alpha, b = params_.beta;
            const double c = l * l + g * dl;
            const double gg = xt + g * x * x + dl;
            const double np = 2 * t * l * l * gg + x * (b * g - a * dl);
            const double du11 =
                (4 * t * l * l * gg * c - np * (3 * l * l + g * dl)) / (4 * x * l * l * c * c);
            const double nq = -2 * t * l * l + g * t * xt + g * x + g * g * t * x * x -
                              g * dl * t + a * x;
            const double du12 = l * (2 * t * c + nq) / (c * c);
            const double ns = -2 * t * x * x * l * l + dl * t * xt - dl * x + dl * dl * t -
                              g * dl * t * x * x - b * x;
            const double du21 = l * (2 * t * x * x * c + ns) / (x * x * c * c);
            return {du11, du12, du21, -du11};
        }
    }
    return {};
}

Mat2r LaxPair::zcc_residual(const LaxPoint& p) const {
    const auto m = lax_matrices<double>(params_, p.t, p.lambda, p.x, p.x_t);
    return dl_u1(p) - dt_u2(p) + commutator(m.u1, m.u2);
}

double LaxPair::equation_residual(const LaxPoint& p) const {
    return p.x_tt - rhs(params_, {p.t, p.x, p.x_t});
}

Mat2r LaxPair::p3_predicted_residual(const LaxPoint& p) const {
    if (params_.equation != Equation::P3)
        throw DomainError("p3_predicted_residual: P3 only");
    require_admissible(p);
    const auto [g, d] = p3_pair_parameters(params_);
    const double c = p.lambda * p.lambda + g * d;
    const Mat2r structure = {-p.lambda * p.t / (p.x * c), g * p.t / c,
                             d * p.t / (p.x * p.x * c), p.lambda * p.t / (p.x * c)};
    return structure * (0.5 * equation_residual(p));
}

// ---- jet seeding ------------------------------------------------------------

std::array<double, 5> onshell_x_taylor(const PainleveParams& p, double t, double x, double xt) {
    std::array<double, 5> a = {x, xt, 0, 0, 0};
    const Jet tj = Jet::var_t(t);
    for (int m = 0; m <= 2; ++m) {
        Jet xj, xtj;
        for (int i = 0; i < Jet::NT; ++i) xj.at(i, 0, 0) = a[i];
        for (int i = 0; i + 1 < static_cast<int>(a.size()) && i < Jet::NT; ++i)
            xtj.at(i, 0, 0) = (i + 1) * a[i + 1];
        const Jet f = rhs_generic<Jet>(p, tj, xj, xtj);
        a[m + 2] = f.at(m, 0, 0) / ((m + 1.0) * (m + 2.0));
    }
    return a;
}

std::array<double, 4> characteristic_taylor(const PainleveParams& p, double t, double x,
                                            double xt, double r, double rt) {
    const auto a = onshell_x_taylor(p, t, x, xt);
    const Jet tj = Jet::var_t(t);
    Jet xj = Jet::t_poly({a[0], a[1], a[2], a[3]});
    Jet xtj = Jet::t_poly({a[1], 2 * a[2], 3 * a[3], 4 * a[4]});

    // w1, w2 of the linearization as t-jets, via a sigma bump of rhs.
    const Jet sig = Jet::var_sigma();
    const Jet w1 = rhs_generic<Jet>(p, tj, xj + sig, xtj).d_sigma();
    const Jet w2 = rhs_generic<Jet>(p, tj, xj, xtj + sig).d_sigma();

    std::array<double, 4> rc = {r, rt, 0, 0};
    const double rtt = w1.value() * r + w2.value() * rt;
    rc[2] = 0.5 * rtt;
    // R''' from the t-linear coefficient of w1*R + w2*R'.
    const Jet rj = Jet::t_poly({rc[0], rc[1], rc[2], 0});
    const Jet rtj = Jet::t_poly({rc[1], 2 * rc[2], 0, 0});
    const Jet rdd = w1 * rj + w2 * rtj;
    rc[3] = rdd.at(1, 0, 0) / 6.0;
    return rc;
}

namespace {

LaxJets make_jets(const PainleveParams& p, double t, double lam, const std::array<double, 5>& a,
                  const std::array<double, 4>* r_taylor) {
    LaxJets out;
    out.t = Jet::var_t(t);
    out.lam = Jet::var_lambda(lam);
    out.x = Jet::t_poly({a[0], a[1], a[2], a[3]});
    out.xt = Jet::t_poly({a[1], 2 * a[2], 3 * a[3], 4 * a[4]});
    if (r_taylor) {
        const auto& r = *r_taylor;
        const Jet sig = Jet::var_sigma();
        out.x += sig * Jet::t_poly({r[0], r[1], r[2], r[3]});
        out.xt += sig * Jet::t_poly({r[1], 2 * r[2], 3 * r[3], 0});
    }
    const auto m = lax_matrices<Jet>(p, out.t, out.lam, out.x, out.xt);
    out.u1 = m.u1;
    out.u2 = m.u2;
    return out;
}

} // namespace

LaxJets onshell_jets(const PainleveParams& p, double t, double lam, double x, double xt,
                     const std::array<double, 4>* r_taylor) {
    return make_jets(p, t, lam, onshell_x_taylor(p, t, x, xt), r_taylor);
}

LaxJets offshell_jets(const PainleveParams& p, double t, double lam, double x, double xt,
                      double xtt, double xttt, double xtttt) {
    const std::array<double, 5> a = {x, xt, xtt / 2.0, xttt / 6.0, xtttt / 24.0};
    return make_jets(p, t, lam, a, nullptr);
}

} // namespace solsurf
