#include "solsurf/verify.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "solsurf/geometry.hpp"
#include "solsurf/mesh_io.hpp"
#include "solsurf/specfun.hpp"

namespace solsurf {

namespace {

// Every suite draws from its own fixed-seed stream so reports are
// reproducible run to run.
struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    double uniform(double lo, double hi) {
        std::uniform_real_distribution<double> d(lo, hi);
        return d(gen);
    }
};

CheckResult make(const std::string& name, double measured, double bound,
                 const std::string& note = "") {
    return {name, measured, bound, measured < bound, note};
}

const PainleveParams kP1{Equation::P1, 0, 0, 0, 0};

PainleveParams random_params(Rng& rng, Equation eq) {
    switch (eq) {
        case Equation::P1: return kP1;
        case Equation::P2: return {Equation::P2, rng.uniform(-1, 1), 0, 0, 0};
        case Equation::P3:
        default:
            return {Equation::P3, rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(0, 1),
                    rng.uniform(-1, 0)};
    }
}

LaxPoint random_admissible(Rng& rng, const LaxPair& pair, double lo = -2, double hi = 2) {
    for (;;) {
        LaxPoint p = {rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi),
                      rng.uniform(lo, hi), rng.uniform(lo, hi)};
        if (std::abs(p.t) < 0.1 || std::abs(p.x) < 0.1 || std::abs(p.lambda) < 0.1) continue;
        if (!pair.admissible(p)) continue;
        return p;
    }
}

LaxPoint random_onshell(Rng& rng, const LaxPair& pair) {
    for (;;) {
        const LaxPoint q = {rng.uniform(0.3, 2), rng.uniform(0.3, 2), rng.uniform(0.3, 2),
                            rng.uniform(-1, 1), 0};
        if (!pair.admissible(q)) continue;
        return onshell_point(pair.params(), q.t, q.lambda, q.x, q.x_t);
    }
}

// ---- algebra ---------------------------------------------------------------

std::vector<CheckResult> suite_algebra(const VerifyOptions& opt) {
    Rng rng(101);
    auto rnd_traceless = [&] {
        return reconstruct({rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)});
    };
    // The injectable metric: flips the sign of the third diagonal entry.
    auto metric = [&](const Mat2& x, const Mat2& y) {
        const double k = killing(x, y);
        if (!opt.inject_killing_sign) return k;
        const AlgebraVector a = decompose(x), b = decompose(y);
        return k + 2.0 * a.c3 * b.c3;
    };

    std::vector<CheckResult> out;
    {
        double sig = 0;
        sig = std::max(sig, std::abs(metric(basis_e1(), basis_e1()) - 1.0));
        sig = std::max(sig, std::abs(metric(basis_e2(), basis_e2()) - 1.0));
        sig = std::max(sig, std::abs(metric(basis_e3(), basis_e3()) + 1.0));
        sig = std::max(sig, std::abs(metric(basis_e1(), basis_e2())));
        out.push_back(make("algebra.killing_signature", sig, 1e-14));
    }
    {
        double worst = 0;
        for (int i = 0; i < 200; ++i) {
            const Mat2 x = rnd_traceless(), y = rnd_traceless(), z = rnd_traceless();
            const Mat2 j = commutator(x, commutator(y, z)) + commutator(y, commutator(z, x)) +
                           commutator(z, commutator(x, y));
            worst = std::max(worst, max_abs(j));
        }
        out.push_back(make("algebra.jacobi", worst, 1e-12));
    }
    {
        double worst = 0;
        for (int i = 0; i < 200; ++i) {
            const Mat2 x = rnd_traceless(), y = rnd_traceless(), z = rnd_traceless();
            worst = std::max(
                worst, std::abs(metric(commutator(z, x), y) + metric(x, commutator(z, y))));
        }
        out.push_back(make("algebra.ad_invariance", worst, 1e-12));
    }
    {
        double worst = 0;
        for (int i = 0; i < 200; ++i) {
            const Mat2 x = rnd_traceless(), y = rnd_traceless();
            double a = 0;
            while (std::abs(a) < 0.3) a = rng.uniform(-2, 2);
            const double b = rng.uniform(-1, 1), c = rng.uniform(-1, 1);
            const Mat2 g = {cplx(a), cplx(b), cplx(c), cplx((1.0 + b * c) / a)};
            const Mat2 gi = inverse(g);
            worst = std::max(worst, std::abs(metric(gi * x * g, gi * y * g) - metric(x, y)));
        }
        out.push_back(make("algebra.conjugation_invariance", worst, 1e-10));
    }
    {
        double worst = 0;
        for (int i = 0; i < 200; ++i) {
            const AlgebraVector v = {rng.uniform(-1, 1), rng.uniform(-1, 1),
                                     rng.uniform(-1, 1)};
            const AlgebraVector w = decompose(reconstruct(v));
            worst = std::max({worst, std::abs(w.c1 - v.c1), std::abs(w.c2 - v.c2),
                              std::abs(w.c3 - v.c3)});
        }
        out.push_back(make("algebra.decompose_roundtrip", worst, 1e-12));
    }
    return out;
}

// ---- zero curvature ---------------------------------------------------------

std::vector<CheckResult> suite_zcc(const VerifyOptions&) {
    Rng rng(202);
    std::vector<CheckResult> out;
    {
        const LaxPair pair(kP1);
        double worst = 0;
        for (int i = 0; i < 1000; ++i) {
            const LaxPoint p = {rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2),
                                rng.uniform(-2, 2), rng.uniform(-2, 2)};
            const double scalar = p.x_tt - 6 * p.x * p.x - p.t;
            const Mat2r expect = {scalar, 0, 0, -scalar};
            worst = std::max(worst, max_abs(pair.zcc_residual(p) - expect));
        }
        out.push_back(make("zcc.p1_factorization", worst, 1e-10));
    }
    {
        double worst = 0;
        for (int i = 0; i < 1000; ++i) {
            const LaxPair pair(random_params(rng, Equation::P3));
            const LaxPoint p = random_admissible(rng, pair);
            worst = std::max(worst,
                             max_abs(pair.zcc_residual(p) - pair.p3_predicted_residual(p)));
        }
        out.push_back(make("zcc.p3_factorization", worst, 1e-9));
    }
    {
        double worst = 0;
        for (int i = 0; i < 1000; ++i) {
            const PainleveParams pp = random_params(rng, Equation::P2);
            const LaxPair pair(pp);
            LaxPoint p = random_admissible(rng, pair);
            p.x_tt = rhs(pp, {p.t, p.x, p.x_t});
            worst = std::max(worst, max_abs(pair.zcc_residual(p)));
        }
        out.push_back(make("zcc.p2_onshell", worst, 1e-10));
    }
    {
        // closed-form first partials against a five-point difference oracle
        double worst = 0;
        for (Equation eq : {Equation::P1, Equation::P2, Equation::P3}) {
            const LaxPair pair(random_params(rng, eq));
            for (int i = 0; i < 20; ++i) {
                LaxPoint p = random_admissible(rng, pair);
                p.t = std::copysign(std::max(std::abs(p.t), 0.5), p.t);
                p.x = std::copysign(std::max(std::abs(p.x), 0.5), p.x);
                p.lambda = std::copysign(std::max(std::abs(p.lambda), 0.5), p.lambda);
                const double h = 1e-3;
                auto along_t = [&](double d) {
                    return lax_matrices<double>(pair.params(), p.t + d, p.lambda,
                                                p.x + d * p.x_t, p.x_t + d * p.x_tt);
                };
                auto along_l = [&](double d) {
                    return lax_matrices<double>(pair.params(), p.t, p.lambda + d, p.x, p.x_t);
                };
                auto fd = [&](auto f, bool first) {
                    const auto m = [&](double d) { return first ? f(d).u1 : f(d).u2; };
                    return (m(-2 * h) + m(2 * h) * -1.0 + (m(h) + m(-h) * -1.0) * 8.0) *
                           (1.0 / (12.0 * h));
                };
                worst = std::max(worst, max_abs(fd(along_t, true) - pair.dt_u1(p)) /
                                            (1.0 + max_abs(pair.dt_u1(p))));
                worst = std::max(worst, max_abs(fd(along_t, false) - pair.dt_u2(p)) /
                                            (1.0 + max_abs(pair.dt_u2(p))));
                worst = std::max(worst, max_abs(fd(along_l, true) - pair.dl_u1(p)) /
                                            (1.0 + max_abs(pair.dl_u1(p))));
                worst = std::max(worst, max_abs(fd(along_l, false) - pair.dl_u2(p)) /
                                            (1.0 + max_abs(pair.dl_u2(p))));
            }
        }
        out.push_back(make("zcc.partials_vs_fd_oracle", worst, 1e-6));
    }
    return out;
}

// ---- symmetry ----------------------------------------------------------------

std::vector<CheckResult> suite_symmetry(const VerifyOptions&) {
    Rng rng(303);
    std::vector<CheckResult> out;
    {
        double worst = 0;
        for (Equation eq : {Equation::P1, Equation::P2, Equation::P3})
            for (int term = 1; term <= 5; ++term)
                for (int i = 0; i < 10; ++i) {
                    const LaxPair pair(random_params(rng, eq));
                    const LaxPoint p = random_onshell(rng, pair);
                    SymmetryChoice c;
                    (term == 1   ? c.alpha1
                     : term == 2 ? c.alpha2
                     : term == 3 ? c.alpha3
                     : term == 4 ? c.alpha4
                                 : c.alpha5) = 1.0;
                    const TangentFrame f = build_AB(pair, c, p);
                    worst = std::max(worst, max_abs(deformation_residual(pair, p, f)));
                }
        out.push_back(make("symmetry.single_terms", worst, 1e-8));
    }
    {
        double worst = 0;
        for (Equation eq : {Equation::P1, Equation::P2, Equation::P3})
            for (int i = 0; i < 100; ++i) {
                const LaxPair pair(random_params(rng, eq));
                const LaxPoint p = random_onshell(rng, pair);
                SymmetryChoice c;
                c.alpha1 = rng.uniform(-1, 1);
                c.alpha2 = rng.uniform(-1, 1);
                c.alpha3 = rng.uniform(-1, 1);
                c.alpha4 = rng.uniform(-1, 1);
                c.alpha5 = rng.uniform(-1, 1);
                const TangentFrame f = build_AB(pair, c, p);
                worst = std::max(worst, max_abs(deformation_residual(pair, p, f)));
            }
        out.push_back(make("symmetry.random_combinations", worst, 1e-8));
    }
    {
        double worst = 0;
        for (Equation eq : {Equation::P1, Equation::P2, Equation::P3})
            for (int i = 0; i < 100; ++i) {
                const LaxPair pair(random_params(rng, eq));
                const LaxPoint p = random_onshell(rng, pair);
                const double c1 = rng.uniform(-1, 1), c2 = rng.uniform(-1, 1),
                             c3 = rng.uniform(-1, 1), c4 = rng.uniform(-1, 1),
                             c5 = rng.uniform(-1, 1), c6 = rng.uniform(-1, 1);
                const GaugeFn S = [=](const Jet& t, const Jet& l, const Jet& x, const Jet& xt) {
                    const Jet u = t * c1 + l * c2 + x * c3 + xt * c4 + x * l * c5 + t * t * c6;
                    const Jet v = x * c2 - t * c4 + l * l * c1 + xt * x * c6;
                    const Jet w = l * c3 + t * x * c5 - xt * c1;
                    return M2t<Jet>{u, v - w, v + w, Jet(0.0) - u};
                };
                const TangentFrame f = gauge_characteristics(pair, p, S);
                worst = std::max(worst, max_abs(deformation_residual(pair, p, f)));
            }
        out.push_back(make("symmetry.gauge_closure", worst, 1e-8));
    }
    {
        double worst = 0;
        for (Equation eq : {Equation::P1, Equation::P2}) {
            const LaxPair pair(random_params(rng, eq));
            for (int i = 0; i < 30; ++i) {
                const LaxPoint q = random_admissible(rng, pair, 0.3, 2.0);
                const LaxJets jets =
                    offshell_jets(pair.params(), q.t, q.lambda, q.x, q.x_t,
                                  rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2));
                const TangentFrame f = alpha5_frame(jets);
                const Mat2r u1 = jm_value(jets.u1), u2 = jm_value(jets.u2);
                const Mat2r lhs =
                    f.dA_dl - f.dB_dt + commutator(f.A, u2) + commutator(u1, f.B);
                const M2t<Jet> omega =
                    jm_dl(jets.u1) - jm_dt(jets.u2) + commutator(jets.u1, jets.u2);
                const Mat2r rhs_m = jm_value(jm_dt(jm_dt(omega))) +
                                    commutator(jm_value(jm_dt(omega)), u1) -
                                    commutator(jm_value(omega), jm_value(jm_dt(jets.u1)));
                worst = std::max(worst, max_abs(lhs - rhs_m) / (1.0 + max_abs(rhs_m)));
            }
        }
        out.push_back(make("symmetry.q5_prolongation_identity", worst, 1e-8));
    }
    {
        // special-solution residuals
        const PainleveParams pp = {Equation::P2, 1.0, 0, 0, 0};
        const Trajectory tr = integrate(pp, {1.0, 1.0, -1.0}, 3.0, {1e-12, 1e-14});
        double worst = 0;
        for (std::size_t i = 0; i < tr.size(); ++i)
            worst = std::max(worst, std::abs(tr.x(i) - 1.0 / tr.t(i)));
        out.push_back(make("symmetry.rational_host_error", worst, 1e-8));

        const RSolution::Value ic = bessel_r_alpha1(1.0);
        const RSolution num = solve_determining(pp, tr, ic.r, ic.rt, 1e-12, 1e-14);
        double bworst = 0;
        for (std::size_t i = 0; i < num.size(); ++i)
            bworst = std::max(bworst, std::abs(num.r(i) - bessel_r_alpha1(num.t(i)).r));
        out.push_back(make("symmetry.bessel_determining", bworst, 1e-8));
    }
    {
        double worst = 0;
        for (int eps : {1, -1}) {
            const PainleveParams pp = {Equation::P2, eps / 2.0, 0, 0, 0};
            const Trajectory tr =
                solve_range(pp, airy_p2(eps, 0.5), -1.0, 2.0, {1e-12, 1e-14});
            for (std::size_t i = 0; i < tr.size(); ++i)
                worst = std::max(worst, std::abs(airy_first_integral(
                                            eps, {tr.t(i), tr.x(i), tr.x_t(i)})));
        }
        out.push_back(make("symmetry.airy_first_integral", worst, 1e-10));
    }
    {
        double worst = 0;
        for (int eps : {1, -1})
            for (double t = -1.0; t <= 2.0; t += 0.1) {
                const PainleveState s = airy_p2(eps, t);
                const RSolution::Value rv = airy_r(t);
                worst = std::max(worst, std::abs(rv.rt + 2.0 * eps * s.x * rv.r) /
                                            std::max(1.0, std::abs(rv.r)));
            }
        out.push_back(make("symmetry.airy_characteristic_relation", worst, 1e-10));
    }
    {
        const PainleveParams pp = {Equation::P2, 1.0, 0, 0, 0};
        const Trajectory host = integrate(pp, {1.0, 1.0, -1.0}, 2.0);
        const RSolution a = solve_determining(pp, host, 0.37, -0.11);
        const RSolution b = solve_determining(pp, host, 0.74, -0.22);
        double worst = 0;
        for (double t = 1.0; t <= 2.0; t += 0.05) {
            const PainleveState s = host.at(t);
            worst = std::max(worst, std::abs(b.eval(s).r - 2.0 * a.eval(s).r));
        }
        out.push_back(make("symmetry.determining_linearity", worst, 1e-10));
    }
    {
        struct Case {
            PainleveParams pp;
            P3Point which;
        };
        const Case cases[] = {{{Equation::P3, 0.7, 0, 0.8, 0}, P3Point::R1},
                              {{Equation::P3, 0, 0.7, 0, -0.8}, P3Point::R2}};
        double worst = 0;
        for (const Case& c : cases) {
            const Trajectory host =
                solve_range(c.pp, {1.0, 1.2, 0.3}, 1.0, 1.7, {1e-12, 1e-14});
            for (std::size_t i = 0; i < host.size(); ++i) {
                const PainleveState s = {host.t(i), host.x(i), host.x_t(i)};
                const RSolution::Value rv = p3_point_symmetry(c.pp, c.which, s);
                const auto a = onshell_x_taylor(c.pp, s.t, s.x, s.x_t);
                const double xtt = 2 * a[2], xttt = 6 * a[3];
                const double rtt = (c.which == P3Point::R1) ? 3 * xtt + s.t * xttt
                                                            : -xtt - s.t * xttt;
                const Linearization lin = linearization(c.pp, s);
                const double scale =
                    std::max(1.0, std::abs(lin.w1 * rv.r) + std::abs(lin.w2 * rv.rt));
                worst = std::max(worst,
                                 std::abs(rtt - lin.w1 * rv.r - lin.w2 * rv.rt) / scale);
            }
        }
        out.push_back(make("symmetry.p3_linearized", worst, 1e-8));
    }
    {
        // closed-form displays of the P3 point-symmetry tangents
        double worst = 0;
        {
            const PainleveParams pp = {Equation::P3, 0.3, 0, 0.49, 0};
            const LaxPair pair(pp);
            const double g = 0.7;
            const RSolution rs = RSolution::p3_scale_r1(pp);
            SymmetryChoice ch;
            ch.alpha6 = 1;
            for (int i = 0; i < 10; ++i) {
                const LaxPoint p = random_onshell(rng, pair);
                const TangentFrame f = build_AB(pair, ch, p, &rs);
                const double s = g * g * p.t * p.x * p.x + (g + pp.alpha) * p.x +
                                 g * p.t * p.x_t;
                const Mat2r a_disp = {s / 2, 0, 0, -s / 2};
                const Mat2r b_disp = {(s / 2) * p.t / p.lambda,
                                      -(s / 2) * (p.x + p.t * p.x_t + g * p.t * p.x * p.x) /
                                          (p.x * p.lambda * p.lambda),
                                      0, -(s / 2) * p.t / p.lambda};
                worst = std::max(worst, max_abs(f.A - a_disp) / (1 + std::abs(s)));
                worst = std::max(worst, max_abs(f.B - b_disp) / (1 + max_abs(b_disp)));
            }
        }
        {
            const PainleveParams pp = {Equation::P3, 0, 0.6, 0, -0.64};
            const LaxPair pair(pp);
            const double d = 0.8;
            const RSolution rs = RSolution::p3_scale_r2(pp);
            SymmetryChoice ch;
            ch.alpha6 = 1;
            for (int i = 0; i < 10; ++i) {
                const LaxPoint p = random_onshell(rng, pair);
                const TangentFrame f = build_AB(pair, ch, p, &rs);
                const double s = (d * p.t * p.x_t - d * p.x - pp.beta * p.x + d * d * p.t) /
                                 (p.x * p.x);
                const Mat2r a_disp = {s / 2, 0, 0, -s / 2};
                const Mat2r b_disp = {(s / 2) * p.t / p.lambda, 0,
                                      -(s / 2) * (p.t * p.x_t - p.x + d * p.t) /
                                          (p.lambda * p.lambda * p.x),
                                      -(s / 2) * p.t / p.lambda};
                worst = std::max(worst, max_abs(f.A - a_disp) / (1 + std::abs(s)));
                worst = std::max(worst, max_abs(f.B - b_disp) / (1 + max_abs(b_disp)));
            }
        }
        out.push_back(make("symmetry.p3_tangent_displays", worst, 1e-10));
    }
    return out;
}

// ---- frame -------------------------------------------------------------------

struct FrameFixture {
    LaxPair pair{kP1};
    Trajectory host;
    GridSpec grid;
    FrameFixture() {
        host = solve_range(kP1, {0.0, 0.0, 0.0}, 0.0, 1.3);
        grid.t_min = 0.3;
        grid.t_max = 1.1;
        grid.n_t = 50;
        grid.lambda_min = -0.4;
        grid.lambda_max = 0.4;
        grid.n_lambda = 50;
        grid.base_t = grid.t_at(25);
        grid.base_lambda = grid.lambda_at(25);
    }
};

std::vector<CheckResult> suite_frame(const VerifyOptions&) {
    std::vector<CheckResult> out;
    FrameFixture fx;
    const FrameGrid fg = integrate_frame(fx.pair, fx.host, fx.grid);
    out.push_back(make("frame.det_drift", fg.max_det_drift, 1e-8));
    {
        const FrameGrid fgT =
            integrate_frame(fx.pair, fx.host, fx.grid, 1e-10, PathOrder::LambdaThenT);
        double worst = 0;
        for (int ri = 0; ri < fg.rn_t; ++ri)
            for (int rj = 0; rj < fg.rn_lambda; ++rj)
                worst = std::max(worst, max_abs(fg.phi_at(ri, rj) - fgT.phi_at(ri, rj)));
        out.push_back(make("frame.path_transposition", worst, 1e-6));
    }
    {
        const double h = fg.rt[1] - fg.rt[0];
        double worst = 0;
        for (int ri = 2; ri + 2 < fg.rn_t; ri += 3)
            for (int rj = 0; rj < fg.rn_lambda; rj += 7) {
                const Mat2r d = (fg.phi_at(ri - 2, rj) + fg.phi_at(ri + 2, rj) * -1.0 +
                                 (fg.phi_at(ri + 1, rj) + fg.phi_at(ri - 1, rj) * -1.0) * 8.0) *
                                (1.0 / (12.0 * h));
                worst = std::max(
                    worst, max_abs(d * inverse(fg.phi_at(ri, rj)) - fx.pair.u1(fg.point_at(ri, rj))));
            }
        out.push_back(make("frame.linear_problem_fd", worst, 1e-5));
    }
    {
        SymmetryChoice c;
        c.alpha1 = 1;
        const SurfaceGrid closed = immersion_closed_form(fg, fx.pair, c);
        QuadratureReport rep;
        const TangentField field = [&](const LaxPoint& p, Mat2r& A, Mat2r& B) {
            const TangentFrame f = build_AB(fx.pair, c, p);
            A = f.A;
            B = f.B;
        };
        const SurfaceGrid quad = immersion_quadrature(fg, field, &rep);
        const int bi = fg.base_ri / 2, bj = fg.base_rj / 2;
        const AlgebraVector offset = closed.at(bi, bj).F;
        double worst = 0;
        for (int i = 0; i < closed.n_t; ++i)
            for (int j = 0; j < closed.n_lambda; ++j)
                worst = std::max(worst,
                                 (closed.at(i, j).F - offset - quad.at(i, j).F).max_abs());
        out.push_back(make("frame.quadrature_vs_closed_form", worst, 1e-6));
        out.push_back(make("frame.plaquette_circulation", rep.max_plaquette, 1e-8));
        {
            const SurfaceGrid quad2 = immersion_quadrature(fg, field, nullptr, 7, 11);
            const AlgebraVector shift = quad.at(7, 11).F - quad2.at(7, 11).F;
            double sworst = 0;
            for (int i = 0; i < quad.n_t; ++i)
                for (int j = 0; j < quad.n_lambda; ++j)
                    sworst = std::max(
                        sworst, (quad.at(i, j).F - quad2.at(i, j).F - shift).max_abs());
            out.push_back(make("frame.base_point_shift", sworst, 1e-6));
        }
    }
    {
        SymmetryChoice c;
        c.alpha2 = 1;
        double worst = 0;
        for (int ri = 0; ri < fg.rn_t; ri += 9)
            for (int rj = 0; rj < fg.rn_lambda; rj += 9) {
                const LaxPoint p = fg.point_at(ri, rj);
                const TangentFrame f = build_AB(fx.pair, c, p);
                const Mat2r phi = fg.phi_at(ri, rj);
                const Mat2r phi_inv = inverse(phi);
                worst = std::max(worst,
                                 std::abs(killing(phi_inv * f.A * phi, phi_inv * f.B * phi) -
                                          killing(f.A, f.B)));
            }
        out.push_back(make("frame.conjugation_killing", worst, 1e-8));
    }
    return out;
}

// ---- geometry ------------------------------------------------------------------

std::vector<CheckResult> suite_geometry(const VerifyOptions&) {
    std::vector<CheckResult> out;
    // P1 spectral-translation surface: K and H closed forms on a 50x50 grid.
    {
        const LaxPair pair(kP1);
        const Trajectory host = solve_range(kP1, {0.0, 0.0, 0.0}, 0.0, 1.6);
        GridSpec grid;
        grid.t_min = 0.5;
        grid.t_max = 1.5;
        grid.n_t = 50;
        grid.lambda_min = -1.0;
        grid.lambda_max = 1.0;
        grid.n_lambda = 50;
        SymmetryChoice c;
        c.alpha2 = 1;
        const SurfaceGrid sg = geometry_grid_from_host(pair, host, grid, c);
        double worst_k = 0, worst_h = 0;
        for (int i = 0; i < sg.n_t; ++i)
            for (int j = 0; j < sg.n_lambda; ++j) {
                const SurfaceNode& n = sg.at(i, j);
                const PainleveState s = host.at(n.t);
                const double kw = 2 * (6 * s.x * s.x + n.t);
                const double hw = 2 * (2 * s.x + n.lambda);
                worst_k =
                    std::max(worst_k, std::abs(n.K - kw) / std::max(1.0, std::abs(kw)));
                worst_h =
                    std::max(worst_h, std::abs(n.H - hw) / std::max(1.0, std::abs(hw)));
            }
        out.push_back(make("geometry.p1_spectral_K", worst_k, 1e-6));
        out.push_back(make("geometry.p1_spectral_H", worst_h, 1e-6));

        // umbilic curve lambda = -2x + sqrt(x_tt/2) and the extractor
        const auto h2k = h2k_evaluator(pair, host, c);
        GridSpec ugrid = grid;
        ugrid.lambda_min = -1.6;
        const SurfaceGrid usg = geometry_grid_from_host(pair, host, ugrid, c);
        const auto found = umbilic_locus(usg, h2k);
        const double cell_t = (ugrid.t_max - ugrid.t_min) / (ugrid.n_t - 1);
        const double cell_l = (ugrid.lambda_max - ugrid.lambda_min) / (ugrid.n_lambda - 1);
        int matched = 0;
        double worst_u = 0;
        for (int k = 0; k < 20; ++k) {
            const double t = 0.55 + k * (0.9 / 19.0);
            const PainleveState s = host.at(t);
            const double lam = -2 * s.x + std::sqrt(0.5 * (6 * s.x * s.x + t));
            worst_u = std::max(worst_u, std::abs(h2k(t, lam)));
            for (const auto& q : found)
                if (std::abs(q.first - t) <= cell_t && std::abs(q.second - lam) <= cell_l) {
                    ++matched;
                    break;
                }
        }
        // strip with negative second derivative: no umbilic points at all
        const Trajectory neg_host = solve_range(kP1, {-2.0, 0.0, 0.0}, -2.0, -1.55);
        GridSpec ngrid;
        ngrid.t_min = -1.95;
        ngrid.t_max = -1.6;
        ngrid.n_t = 25;
        ngrid.lambda_min = -1.0;
        ngrid.lambda_max = 1.0;
        ngrid.n_lambda = 25;
        const SurfaceGrid nsg = geometry_grid_from_host(pair, neg_host, ngrid, c);
        const auto neg_found = umbilic_locus(nsg, h2k_evaluator(pair, neg_host, c));
        std::ostringstream note;
        note << "matched " << matched << "/20, negative-region hits " << neg_found.size();
        CheckResult u = make("geometry.umbilic_curve", worst_u, 1e-6, note.str());
        u.pass = u.pass && matched >= 18 && neg_found.empty();
        out.push_back(u);
    }
    // P1 t-translation surface: isotropy, cross metric term, parabolic line.
    {
        const LaxPair pair(kP1);
        const Trajectory host = solve_range(kP1, {0.0, 0.2, 0.1}, 0.0, 1.5);
        SymmetryChoice c;
        c.alpha1 = 1;
        double iso = 0, g12_dev = 0;
        for (double t = 0.4; t <= 1.4; t += 0.02)
            for (double l = -1.0; l <= 1.0; l += 0.25) {
                const PainleveState s = host.at(t);
                const LaxPoint p = onshell_point(kP1, s.t, l, s.x, s.x_t);
                const Mat2r a = pair.dt_u1(p);
                iso = std::max(iso, std::abs(killing(a, a)));
                const TangentFrame f = build_AB(pair, c, p);
                const FirstForm g = first_fundamental(f.A, f.B);
                g12_dev = std::max(g12_dev, std::abs(g.g12 + 2 * s.x_t * s.x_t));
            }
        out.push_back(make("geometry.p1_translation_isotropy", iso, 1e-12));
        out.push_back(make("geometry.p1_translation_g12", g12_dev, 1e-10));

        double worst = 0, scale = 0;
        for (double t = 0.4; t <= 1.4; t += 0.02) {
            const PainleveState s = host.at(t);
            const LaxPoint on = onshell_point(kP1, s.t, s.x, s.x, s.x_t);
            const LaxPoint off = onshell_point(kP1, s.t, s.x + 0.5, s.x, s.x_t);
            const TangentFrame f_on = build_AB(pair, c, on);
            const TangentFrame f_off = build_AB(pair, c, off);
            SurfaceNode n_on, n_off;
            compute_geometry(pair, on, f_on, n_on);
            compute_geometry(pair, off, f_off, n_off);
            if (n_on.has_second) worst = std::max(worst, std::abs(n_on.K));
            if (n_off.has_second) scale = std::max(scale, std::abs(n_off.K));
        }
        out.push_back(make("geometry.p1_parabolic_line", worst, 1e-6 * std::max(1.0, scale)));
    }
    // P2 spectral-translation surface on the first rational branch.
    {
        const PainleveParams pp = {Equation::P2, 1.0, 0, 0, 0};
        const LaxPair pair(pp);
        const Trajectory host = integrate(pp, {1.0, 1.0, -1.0}, 3.0, {1e-12, 1e-14});
        GridSpec grid;
        grid.t_min = 1.0;
        grid.t_max = 3.0;
        grid.n_t = 50;
        grid.lambda_min = 0.5;
        grid.lambda_max = 2.0;
        grid.n_lambda = 50;
        SymmetryChoice c;
        c.alpha2 = 1;
        const SurfaceGrid sg = geometry_grid_from_host(pair, host, grid, c);
        double worst_det = 0, worst_k = 0, worst_h = 0;
        for (int i = 0; i < sg.n_t; ++i)
            for (int j = 0; j < sg.n_lambda; ++j) {
                const SurfaceNode& n = sg.at(i, j);
                const PainleveState s = host.at(n.t);
                const double l = n.lambda;
                const double q = pp.alpha / (l * l) + 4 * s.x;
                const double scale2 =
                    std::pow(std::max({std::abs(n.g11), std::abs(n.g12), std::abs(n.g22)}), 2);
                worst_det = std::max(worst_det, std::abs(n.det_g - q * q) / scale2);
                const double xtt = rhs(pp, s);
                const double denom = 4 * s.x * l * l + pp.alpha;
                const double kw = 4 * l * l * xtt / denom;
                // this family's closed-form mean curvature corresponds to the
                // opposite normal orientation from the global sigma = -1
                const double hw =
                    -(4 * std::pow(l, 4) + l * l * (6 * s.x * s.x + n.t) + pp.alpha * s.x) /
                    denom;
                worst_k =
                    std::max(worst_k, std::abs(n.K - kw) / std::max(1.0, std::abs(kw)));
                worst_h =
                    std::max(worst_h, std::abs(n.H - hw) / std::max(1.0, std::abs(hw)));
            }
        out.push_back(make("geometry.p2_spectral_detg", worst_det, 1e-8));
        out.push_back(make("geometry.p2_spectral_K", worst_k, 1e-6));
        out.push_back(make("geometry.p2_spectral_H_oriented", worst_h, 1e-6));

        // characteristic surface with the Bessel branch
        const RSolution rs = RSolution::bessel_alpha1();
        SymmetryChoice c6;
        c6.alpha6 = 1;
        double worst_f6 = 0;
        for (double t = 1.0; t <= 2.6; t += 0.1) {
            const PainleveState s = rational_p2(1, t);
            const LaxPoint p = onshell_point(pp, t, 1.1, s.x, s.x_t);
            const TangentFrame f = build_AB(pair, c6, p, &rs);
            const FirstForm g = first_fundamental(f.A, f.B);
            const RSolution::Value rv = bessel_r_alpha1(t);
            const double want =
                -4 * rv.r * rv.r * (rv.rt * rv.rt - 4 * s.x * s.x * rv.r * rv.r);
            worst_f6 =
                std::max(worst_f6, std::abs(g.det() - want) / std::max(1.0, std::abs(want)));
        }
        out.push_back(make("geometry.p2_characteristic_detg", worst_f6, 1e-10));
    }
    // degeneracy suite
    {
        auto degeneracy = [&](const char* name, const LaxPair& pair, const SymmetryChoice& c,
                              const RSolution* rs, const std::vector<LaxPoint>& pts) {
            double worst = 0;
            bool rank_ok = true;
            for (const LaxPoint& p : pts) {
                const TangentFrame f = build_AB(pair, c, p, rs);
                SurfaceNode n;
                compute_geometry(pair, p, f, n);
                const double s2 =
                    std::pow(std::max({std::abs(n.g11), std::abs(n.g12), std::abs(n.g22)}), 2);
                worst = std::max(worst, std::abs(n.det_g) / std::max(1.0, s2));
                const AlgebraVector a = decompose(n.A), b = decompose(n.B);
                const double cx = a.c2 * b.c3 - a.c3 * b.c2;
                const double cy = a.c3 * b.c1 - a.c1 * b.c3;
                const double cz = a.c1 * b.c2 - a.c2 * b.c1;
                rank_ok = rank_ok && (cx * cx + cy * cy + cz * cz) > 1e-20;
            }
            CheckResult r = make(name, worst, 1e-9, rank_ok ? "tangent rank 2" : "rank deficient");
            r.pass = r.pass && rank_ok;
            out.push_back(r);
        };
        {
            const LaxPair pair(kP1);
            SymmetryChoice c;
            c.alpha5 = 1;
            std::vector<LaxPoint> pts;
            for (double t = 0.4; t <= 1.2; t += 0.2)
                pts.push_back(onshell_point(kP1, t, 0.5, 0.3 * t, -0.4));
            degeneracy("geometry.degenerate_p1_flow_term", pair, c, nullptr, pts);
        }
        {
            const PainleveParams pp = {Equation::P2, 0.5, 0, 0, 0};
            const LaxPair pair(pp);
            std::vector<LaxPoint> pts;
            for (double t : {-0.5, 0.2, 1.0, 1.7}) {
                const PainleveState s = airy_p2(1, t);
                pts.push_back(onshell_point(pp, t, 0.8, s.x, s.x_t));
            }
            SymmetryChoice c1;
            c1.alpha1 = 1;
            degeneracy("geometry.degenerate_airy_translation", pair, c1, nullptr, pts);
            SymmetryChoice c6;
            c6.alpha6 = 1;
            const RSolution rs = RSolution::airy(1);
            degeneracy("geometry.degenerate_airy_characteristic", pair, c6, &rs, pts);
        }
        {
            const PainleveParams r1 = {Equation::P3, 0.3, 0, 0.49, 0};
            const LaxPair pair(r1);
            const RSolution rs = RSolution::p3_scale_r1(r1);
            SymmetryChoice c;
            c.alpha6 = 1;
            std::vector<LaxPoint> pts;
            for (double t = 1.0; t <= 1.8; t += 0.2)
                pts.push_back(onshell_point(r1, t, 0.7, 0.9 + 0.1 * t, 0.5));
            degeneracy("geometry.degenerate_p3_scale_r1", pair, c, &rs, pts);

            const PainleveParams r2 = {Equation::P3, 0, 0.6, 0, -0.64};
            const LaxPair pair2(r2);
            const RSolution rs2 = RSolution::p3_scale_r2(r2);
            std::vector<LaxPoint> pts2;
            for (double t = 1.0; t <= 1.8; t += 0.2)
                pts2.push_back(onshell_point(r2, t, 0.7, 1.1, -0.4 + 0.1 * t));
            degeneracy("geometry.degenerate_p3_scale_r2", pair2, c, &rs2, pts2);
        }
    }
    return out;
}

} // namespace

std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& opt) {
    std::vector<CheckResult> out;
    auto add = [&](std::vector<CheckResult> v) {
        out.insert(out.end(), v.begin(), v.end());
    };
    if (suite == "algebra" || suite == "all") add(suite_algebra(opt));
    if (suite == "zcc" || suite == "all") add(suite_zcc(opt));
    if (suite == "symmetry" || suite == "all") add(suite_symmetry(opt));
    if (suite == "frame" || suite == "all") add(suite_frame(opt));
    if (suite == "geometry" || suite == "all") add(suite_geometry(opt));
    if (out.empty()) throw DomainError("run_suite: unknown suite '" + suite + "'");
    return out;
}

namespace {

// The binding sub-check: the one with the largest measured/bound ratio.
CheckResult bind_checks(const std::string& label, const std::vector<CheckResult>& parts) {
    CheckResult worst = parts.front();
    double worst_ratio = -1;
    bool pass = true;
    for (const CheckResult& c : parts) {
        pass = pass && c.pass;
        const double ratio = c.measured / std::max(c.bound, 1e-300);
        if (ratio > worst_ratio) {
            worst_ratio = ratio;
            worst = c;
        }
    }
    CheckResult out = worst;
    out.name = label;
    out.pass = pass;
    out.note = worst.name + (worst.note.empty() ? "" : " (" + worst.note + ")");
    return out;
}

std::vector<CheckResult> pick(const std::vector<CheckResult>& all,
                              const std::vector<std::string>& names) {
    std::vector<CheckResult> out;
    for (const std::string& n : names)
        for (const CheckResult& c : all)
            if (c.name == n) out.push_back(c);
    return out;
}

} // namespace

std::vector<CheckResult> run_acceptance() {
    const std::vector<CheckResult> all = run_suite("all");
    std::vector<CheckResult> out;
    out.push_back(bind_checks("C01.zcc_factorization_p1", pick(all, {"zcc.p1_factorization"})));
    out.push_back(bind_checks("C02.zcc_factorization_p3", pick(all, {"zcc.p3_factorization"})));
    out.push_back(bind_checks("C03.zcc_onshell_p2", pick(all, {"zcc.p2_onshell"})));
    out.push_back(bind_checks(
        "C04.deformation_residuals",
        pick(all, {"symmetry.single_terms", "symmetry.random_combinations",
                   "symmetry.gauge_closure"})));
    out.push_back(bind_checks("C05.curvature_regression_p1",
                              pick(all, {"geometry.p1_spectral_K", "geometry.p1_spectral_H"})));
    out.push_back(bind_checks("C06.metric_regression_p2", pick(all, {"geometry.p2_spectral_detg"})));
    out.push_back(
        bind_checks("C07.isotropy_p1", pick(all, {"geometry.p1_translation_isotropy"})));
    out.push_back(bind_checks(
        "C08.degeneracy_suite",
        pick(all, {"geometry.degenerate_p1_flow_term", "geometry.degenerate_airy_translation",
                   "geometry.degenerate_airy_characteristic", "geometry.degenerate_p3_scale_r1",
                   "geometry.degenerate_p3_scale_r2"})));
    out.push_back(bind_checks("C09.wave_function",
                              pick(all, {"frame.det_drift", "frame.path_transposition"})));
    out.push_back(bind_checks("C10.immersion_cross_check",
                              pick(all, {"frame.quadrature_vs_closed_form",
                                         "frame.plaquette_circulation"})));
    out.push_back(bind_checks(
        "C11.special_solution_residuals",
        pick(all, {"symmetry.rational_host_error", "symmetry.airy_first_integral",
                   "symmetry.bessel_determining", "symmetry.airy_characteristic_relation"})));
    out.push_back(bind_checks("C12.umbilic_curve", pick(all, {"geometry.umbilic_curve"})));
    out.push_back(bind_checks("C13.parabolic_line", pick(all, {"geometry.p1_parabolic_line"})));
    out.push_back(bind_checks("C14.p3_point_symmetries",
                              pick(all, {"symmetry.p3_linearized",
                                         "symmetry.p3_tangent_displays"})));
    return out;
}

std::string format_report(const std::vector<CheckResult>& results) {
    std::ostringstream os;
    for (const CheckResult& c : results) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%-42s measured=%-12.3e bound=%-9.1e %s", c.name.c_str(),
                      c.measured, c.bound, c.pass ? "PASS" : "FAIL");
        os << buf;
        if (!c.note.empty()) os << "  [" << c.note << "]";
        os << '\n';
    }
    return os.str();
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const CheckResult& c : results)
        if (!c.pass) return false;
    return true;
}

} // namespace solsurf
