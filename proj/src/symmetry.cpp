#include "solsurf/symmetry.hpp"

#include <algorithm>
#include <cmath>

#include "solsurf/hermite.hpp"
#include "solsurf/specfun.hpp"

namespace solsurf {

// ---- scalar weights ---------------------------------------------------------

ScalarFn ScalarFn::one() {
    return {[](double) { return 1.0; }, [](double) { return 0.0; }, [](double) { return 0.0; }};
}

ScalarFn ScalarFn::polynomial(std::vector<double> coeffs) {
    if (coeffs.empty()) coeffs.push_back(0.0);
    auto horner = [](const std::vector<double>& c, double v) {
        double acc = 0.0;
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * v + c[i];
        return acc;
    };
    std::vector<double> d1, d2;
    for (std::size_t i = 1; i < coeffs.size(); ++i) d1.push_back(i * coeffs[i]);
    for (std::size_t i = 1; i < d1.size(); ++i) d2.push_back(i * d1[i]);
    if (d1.empty()) d1.push_back(0.0);
    if (d2.empty()) d2.push_back(0.0);
    return {[=](double v) { return horner(coeffs, v); },
            [=](double v) { return horner(d1, v); },
            [=](double v) { return horner(d2, v); }};
}

// ---- characteristics --------------------------------------------------------

RSolution::Value bessel_r_alpha1(double t) {
    if (t <= 0.0) throw DomainError("bessel_r_alpha1: requires t > 0");
    const double z = 2.0 * std::pow(t, 1.5) / 3.0;
    const double i_nu = bessel_i(5.0 / 3.0, z);
    const double i_prime = 0.5 * (bessel_i(2.0 / 3.0, z) + bessel_i(8.0 / 3.0, z));
    const double r = std::sqrt(t) * i_nu;
    const double rt = 0.5 * i_nu / std::sqrt(t) + t * i_prime;
    return {r, rt};
}

RSolution::Value airy_r(double t) {
    const double k = std::pow(2.0, -1.0 / 3.0);
    const AiryValue a = airy(-k * t);
    if (std::abs(a.ai) < 1e-12) throw NearAiryZero("airy_r: evaluation near an Airy zero");
    const double r = 1.0 / (a.ai * a.ai);
    const double rt = 2.0 * k * a.aip / (a.ai * a.ai * a.ai);
    return {r, rt};
}

RSolution::Value p3_point_symmetry(const PainleveParams& params, P3Point which,
                                   const PainleveState& state) {
    if (params.equation != Equation::P3)
        throw WrongParameterRegime("p3_point_symmetry: P3 only");
    const double xtt = rhs(params, state);
    if (which == P3Point::R1) {
        if (params.beta != 0.0 || params.delta != 0.0)
            throw WrongParameterRegime("p3_point_symmetry R1: requires beta = delta = 0");
        return {state.x + state.t * state.x_t, 2.0 * state.x_t + state.t * xtt};
    }
    if (params.alpha != 0.0 || params.gamma != 0.0)
        throw WrongParameterRegime("p3_point_symmetry R2: requires alpha = gamma = 0");
    return {state.x - state.t * state.x_t, -state.t * xtt};
}

RSolution RSolution::bessel_alpha1() { return RSolution(Kind::BesselAlpha1); }

RSolution RSolution::airy(int eps) {
    if (eps != 1 && eps != -1) throw DomainError("RSolution::airy: eps must be +-1");
    RSolution r(Kind::AiryEps);
    r.eps_ = eps;
    return r;
}

RSolution RSolution::p3_scale_r1(const PainleveParams& params, bool skip_regime_check) {
    RSolution r(Kind::P3ScaleR1);
    r.params_ = params;
    r.skip_regime_ = skip_regime_check;
    return r;
}

RSolution RSolution::p3_scale_r2(const PainleveParams& params, bool skip_regime_check) {
    RSolution r(Kind::P3ScaleR2);
    r.params_ = params;
    r.skip_regime_ = skip_regime_check;
    return r;
}

RSolution RSolution::numeric(PainleveParams params, std::vector<double> t, std::vector<double> r,
                             std::vector<double> rt, std::vector<double> rtt) {
    if (t.empty() || t.size() != r.size() || t.size() != rt.size() || t.size() != rtt.size())
        throw DomainError("RSolution::numeric: inconsistent sample arrays");
    RSolution out(Kind::Numeric);
    out.params_ = params;
    out.t_ = std::move(t);
    out.r_ = std::move(r);
    out.rt_ = std::move(rt);
    out.rtt_ = std::move(rtt);
    return out;
}

RSolution::Value RSolution::eval(const PainleveState& s) const {
    switch (kind_) {
        case Kind::BesselAlpha1:
            return bessel_r_alpha1(s.t);
        case Kind::AiryEps:
            return airy_r(s.t);
        case Kind::P3ScaleR1: {
            if (!skip_regime_) return p3_point_symmetry(params_, P3Point::R1, s);
            const double xtt = rhs(params_, s);
            return {s.x + s.t * s.x_t, 2.0 * s.x_t + s.t * xtt};
        }
        case Kind::P3ScaleR2: {
            if (!skip_regime_) return p3_point_symmetry(params_, P3Point::R2, s);
            const double xtt = rhs(params_, s);
            return {s.x - s.t * s.x_t, -s.t * xtt};
        }
        case Kind::Numeric:
            break;
    }
    const double tq = s.t;
    const bool inc = t_.size() < 2 || t_.back() >= t_.front();
    const double lo = inc ? t_.front() : t_.back();
    const double hi = inc ? t_.back() : t_.front();
    if (tq < lo - 1e-9 || tq > hi + 1e-9)
        throw DomainError("RSolution::eval: query outside sampled range");
    if (t_.size() == 1) return {r_[0], rt_[0]};
    std::size_t k;
    if (inc)
        k = std::upper_bound(t_.begin(), t_.end(), tq) - t_.begin();
    else
        k = std::upper_bound(t_.begin(), t_.end(), tq, std::greater<double>()) - t_.begin();
    k = std::clamp<std::size_t>(k, 1, t_.size() - 1);
    const std::size_t i = k - 1;
    const double h = t_[k] - t_[i];
    const double u = (tq - t_[i]) / h;
    const double r = quintic_hermite(u, r_[i], h * rt_[i], h * h * rtt_[i], r_[k], h * rt_[k],
                             h * h * rtt_[k]);
    const double rt = quintic_hermite_deriv(u, r_[i], h * rt_[i], h * h * rtt_[i], r_[k],
                                            h * rt_[k], h * h * rtt_[k]) /
                      h;
    return {r, rt};
}

// ---- tangent frames ---------------------------------------------------------

namespace {

TangentFrame frame_from_jets(const M2t<Jet>& ja, const M2t<Jet>& jb) {
    TangentFrame f;
    f.A = jm_value(ja);
    f.B = jm_value(jb);
    f.dA_dt = jm_value(jm_dt(ja));
    f.dA_dl = jm_value(jm_dl(ja));
    f.dB_dt = jm_value(jm_dt(jb));
    f.dB_dl = jm_value(jm_dl(jb));
    return f;
}

} // namespace

TangentFrame build_AB(const LaxPair& pair, const SymmetryChoice& choice, const LaxPoint& p,
                      const RSolution* r_data) {
    if (!choice.any_nonzero()) throw DomainError("build_AB: all coefficients vanish");
    pair.require_admissible(p);
    if (choice.alpha6 != 0.0 && r_data == nullptr)
        throw MissingRSolution("build_AB: alpha6 != 0 requires a characteristic R");

    std::array<double, 4> rc{};
    const std::array<double, 4>* rc_ptr = nullptr;
    if (choice.alpha6 != 0.0) {
        const RSolution::Value rv = r_data->eval({p.t, p.x, p.x_t});
        rc = characteristic_taylor(pair.params(), p.t, p.x, p.x_t, rv.r, rv.rt);
        rc_ptr = &rc;
    }
    const LaxJets jets = onshell_jets(pair.params(), p.t, p.lambda, p.x, p.x_t, rc_ptr);

    const Jet rj = Jet::t_poly({choice.r.f(p.t), choice.r.df(p.t), 0.5 * choice.r.d2f(p.t), 0});
    Jet sj;
    sj.at(0, 0, 0) = choice.s.f(p.lambda);
    sj.at(0, 1, 0) = choice.s.df(p.lambda);
    sj.at(0, 2, 0) = 0.5 * choice.s.d2f(p.lambda);

    M2t<Jet> ja{}, jb{};
    if (choice.alpha1 != 0.0) {
        ja += jm_dt(jm_scale(jets.u1, rj)) * Jet(choice.alpha1);
        jb += jm_scale(jm_dt(jets.u2), rj) * Jet(choice.alpha1);
    }
    if (choice.alpha2 != 0.0) {
        ja += jm_scale(jm_dl(jets.u1), sj) * Jet(choice.alpha2);
        jb += jm_dl(jm_scale(jets.u2, sj)) * Jet(choice.alpha2);
    }
    if (choice.alpha3 != 0.0) {
        ja += (jm_scale(jm_dt(jets.u1), jets.t) + jets.u1) * Jet(choice.alpha3);
        jb += jm_scale(jm_dt(jets.u2), jets.t) * Jet(choice.alpha3);
    }
    if (choice.alpha4 != 0.0) {
        ja += jm_scale(jm_dl(jets.u1), jets.lam) * Jet(choice.alpha4);
        jb += (jm_scale(jm_dl(jets.u2), jets.lam) + jets.u2) * Jet(choice.alpha4);
    }
    if (choice.alpha5 != 0.0) {
        ja += (jm_dt(jm_dt(jets.u1)) + commutator(jm_dt(jets.u1), jets.u1)) * Jet(choice.alpha5);
        jb += (jm_dt(jm_dt(jets.u2)) + commutator(jm_dt(jets.u2), jets.u1)) * Jet(choice.alpha5);
    }
    if (choice.alpha6 != 0.0) {
        ja += jm_dsigma(jets.u1) * Jet(choice.alpha6);
        jb += jm_dsigma(jets.u2) * Jet(choice.alpha6);
    }
    return frame_from_jets(ja, jb);
}

TangentFrame gauge_characteristics(const LaxPair& pair, const LaxPoint& p, const GaugeFn& S) {
    pair.require_admissible(p);
    const LaxJets jets = onshell_jets(pair.params(), p.t, p.lambda, p.x, p.x_t);
    const M2t<Jet> s = S(jets.t, jets.lam, jets.x, jets.xt);
    const M2t<Jet> q1 = jm_dt(s) + commutator(s, jets.u1);
    const M2t<Jet> q2 = jm_dl(s) + commutator(s, jets.u2);
    return frame_from_jets(q1, q2);
}

Mat2r deformation_residual(const LaxPair& pair, const LaxPoint& p, const TangentFrame& f) {
    const auto m = lax_matrices<double>(pair.params(), p.t, p.lambda, p.x, p.x_t);
    return f.dA_dl - f.dB_dt + commutator(f.A, m.u2) + commutator(m.u1, f.B);
}

TangentFrame alpha5_frame(const LaxJets& jets) {
    const M2t<Jet> ja = jm_dt(jm_dt(jets.u1)) + commutator(jm_dt(jets.u1), jets.u1);
    const M2t<Jet> jb = jm_dt(jm_dt(jets.u2)) + commutator(jm_dt(jets.u2), jets.u1);
    return frame_from_jets(ja, jb);
}

RSolution solve_determining(const PainleveParams& params, const Trajectory& host, double r0,
                            double rt0, double rel_tol, double abs_tol) {
    if (host.size() == 0) throw DomainError("solve_determining: empty host");
    std::vector<double> ts, rs, rts, rtts;
    auto record = [&](double t, const std::array<double, 4>& y, const std::array<double, 4>& k) {
        ts.push_back(t);
        rs.push_back(y[2]);
        rts.push_back(y[3]);
        rtts.push_back(k[3]);
    };
    if (host.size() == 1) {
        const PainleveState s0 = {host.t(0), host.x(0), host.x_t(0)};
        const Linearization lin = linearization(params, s0);
        return RSolution::numeric(params, {s0.t}, {r0}, {rt0}, {lin.w1 * r0 + lin.w2 * rt0});
    }

    auto f = [&](double t, const std::array<double, 4>& y, std::array<double, 4>& dy) {
        const PainleveState s = {t, y[0], y[1]};
        const Linearization lin = linearization(params, s);
        dy[0] = y[1];
        dy[1] = rhs(params, s);
        dy[2] = y[3];
        dy[3] = lin.w1 * y[2] + lin.w2 * y[3];
    };
    std::array<double, 4> y = {host.x(0), host.x_t(0), r0, rt0};
    OdeOptions opt;
    opt.rel_tol = rel_tol;
    opt.abs_tol = abs_tol;
    try {
        integrate_adaptive<4>(f, host.t(0), y, host.t(host.size() - 1), opt, record);
    } catch (const StepSizeUnderflow&) {
        if (ts.size() < 2) throw SingularInput("solve_determining: host singularity at start");
    }
    return RSolution::numeric(params, std::move(ts), std::move(rs), std::move(rts),
                              std::move(rtts));
}

} // namespace solsurf
