#include "solsurf/painleve.hpp"

#include <algorithm>
#include <cmath>

#include "solsurf/hermite.hpp"
#include "solsurf/specfun.hpp"

namespace solsurf {

std::string equation_name(Equation eq) {
    switch (eq) {
        case Equation::P1: return "P1";
        case Equation::P2: return "P2";
        case Equation::P3: return "P3";
    }
    return "?";
}

double rhs(const PainleveParams& params, const PainleveState& s) {
    switch (params.equation) {
        case Equation::P1:
            return 6.0 * s.x * s.x + s.t;
        case Equation::P2:
            if (s.t == 0.0) throw SingularInput("rhs: P2 evaluation at t = 0");
            return 2.0 * s.x * s.x * s.x + s.t * s.x - params.alpha;
        case Equation::P3:
            if (s.t == 0.0) throw SingularInput("rhs: P3 evaluation at t = 0");
            if (s.x == 0.0) throw SingularInput("rhs: P3 evaluation at x = 0");
            return s.x_t * s.x_t / s.x - s.x_t / s.t +
                   (params.alpha * s.x * s.x + params.beta) / s.t +
                   params.gamma * s.x * s.x * s.x + params.delta / s.x;
    }
    throw Error("rhs: unknown equation");
}

Linearization linearization(const PainleveParams& params, const PainleveState& s) {
    switch (params.equation) {
        case Equation::P1:
            return {12.0 * s.x, 0.0};
        case Equation::P2:
            return {6.0 * s.x * s.x + s.t, 0.0};
        case Equation::P3: {
            if (s.t == 0.0 || s.x == 0.0)
                throw SingularInput("linearization: P3 at singular point");
            const double w1 = -s.x_t * s.x_t / (s.x * s.x) + 2.0 * params.alpha * s.x / s.t +
                              3.0 * params.gamma * s.x * s.x - params.delta / (s.x * s.x);
            const double w2 = 2.0 * s.x_t / s.x - 1.0 / s.t;
            return {w1, w2};
        }
    }
    throw Error("linearization: unknown equation");
}

// ---- Trajectory -----------------------------------------------------------

Trajectory::Trajectory(PainleveParams params, std::vector<double> t, std::vector<double> x,
                       std::vector<double> xt, std::vector<double> xtt,
                       std::optional<double> pole)
    : params_(params),
      t_(std::move(t)),
      x_(std::move(x)),
      xt_(std::move(xt)),
      xtt_(std::move(xtt)),
      pole_flag_(pole) {
    if (t_.empty()) throw Error("Trajectory: no samples");
    increasing_ = t_.size() < 2 || t_.back() >= t_.front();
}

bool Trajectory::covers(double t_lo, double t_hi) const {
    const double lo = std::min(t_front(), t_back());
    const double hi = std::max(t_front(), t_back());
    return t_lo >= lo - 1e-12 && t_hi <= hi + 1e-12;
}

PainleveState Trajectory::at(double tq) const {
    const double lo = std::min(t_front(), t_back());
    const double hi = std::max(t_front(), t_back());
    if (tq < lo - 1e-12 || tq > hi + 1e-12)
        throw DomainError("Trajectory::at: query outside sampled range");
    tq = std::clamp(tq, lo, hi);
    if (t_.size() == 1) return {t_[0], x_[0], xt_[0]};

    // locate segment (samples monotone either way)
    std::size_t k;
    if (increasing_) {
        k = std::upper_bound(t_.begin(), t_.end(), tq) - t_.begin();
    } else {
        k = std::upper_bound(t_.begin(), t_.end(), tq, std::greater<double>()) - t_.begin();
    }
    if (k == 0) k = 1;
    if (k >= t_.size()) k = t_.size() - 1;
    const std::size_t i = k - 1;
    const double h = t_[k] - t_[i];
    const double s = (tq - t_[i]) / h;
    const double x = quintic_hermite(s, x_[i], h * xt_[i], h * h * xtt_[i], x_[k], h * xt_[k],
                                     h * h * xtt_[k]);
    const double xt = quintic_hermite_deriv(s, x_[i], h * xt_[i], h * h * xtt_[i], x_[k],
                                            h * xt_[k], h * h * xtt_[k]) /
                      h;
    return {tq, x, xt};
}

// ---- integration ----------------------------------------------------------

Trajectory integrate(const PainleveParams& params, const PainleveState& initial, double t_end,
                     const IntegrateOptions& opt) {
    // Validate the starting point against the equation's singular set.
    (void)rhs(params, initial);

    std::vector<double> ts, xs, xts, xtts;
    std::optional<double> pole;

    auto f = [&](double t, const std::array<double, 2>& y, std::array<double, 2>& dy) {
        dy[0] = y[1];
        dy[1] = rhs(params, {t, y[0], y[1]});
    };
    auto record = [&](double t, const std::array<double, 2>& y, const std::array<double, 2>& k) {
        ts.push_back(t);
        xs.push_back(y[0]);
        xts.push_back(y[1]);
        xtts.push_back(k[1]);
    };
    auto stop = [&](double t, const std::array<double, 2>& y) {
        const bool pole_hit = std::abs(y[0]) > opt.pole_threshold ||
                              std::abs(y[1]) > opt.pole_threshold;
        const bool p3_zero = params.equation == Equation::P3 && std::abs(y[0]) < 1e-8;
        if (pole_hit || p3_zero) {
            pole = t;
            return true;
        }
        return false;
    };

    std::array<double, 2> y = {initial.x, initial.x_t};
    OdeOptions oopt;
    oopt.rel_tol = opt.rel_tol;
    oopt.abs_tol = opt.abs_tol;
    oopt.max_step = opt.max_step;
    try {
        integrate_adaptive<2>(f, initial.t, y, t_end, oopt, record, stop);
    } catch (const StepSizeUnderflow&) {
        // Blow-up faster than the pole threshold catches: flag what we have.
        if (ts.size() < 2) throw;
        pole = ts.back();
    }
    return Trajectory(params, std::move(ts), std::move(xs), std::move(xts), std::move(xtts), pole);
}

Trajectory solve_range(const PainleveParams& params, const PainleveState& initial, double t_lo,
                       double t_hi, const IntegrateOptions& opt) {
    if (t_lo > t_hi) std::swap(t_lo, t_hi);
    if (initial.t < t_lo - 1e-12 || initial.t > t_hi + 1e-12)
        throw DomainError("solve_range: initial condition outside requested range");

    std::vector<double> ts, xs, xts, xtts;
    std::optional<double> pole;
    auto append = [&](const Trajectory& tr, bool reversed, bool skip_first) {
        const std::size_t n = tr.size();
        for (std::size_t m = 0; m < n; ++m) {
            const std::size_t i = reversed ? n - 1 - m : m;
            if (skip_first && m == 0) continue;
            ts.push_back(tr.t(i));
            xs.push_back(tr.x(i));
            xts.push_back(tr.x_t(i));
            xtts.push_back(tr.x_tt(i));
        }
        if (tr.pole_flag()) pole = tr.pole_flag();
    };

    if (initial.t > t_lo + 1e-14) {
        append(integrate(params, initial, t_lo, opt), /*reversed=*/true, false);
    } else {
        ts.push_back(initial.t);
        xs.push_back(initial.x);
        xts.push_back(initial.x_t);
        xtts.push_back(rhs(params, initial));
    }
    if (initial.t < t_hi - 1e-14) {
        append(integrate(params, initial, t_hi, opt), false, /*skip_first=*/true);
    }
    return Trajectory(params, std::move(ts), std::move(xs), std::move(xts), std::move(xtts), pole);
}

// ---- special P2 solutions --------------------------------------------------

PainleveState rational_p2(int n, double t) {
    if (n != 1 && n != 2) throw DomainError("rational_p2: n must be 1 or 2");
    if (std::abs(t) < 1e-12) throw SingularInput("rational_p2: t = 0");
    if (n == 1) return {t, 1.0 / t, -1.0 / (t * t)};
    const double t3 = t * t * t;
    if (std::abs(t3 + 4.0) < 1e-12) throw SingularInput("rational_p2: t^3 = -4");
    const double p = -2.0 * t3 + 4.0;
    const double q = t * (t3 + 4.0);
    const double dp = -6.0 * t * t;
    const double dq = 4.0 * t3 + 4.0;
    return {t, p / q, (dp * q - p * dq) / (q * q)};
}

double rational_p2_alpha(int n) {
    if (n != 1 && n != 2) throw DomainError("rational_p2_alpha: n must be 1 or 2");
    // Under the sign convention x_tt = 2x^3 + tx - alpha, the first rational
    // solution 1/t sits at alpha = 1, while the second branch as written
    // (-2(t^3-2)/(t(t^3+4))) sits at alpha = -2; its mirror image -x sits at
    // +2 (the equation is odd under (x, alpha) -> (-x, -alpha)).
    return n == 1 ? 1.0 : -2.0;
}

PainleveState airy_p2(int eps, double t) {
    if (eps != 1 && eps != -1) throw DomainError("airy_p2: eps must be +-1");
    const double k = std::pow(2.0, -1.0 / 3.0);
    const AiryValue a = airy(-k * t);
    if (std::abs(a.ai) < 1e-12) throw NearAiryZero("airy_p2: evaluation near an Airy zero");
    const double x = -eps * k * a.aip / a.ai;
    const double xt = -eps * (x * x + 0.5 * t);
    return {t, x, xt};
}

double airy_first_integral(int eps, const PainleveState& s) {
    return s.x_t + eps * (s.x * s.x + 0.5 * s.t);
}

} // namespace solsurf
