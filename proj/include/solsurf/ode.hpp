#ifndef SOLSURF_ODE_HPP
#define SOLSURF_ODE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>

#include "solsurf/errors.hpp"

namespace solsurf {

struct OdeOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = std::numeric_limits<double>::infinity();
    double initial_step = 0.0;  // 0: pick automatically
};

struct OdeOutcome {
    bool reached_end = true;
    double t_stop = 0.0;  // last accepted time (== t_end when reached_end)
};

namespace detail_rk {
// Dormand-Prince 5(4) tableau, FSAL.
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - bhat, used for the embedded 4th-order error estimate.
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
} // namespace detail_rk

// One fixed step of the 5th-order scheme; also returns the embedded error
// estimate in `err` and the end-point derivative in `k_last` (FSAL).
template <int N, class F>
void rk45_step(F&& rhs, double t, const std::array<double, N>& y, double h,
               const std::array<double, N>& k1, std::array<double, N>& y_out,
               std::array<double, N>& err, std::array<double, N>& k_last) {
    using namespace detail_rk;
    std::array<double, N> k2, k3, k4, k5, k6, tmp;
    for (int i = 0; i < N; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    rhs(t + c2 * h, tmp, k2);
    for (int i = 0; i < N; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    rhs(t + c3 * h, tmp, k3);
    for (int i = 0; i < N; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    rhs(t + c4 * h, tmp, k4);
    for (int i = 0; i < N; ++i)
        tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs(t + c5 * h, tmp, k5);
    for (int i = 0; i < N; ++i)
        tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    rhs(t + h, tmp, k6);
    for (int i = 0; i < N; ++i)
        y_out[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    rhs(t + h, y_out, k_last);
    for (int i = 0; i < N; ++i)
        err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                      e7 * k_last[i]);
}

// Convenience fixed-step advance (no error control), used by order studies.
template <int N, class F>
void rk5_fixed_step(F&& rhs, double t, std::array<double, N>& y, double h) {
    std::array<double, N> k1, y_out, err, k_last;
    rhs(t, y, k1);
    rk45_step<N>(rhs, t, y, h, k1, y_out, err, k_last);
    y = y_out;
}

// Adaptive integration from t0 to t_end (either direction). `on_step` is
// invoked after every accepted step with (t, y, k) where k is the derivative
// at (t, y); it is also invoked once for the initial point. `stop` may end the
// integration early; the outcome then reports the last accepted t.
// Throws StepSizeUnderflow if the controller cannot make progress.
template <int N, class F>
OdeOutcome integrate_adaptive(
    F&& rhs, double t0, std::array<double, N>& y, double t_end, const OdeOptions& opt = {},
    const std::function<void(double, const std::array<double, N>&, const std::array<double, N>&)>&
        on_step = nullptr,
    const std::function<bool(double, const std::array<double, N>&)>& stop = nullptr) {
    const double dir = (t_end >= t0) ? 1.0 : -1.0;
    double t = t0;
    std::array<double, N> k1;
    rhs(t, y, k1);
    if (on_step) on_step(t, y, k1);
    if (t_end == t0) return {true, t};

    double span = std::abs(t_end - t0);
    double h = (opt.initial_step > 0.0) ? opt.initial_step : std::min(1e-2 * span, opt.max_step);
    h = std::min(h, std::min(span, opt.max_step));
    double err_prev = 1.0;

    std::array<double, N> y_new, err, k_last;
    while (dir * (t_end - t) > 0.0) {
        h = std::min(h, std::min(std::abs(t_end - t), opt.max_step));
        if (h < 1e-13 * std::max(1.0, std::abs(t)))
            throw StepSizeUnderflow("integrate_adaptive: step size underflow");
        rk45_step<N>(rhs, t, y, dir * h, k1, y_new, err, k_last);

        double err_norm = 0.0;
        for (int i = 0; i < N; ++i) {
            const double scale =
                opt.abs_tol + opt.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
            const double e = err[i] / scale;
            err_norm += e * e;
        }
        err_norm = std::sqrt(err_norm / N);

        if (err_norm <= 1.0 || !std::isfinite(err_norm)) {
            if (!std::isfinite(err_norm)) {
                // A non-finite stage value: retry with a smaller step.
                h *= 0.25;
                continue;
            }
            t += dir * h;
            y = y_new;
            k1 = k_last;  // FSAL
            if (on_step) on_step(t, y, k1);
            if (stop && stop(t, y)) return {false, t};
            // PI controller (Hairer-style exponents for a 5th-order pair).
            const double fac = 0.9 * std::pow(std::max(err_norm, 1e-10), -0.7 / 5.0) *
                               std::pow(err_prev, 0.4 / 5.0);
            err_prev = std::max(err_norm, 1e-10);
            h *= std::clamp(fac, 0.2, 5.0);
        } else {
            h *= std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 1.0);
        }
    }
    return {true, t};
}

} // namespace solsurf

#endif
