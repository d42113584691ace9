#include "solsurf/frame.hpp"

#include <algorithm>
#include <cmath>

namespace solsurf {

std::vector<GridBlock> enumerate_blocks(const GridSpec& grid) {
    auto split = [](int n, const std::function<bool(int)>& excluded) {
        std::vector<std::pair<int, int>> runs;
        int start = -1;
        for (int i = 0; i < n; ++i) {
            if (!excluded(i)) {
                if (start < 0) start = i;
            } else if (start >= 0) {
                runs.emplace_back(start, i - 1);
                start = -1;
            }
        }
        if (start >= 0) runs.emplace_back(start, n - 1);
        return runs;
    };
    const auto t_runs = split(grid.n_t, [&](int i) { return grid.t_excluded(grid.t_at(i)); });
    const auto l_runs =
        split(grid.n_lambda, [&](int j) { return grid.lambda_excluded(grid.lambda_at(j)); });
    std::vector<GridBlock> blocks;
    for (const auto& tr : t_runs)
        for (const auto& lr : l_runs)
            if (tr.second > tr.first && lr.second > lr.first)
                blocks.push_back({tr.first, tr.second, lr.first, lr.second});
    return blocks;
}

namespace {

// Basis components of a matrix conjugated from a traceless one. The trace of
// a similar matrix is exactly zero in exact arithmetic; what remains here is
// roundoff amplified by the frame's condition number, so it is projected out
// rather than pushed through the strict decompose tolerance.
AlgebraVector decompose_similar(const Mat2r& m) {
    const double half_tr = 0.5 * (m.a11 + m.a22);
    return {m.a11 - half_tr, 0.5 * (m.a12 + m.a21), 0.5 * (m.a21 - m.a12)};
}

constexpr double kOverflow = 1e12;

void check_overflow(const Mat2r& phi) {
    if (max_abs(phi) > kOverflow)
        throw FrameOverflow(
            "integrate_frame: wave function exceeds representable growth; shrink the grid span");
}

std::vector<double> refined_axis(double lo, double hi, int n) {
    std::vector<double> out(2 * n - 1);
    for (int i = 0; i < n; ++i) out[2 * i] = (n == 1) ? lo : lo + (hi - lo) * i / double(n - 1);
    for (int i = 0; i + 1 < n; ++i) out[2 * i + 1] = 0.5 * (out[2 * i] + out[2 * i + 2]);
    return out;
}

// March the joint state (x, x_t, Phi) in t at fixed lambda, storing at the
// requested refined stations.
void march_t_line(const LaxPair& pair, double lambda, const std::vector<double>& stations,
                  int start_idx, int dir, std::array<double, 6> state, double tol,
                  const std::function<void(int, const std::array<double, 6>&)>& store) {
    auto f = [&](double t, const std::array<double, 6>& y, std::array<double, 6>& dy) {
        dy[0] = y[1];
        dy[1] = rhs(pair.params(), {t, y[0], y[1]});
        const Mat2r u = lax_matrices<double>(pair.params(), t, lambda, y[0], y[1]).u1;
        const Mat2r p = {y[2], y[3], y[4], y[5]};
        const Mat2r dp = u * p;
        dy[2] = dp.a11;
        dy[3] = dp.a12;
        dy[4] = dp.a21;
        dy[5] = dp.a22;
    };
    OdeOptions opt;
    opt.rel_tol = tol;
    opt.abs_tol = tol * 1e-2;
    int idx = start_idx;
    while (true) {
        const int next = idx + dir;
        if (next < 0 || next >= static_cast<int>(stations.size())) break;
        integrate_adaptive<6>(f, stations[idx], state, stations[next], opt);
        check_overflow({state[2], state[3], state[4], state[5]});
        store(next, state);
        idx = next;
    }
}

void march_lambda_line(const LaxPair& pair, double t, double x, double xt,
                       const std::vector<double>& stations, int start_idx, int dir,
                       Mat2r phi, double tol,
                       const std::function<void(int, const Mat2r&)>& store) {
    auto f = [&](double l, const std::array<double, 4>& y, std::array<double, 4>& dy) {
        const Mat2r u = lax_matrices<double>(pair.params(), t, l, x, xt).u2;
        const Mat2r p = {y[0], y[1], y[2], y[3]};
        const Mat2r dp = u * p;
        dy = {dp.a11, dp.a12, dp.a21, dp.a22};
    };
    OdeOptions opt;
    opt.rel_tol = tol;
    opt.abs_tol = tol * 1e-2;
    std::array<double, 4> state = {phi.a11, phi.a12, phi.a21, phi.a22};
    int idx = start_idx;
    while (true) {
        const int next = idx + dir;
        if (next < 0 || next >= static_cast<int>(stations.size())) break;
        integrate_adaptive<4>(f, stations[idx], state, stations[next], opt);
        const Mat2r m = {state[0], state[1], state[2], state[3]};
        check_overflow(m);
        store(next, m);
        idx = next;
    }
}

} // namespace

FrameGrid integrate_frame(const LaxPair& pair, const Trajectory& host, const GridSpec& grid,
                          double tol, PathOrder order) {
    if (grid.n_t < 2 || grid.n_lambda < 2)
        throw DomainError("integrate_frame: need at least a 2x2 grid");
    if (!grid.exclude_t.empty() || !grid.exclude_lambda.empty())
        throw DomainError("integrate_frame: grid must be a contiguous block (split on bands first)");
    if (!host.covers(grid.t_min, grid.t_max))
        throw DomainError("integrate_frame: host trajectory does not cover the grid t-range");
    if (host.pole_flag() && *host.pole_flag() >= grid.t_min && *host.pole_flag() <= grid.t_max)
        throw SingularInput("integrate_frame: host has a pole inside the grid rectangle");

    FrameGrid fg;
    fg.params = pair.params();
    fg.n_t = grid.n_t;
    fg.n_lambda = grid.n_lambda;
    fg.rn_t = 2 * grid.n_t - 1;
    fg.rn_lambda = 2 * grid.n_lambda - 1;
    fg.rt = refined_axis(grid.t_min, grid.t_max, grid.n_t);
    fg.rlambda = refined_axis(grid.lambda_min, grid.lambda_max, grid.n_lambda);
    fg.phi.assign(fg.rn_t * fg.rn_lambda, Mat2r::zero());
    fg.x.assign(fg.rn_t, 0.0);
    fg.xt.assign(fg.rn_t, 0.0);

    // Locate the base node.
    const double dt_node = (grid.t_max - grid.t_min) / (grid.n_t - 1);
    const double dl_node = (grid.lambda_max - grid.lambda_min) / (grid.n_lambda - 1);
    int bi = static_cast<int>(std::lround((grid.base_t - grid.t_min) / dt_node));
    int bj = static_cast<int>(std::lround((grid.base_lambda - grid.lambda_min) / dl_node));
    bi = std::clamp(bi, 0, grid.n_t - 1);
    bj = std::clamp(bj, 0, grid.n_lambda - 1);
    if (std::abs(grid.t_at(bi) - grid.base_t) > 1e-9 * std::max(1.0, std::abs(dt_node)) ||
        std::abs(grid.lambda_at(bj) - grid.base_lambda) > 1e-9 * std::max(1.0, std::abs(dl_node)))
        throw DomainError("integrate_frame: base point must coincide with a grid node");
    fg.base_ri = 2 * bi;
    fg.base_rj = 2 * bj;

    // Every lattice point must clear the (t, lambda) singular sets; the state
    // coordinates are placeholders here, x-singularities surface during
    // integration.
    for (int ri = 0; ri < fg.rn_t; ++ri)
        for (int rj = 0; rj < fg.rn_lambda; ++rj)
            pair.require_admissible({fg.rt[ri], fg.rlambda[rj], 1.0, 0.0, 0.0});

    const PainleveState base_state = host.at(grid.t_at(bi));
    auto set_phi = [&](int ri, int rj, const Mat2r& m) { fg.phi[ri * fg.rn_lambda + rj] = m; };

    if (order == PathOrder::TThenLambda) {
        // Base t-line at base lambda, joint with the Painleve state.
        const double l0 = fg.rlambda[fg.base_rj];
        fg.x[fg.base_ri] = base_state.x;
        fg.xt[fg.base_ri] = base_state.x_t;
        set_phi(fg.base_ri, fg.base_rj, Mat2r::identity());
        std::array<double, 6> s0 = {base_state.x, base_state.x_t, 1, 0, 0, 1};
        auto store = [&](int ri, const std::array<double, 6>& s) {
            fg.x[ri] = s[0];
            fg.xt[ri] = s[1];
            set_phi(ri, fg.base_rj, {s[2], s[3], s[4], s[5]});
        };
        march_t_line(pair, l0, fg.rt, fg.base_ri, +1, s0, tol, store);
        march_t_line(pair, l0, fg.rt, fg.base_ri, -1, s0, tol, store);
        // Lambda lines from every refined t station.
        for (int ri = 0; ri < fg.rn_t; ++ri) {
            auto storel = [&](int rj, const Mat2r& m) { set_phi(ri, rj, m); };
            march_lambda_line(pair, fg.rt[ri], fg.x[ri], fg.xt[ri], fg.rlambda, fg.base_rj, +1,
                              fg.phi_at(ri, fg.base_rj), tol, storel);
            march_lambda_line(pair, fg.rt[ri], fg.x[ri], fg.xt[ri], fg.rlambda, fg.base_rj, -1,
                              fg.phi_at(ri, fg.base_rj), tol, storel);
        }
    } else {
        // Base lambda-line at base t first, then t-lines per lambda station.
        const double t0 = fg.rt[fg.base_ri];
        set_phi(fg.base_ri, fg.base_rj, Mat2r::identity());
        auto storel = [&](int rj, const Mat2r& m) { set_phi(fg.base_ri, rj, m); };
        march_lambda_line(pair, t0, base_state.x, base_state.x_t, fg.rlambda, fg.base_rj, +1,
                          Mat2r::identity(), tol, storel);
        march_lambda_line(pair, t0, base_state.x, base_state.x_t, fg.rlambda, fg.base_rj, -1,
                          Mat2r::identity(), tol, storel);
        for (int rj = 0; rj < fg.rn_lambda; ++rj) {
            auto store = [&](int ri, const std::array<double, 6>& s) {
                fg.x[ri] = s[0];
                fg.xt[ri] = s[1];
                set_phi(ri, rj, {s[2], s[3], s[4], s[5]});
            };
            const Mat2r p0 = fg.phi_at(fg.base_ri, rj);
            std::array<double, 6> s0 = {base_state.x, base_state.x_t, p0.a11, p0.a12, p0.a21,
                                        p0.a22};
            march_t_line(pair, fg.rlambda[rj], fg.rt, fg.base_ri, +1, s0, tol, store);
            march_t_line(pair, fg.rlambda[rj], fg.rt, fg.base_ri, -1, s0, tol, store);
        }
    }

    double drift = 0;
    for (const auto& m : fg.phi) drift = std::max(drift, std::abs(m.det() - 1.0));
    fg.max_det_drift = drift;
    return fg;
}

namespace {

SurfaceGrid empty_surface(const FrameGrid& frame) {
    SurfaceGrid g;
    g.n_t = frame.n_t;
    g.n_lambda = frame.n_lambda;
    g.ts.resize(frame.n_t);
    g.lambdas.resize(frame.n_lambda);
    for (int i = 0; i < frame.n_t; ++i) g.ts[i] = frame.rt[2 * i];
    for (int j = 0; j < frame.n_lambda; ++j) g.lambdas[j] = frame.rlambda[2 * j];
    g.nodes.assign(frame.n_t * frame.n_lambda, SurfaceNode{});
    for (int i = 0; i < g.n_t; ++i)
        for (int j = 0; j < g.n_lambda; ++j) {
            auto& n = g.at(i, j);
            n.t = g.ts[i];
            n.lambda = g.lambdas[j];
            n.valid = true;
        }
    return g;
}

} // namespace

SurfaceGrid immersion_closed_form(const FrameGrid& frame, const LaxPair& pair,
                                  const SymmetryChoice& choice) {
    if (choice.alpha6 != 0.0)
        throw UnsupportedAlpha6("immersion_closed_form: the alpha6 surface has no closed form");
    if (!choice.any_nonzero()) throw DomainError("immersion_closed_form: zero combination");

    SurfaceGrid g = empty_surface(frame);
    for (int i = 0; i < g.n_t; ++i)
        for (int j = 0; j < g.n_lambda; ++j) {
            const int ri = 2 * i, rj = 2 * j;
            const LaxPoint p = frame.point_at(ri, rj);
            const auto m = lax_matrices<double>(pair.params(), p.t, p.lambda, p.x, p.x_t);
            Mat2r core = Mat2r::zero();
            if (choice.alpha1 != 0) core += m.u1 * (choice.alpha1 * choice.r.f(p.t));
            if (choice.alpha2 != 0) core += m.u2 * (choice.alpha2 * choice.s.f(p.lambda));
            if (choice.alpha3 != 0) core += m.u1 * (choice.alpha3 * p.t);
            if (choice.alpha4 != 0) core += m.u2 * (choice.alpha4 * p.lambda);
            if (choice.alpha5 != 0) core += pair.dt_u1(p) * choice.alpha5;
            const Mat2r phi = frame.phi_at(ri, rj);
            const Mat2r conj = inverse(phi) * core * phi;
            auto& n = g.at(i, j);
            n.F = decompose_similar(conj);
        }
    return g;
}

SurfaceGrid immersion_quadrature(const FrameGrid& frame, const TangentField& tangents,
                                 QuadratureReport* report, int base_i, int base_j) {
    SurfaceGrid g = empty_surface(frame);
    if (base_i < 0) base_i = frame.base_ri / 2;
    if (base_j < 0) base_j = frame.base_rj / 2;
    if (base_i >= frame.n_t || base_j >= frame.n_lambda)
        throw DomainError("immersion_quadrature: base node outside the grid");

    // Conjugated tangent components at every refined node.
    const int rn_t = frame.rn_t, rn_l = frame.rn_lambda;
    std::vector<AlgebraVector> ca(rn_t * rn_l), cb(rn_t * rn_l);
    double field_scale = 0;
    for (int ri = 0; ri < rn_t; ++ri)
        for (int rj = 0; rj < rn_l; ++rj) {
            const LaxPoint p = frame.point_at(ri, rj);
            Mat2r A, B;
            tangents(p, A, B);
            const Mat2r phi = frame.phi_at(ri, rj);
            const Mat2r phi_inv = inverse(phi);
            ca[ri * rn_l + rj] = decompose_similar(phi_inv * A * phi);
            cb[ri * rn_l + rj] = decompose_similar(phi_inv * B * phi);
            field_scale = std::max(field_scale, std::max(ca[ri * rn_l + rj].max_abs(),
                                                         cb[ri * rn_l + rj].max_abs()));
        }

    // Simpson over one primary interval of a refined line; also returns the
    // trapezoid value for a Richardson-style error estimate.
    auto simpson_t = [&](int i, int rj, AlgebraVector& s, AlgebraVector& trap) {
        const double h = frame.rt[2 * i + 2] - frame.rt[2 * i];
        const AlgebraVector f0 = ca[(2 * i) * rn_l + rj];
        const AlgebraVector fm = ca[(2 * i + 1) * rn_l + rj];
        const AlgebraVector f1 = ca[(2 * i + 2) * rn_l + rj];
        s = (f0 + fm * 4.0 + f1) * (h / 6.0);
        trap = (f0 + f1) * (h / 2.0);
    };
    auto simpson_l = [&](int ri, int j, AlgebraVector& s, AlgebraVector& trap) {
        const double h = frame.rlambda[2 * j + 2] - frame.rlambda[2 * j];
        const AlgebraVector f0 = cb[ri * rn_l + 2 * j];
        const AlgebraVector fm = cb[ri * rn_l + 2 * j + 1];
        const AlgebraVector f1 = cb[ri * rn_l + 2 * j + 2];
        s = (f0 + fm * 4.0 + f1) * (h / 6.0);
        trap = (f0 + f1) * (h / 2.0);
    };

    // Plaquette circulation and quadrature error estimate.
    double max_circ = 0, max_est = 0;
    for (int i = 0; i + 1 < g.n_t; ++i)
        for (int j = 0; j + 1 < g.n_lambda; ++j) {
            AlgebraVector sb, se, st2, sw, tb, te, tt, tw;
            simpson_t(i, 2 * j, sb, tb);       // bottom, left to right
            simpson_l(2 * i + 2, j, se, te);   // right edge, upward
            simpson_t(i, 2 * j + 2, st2, tt);  // top
            simpson_l(2 * i, j, sw, tw);       // left edge
            const AlgebraVector circ = sb + se - st2 - sw;
            max_circ = std::max(max_circ, circ.max_abs());
            const double est = ((sb - tb).max_abs() + (se - te).max_abs() +
                                (st2 - tt).max_abs() + (sw - tw).max_abs()) /
                               15.0;
            max_est = std::max(max_est, est);
        }
    const double est_floor = 1e-12 * std::max(1.0, field_scale);
    if (report) {
        report->max_plaquette = max_circ;
        report->error_estimate = std::max(max_est, est_floor);
    }
    if (max_circ > 10.0 * std::max(max_est, est_floor))
        throw NonClosedForm("immersion_quadrature: plaquette circulation exceeds the quadrature "
                            "error estimate; the tangent field is not a symmetry");

    // Accumulate F along L-paths: base row in t, then columns in lambda.
    g.at(base_i, base_j).F = {0, 0, 0};
    for (int i = base_i; i + 1 < g.n_t; ++i) {
        AlgebraVector s, tr;
        simpson_t(i, 2 * base_j, s, tr);
        g.at(i + 1, base_j).F = g.at(i, base_j).F + s;
    }
    for (int i = base_i; i > 0; --i) {
        AlgebraVector s, tr;
        simpson_t(i - 1, 2 * base_j, s, tr);
        g.at(i - 1, base_j).F = g.at(i, base_j).F - s;
    }
    for (int i = 0; i < g.n_t; ++i) {
        for (int j = base_j; j + 1 < g.n_lambda; ++j) {
            AlgebraVector s, tr;
            simpson_l(2 * i, j, s, tr);
            g.at(i, j + 1).F = g.at(i, j).F + s;
        }
        for (int j = base_j; j > 0; --j) {
            AlgebraVector s, tr;
            simpson_l(2 * i, j - 1, s, tr);
            g.at(i, j - 1).F = g.at(i, j).F - s;
        }
    }
    return g;
}

} // namespace solsurf
