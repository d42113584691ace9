#include "solsurf/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace solsurf {

double FirstForm::scale() const {
    return std::max(std::abs(g11), std::max(std::abs(g12), std::abs(g22)));
}

FirstForm first_fundamental(const Mat2r& A, const Mat2r& B) {
    return {killing(A, A), killing(A, B), killing(B, B)};
}

namespace {

struct Vec3 {
    double x, y, z;
};

Vec3 components(const Mat2r& m) {
    const AlgebraVector v = decompose(m);
    return {v.c1, v.c2, v.c3};
}

double euclid2(const Vec3& v) { return v.x * v.x + v.y * v.y + v.z * v.z; }

double cross_norm2(const Vec3& a, const Vec3& b) {
    const double cx = a.y * b.z - a.z * b.y;
    const double cy = a.z * b.x - a.x * b.z;
    const double cz = a.x * b.y - a.y * b.x;
    return cx * cx + cy * cy + cz * cz;
}

} // namespace

NormalResult normal(const Mat2r& A, const Mat2r& B) {
    const Vec3 av = components(A), bv = components(B);
    const double prod = euclid2(av) * euclid2(bv);
    if (cross_norm2(av, bv) <= 1e-24 * std::max(1e-300, prod))
        throw DegenerateTangents("normal: tangent representations are linearly dependent");

    NormalResult out;
    out.n_rep = commutator(A, B);
    const double q = killing(out.n_rep, out.n_rep);
    const double nscale = euclid2(components(out.n_rep));
    if (std::abs(q) < 1e-10 * std::max(1e-300, nscale)) {
        out.cls = Classification::IsotropicNormal;
        return out;
    }
    out.timelike = q < 0;
    out.n = out.n_rep * (-1.0 / std::sqrt(std::abs(q)));  // sigma = -1
    return out;
}

SecondForm second_fundamental(const LaxPair& pair, const LaxPoint& p, const TangentFrame& f,
                              const Mat2r& n) {
    const auto m = lax_matrices<double>(pair.params(), p.t, p.lambda, p.x, p.x_t);
    const Mat2r rep_tt = f.dA_dt + commutator(f.A, m.u1);
    const Mat2r rep_lt = f.dA_dl + commutator(f.A, m.u2);
    const Mat2r rep_tl = f.dB_dt + commutator(f.B, m.u1);
    const Mat2r rep_ll = f.dB_dl + commutator(f.B, m.u2);

    const double l12_a = killing(rep_lt, n);
    const double l12_b = killing(rep_tl, n);
    const double scale = std::max({1.0, std::abs(l12_a), std::abs(l12_b)});
    if (std::abs(l12_a - l12_b) > 1e-8 * scale)
        throw AsymmetricMixedDerivatives(
            "second_fundamental: mixed derivative representations disagree");
    return {killing(rep_tt, n), 0.5 * (l12_a + l12_b), killing(rep_ll, n)};
}

std::pair<double, double> curvatures(const FirstForm& g, const SecondForm& L) {
    const double det = g.det();
    const double s = g.scale();
    if (std::abs(det) <= 1e-12 * std::max(1e-300, s * s))
        throw DegenerateMetric("curvatures: metric determinant vanishes");
    const double K = (L.L11 * L.L22 - L.L12 * L.L12) / det;
    const double H = (g.g22 * L.L11 - 2.0 * g.g12 * L.L12 + g.g11 * L.L22) / (2.0 * det);
    return {K, H};
}

void compute_geometry(const LaxPair& pair, const LaxPoint& p, const TangentFrame& f,
                      SurfaceNode& node) {
    node.A = f.A;
    node.B = f.B;
    const FirstForm g = first_fundamental(f.A, f.B);
    node.g11 = g.g11;
    node.g12 = g.g12;
    node.g22 = g.g22;
    node.det_g = g.det();
    node.has_geometry = true;
    node.has_second = false;

    const double s2 = std::max(1e-300, g.scale() * g.scale());
    if (std::abs(node.det_g) <= 1e-12 * s2) {
        node.cls = Classification::DegenerateMetric;
        return;
    }
    NormalResult nr = normal(f.A, f.B);
    if (nr.cls == Classification::IsotropicNormal) {
        node.cls = Classification::IsotropicNormal;
        return;
    }
    node.cls = Classification::Regular;
    const SecondForm L = second_fundamental(pair, p, f, nr.n);
    node.L11 = L.L11;
    node.L12 = L.L12;
    node.L22 = L.L22;
    const auto [K, H] = curvatures(g, L);
    node.K = K;
    node.H = H;
    node.H2K = H * H - K;
    node.has_second = true;
    node.umbilic = std::abs(node.H2K) < 1e-8;
}

void compute_geometry_grid(const FrameGrid& frame, const LaxPair& pair,
                           const SymmetryChoice& choice, const RSolution* r_data,
                           SurfaceGrid& grid) {
    for (int i = 0; i < grid.n_t; ++i)
        for (int j = 0; j < grid.n_lambda; ++j) {
            SurfaceNode& node = grid.at(i, j);
            if (!node.valid) continue;
            const LaxPoint p = frame.point_at(2 * i, 2 * j);
            const TangentFrame f = build_AB(pair, choice, p, r_data);
            compute_geometry(pair, p, f, node);
        }
}

SurfaceGrid geometry_grid_from_host(const LaxPair& pair, const Trajectory& host,
                                    const GridSpec& grid, const SymmetryChoice& choice,
                                    const RSolution* r_data) {
    SurfaceGrid g;
    g.n_t = grid.n_t;
    g.n_lambda = grid.n_lambda;
    g.ts.resize(grid.n_t);
    g.lambdas.resize(grid.n_lambda);
    for (int i = 0; i < grid.n_t; ++i) g.ts[i] = grid.t_at(i);
    for (int j = 0; j < grid.n_lambda; ++j) g.lambdas[j] = grid.lambda_at(j);
    g.nodes.assign(grid.n_t * grid.n_lambda, SurfaceNode{});
    for (int i = 0; i < g.n_t; ++i)
        for (int j = 0; j < g.n_lambda; ++j) {
            SurfaceNode& node = g.at(i, j);
            node.t = g.ts[i];
            node.lambda = g.lambdas[j];
            node.valid = !grid.t_excluded(node.t) && !grid.lambda_excluded(node.lambda);
            if (!node.valid) continue;
            const PainleveState s = host.at(node.t);
            const LaxPoint p = onshell_point(pair.params(), s.t, node.lambda, s.x, s.x_t);
            const TangentFrame f = build_AB(pair, choice, p, r_data);
            compute_geometry(pair, p, f, node);
        }
    return g;
}

std::function<double(double, double)> h2k_evaluator(const LaxPair& pair, const Trajectory& host,
                                                    const SymmetryChoice& choice,
                                                    const RSolution* r_data) {
    return [&pair, &host, choice, r_data](double t, double lambda) {
        const PainleveState s = host.at(t);
        const LaxPoint p = onshell_point(pair.params(), s.t, lambda, s.x, s.x_t);
        const TangentFrame f = build_AB(pair, choice, p, r_data);
        SurfaceNode node;
        compute_geometry(pair, p, f, node);
        if (!node.has_second) throw DegenerateMetric("h2k_evaluator: no curvature here");
        return node.H2K;
    };
}

std::vector<std::pair<double, double>> umbilic_locus(const SurfaceGrid& grid,
                                                     const UmbilicEvaluator& h2k) {
    std::vector<std::pair<double, double>> found;
    const double cell_t = grid.n_t > 1 ? std::abs(grid.ts[1] - grid.ts[0]) : 1.0;
    const double cell_l = grid.n_lambda > 1 ? std::abs(grid.lambdas[1] - grid.lambdas[0]) : 1.0;

    auto refine = [&](double a, double b, double fa, double fb, bool along_t, double other) {
        for (int iter = 0; iter < 200; ++iter) {
            const double mid = 0.5 * (a + b);
            const double fm = along_t ? h2k(mid, other) : h2k(other, mid);
            if (std::abs(fm) < 1e-8 || std::abs(b - a) < 1e-14) {
                if (std::abs(fm) < 1e-8)
                    found.emplace_back(along_t ? mid : other, along_t ? other : mid);
                return;
            }
            if ((fa < 0) != (fm < 0)) {
                b = mid;
                fb = fm;
            } else {
                a = mid;
                fa = fm;
            }
        }
        (void)fb;
    };

    auto node_h2k = [&](int i, int j, double& v) {
        const SurfaceNode& n = grid.at(i, j);
        if (!n.valid || !n.has_second) return false;
        v = n.H2K;
        return true;
    };

    for (int i = 0; i < grid.n_t; ++i)
        for (int j = 0; j + 1 < grid.n_lambda; ++j) {
            double f0, f1;
            if (!node_h2k(i, j, f0) || !node_h2k(i, j + 1, f1)) continue;
            if ((f0 < 0) != (f1 < 0))
                refine(grid.lambdas[j], grid.lambdas[j + 1], f0, f1, false, grid.ts[i]);
        }
    for (int j = 0; j < grid.n_lambda; ++j)
        for (int i = 0; i + 1 < grid.n_t; ++i) {
            double f0, f1;
            if (!node_h2k(i, j, f0) || !node_h2k(i + 1, j, f1)) continue;
            if ((f0 < 0) != (f1 < 0))
                refine(grid.ts[i], grid.ts[i + 1], f0, f1, true, grid.lambdas[j]);
        }

    // Merge points closer than half a cell.
    std::vector<std::pair<double, double>> merged;
    for (const auto& p : found) {
        bool dup = false;
        for (const auto& q : merged)
            if (std::abs(p.first - q.first) < 0.5 * cell_t &&
                std::abs(p.second - q.second) < 0.5 * cell_l) {
                dup = true;
                break;
            }
        if (!dup) merged.push_back(p);
    }
    return merged;
}

} // namespace solsurf
