#ifndef SOLSURF_FRAME_HPP
#define SOLSURF_FRAME_HPP

#include <functional>
#include <vector>

#include "solsurf/algebra.hpp"
#include "solsurf/laxpair.hpp"
#include "solsurf/symmetry.hpp"

namespace solsurf {

struct Band {
    double lo = 0, hi = 0;  // closed interval to omit
    bool contains(double v) const { return v >= lo && v <= hi; }
};

// Rectangular (t, lambda) lattice with a base point and optional exclusion
// bands around singular values. The base point must coincide with a node.
struct GridSpec {
    double t_min = 0, t_max = 1;
    int n_t = 2;
    double lambda_min = 0, lambda_max = 1;
    int n_lambda = 2;
    double base_t = 0, base_lambda = 0;
    std::vector<Band> exclude_t, exclude_lambda;

    double t_at(int i) const {
        return n_t == 1 ? t_min : t_min + (t_max - t_min) * i / double(n_t - 1);
    }
    double lambda_at(int j) const {
        return n_lambda == 1 ? lambda_min
                             : lambda_min + (lambda_max - lambda_min) * j / double(n_lambda - 1);
    }
    bool t_excluded(double v) const {
        for (const auto& b : exclude_t)
            if (b.contains(v)) return true;
        return false;
    }
    bool lambda_excluded(double v) const {
        for (const auto& b : exclude_lambda)
            if (b.contains(v)) return true;
        return false;
    }
};

// Maximal contiguous ranges of primary node indices not hit by a band.
struct GridBlock {
    int i0, i1;  // inclusive t-node range
    int j0, j1;  // inclusive lambda-node range
};
std::vector<GridBlock> enumerate_blocks(const GridSpec& grid);

enum class PathOrder { TThenLambda, LambdaThenT };

// Wave-function samples on a refined lattice (primary nodes plus midpoints,
// so line quadratures have Simpson accuracy). Phi is normalized to the
// identity at the base node; x, x_t ride along the same integration so frame
// and host stay consistent to the integrator tolerance.
class FrameGrid {
  public:
    int n_t = 0, n_lambda = 0;       // primary counts
    int rn_t = 0, rn_lambda = 0;     // refined counts (2n-1)
    int base_ri = 0, base_rj = 0;    // refined indices of the base node
    std::vector<double> rt, rlambda; // refined axes
    std::vector<Mat2r> phi;          // row-major [ri * rn_lambda + rj]
    std::vector<double> x, xt;       // per refined t index
    double max_det_drift = 0;
    PainleveParams params;

    const Mat2r& phi_at(int ri, int rj) const { return phi[ri * rn_lambda + rj]; }
    double t_of(int ri) const { return rt[ri]; }
    double lambda_of(int rj) const { return rlambda[rj]; }
    LaxPoint point_at(int ri, int rj) const {
        return onshell_point(params, rt[ri], rlambda[rj], x[ri], xt[ri]);
    }
    int primary_ri(int i) const { return 2 * i; }
    int primary_rj(int j) const { return 2 * j; }
};

// Integrate D_t Phi = U1 Phi, D_l Phi = U2 Phi over the grid along L-shaped
// paths (base line first in one direction, then the transverse lines), with
// the Painleve state integrated jointly in t. The grid rectangle must be free
// of bands and singularities; the host supplies the state at the base time.
FrameGrid integrate_frame(const LaxPair& pair, const Trajectory& host, const GridSpec& grid,
                          double tol = 1e-10, PathOrder order = PathOrder::TThenLambda);

enum class Classification { Regular, DegenerateMetric, IsotropicNormal };

struct SurfaceNode {
    double t = 0, lambda = 0;
    bool valid = false;
    AlgebraVector F{};
    Mat2r A{}, B{};
    double g11 = 0, g12 = 0, g22 = 0, det_g = 0;
    double L11 = 0, L12 = 0, L22 = 0;
    double K = 0, H = 0, H2K = 0;
    Classification cls = Classification::Regular;
    bool has_second = false;  // L, K, H populated
    bool has_geometry = false;
    bool umbilic = false;
};

struct SurfaceGrid {
    int n_t = 0, n_lambda = 0;
    std::vector<double> ts, lambdas;
    std::vector<SurfaceNode> nodes;  // row-major [i * n_lambda + j]

    SurfaceNode& at(int i, int j) { return nodes[i * n_lambda + j]; }
    const SurfaceNode& at(int i, int j) const { return nodes[i * n_lambda + j]; }
};

// F = Phi^-1 (a1 r U1 + a2 s U2 + a3 t U1 + a4 l U2 + a5 D_t U1) Phi per node.
// Throws UnsupportedAlpha6 when choice.alpha6 != 0 (that surface has no
// closed form without the symmetry of the linear problem; use quadrature).
SurfaceGrid immersion_closed_form(const FrameGrid& frame, const LaxPair& pair,
                                  const SymmetryChoice& choice);

// Tangent matrices at a point, for path quadrature.
using TangentField = std::function<void(const LaxPoint&, Mat2r& A, Mat2r& B)>;

struct QuadratureReport {
    double max_plaquette = 0;   // largest loop integral of dF around a cell
    double error_estimate = 0;  // Richardson estimate of the quadrature error
};

// Accumulate dF = Phi^-1 A Phi dt + Phi^-1 B Phi dl along L-paths from the
// base node by composite Simpson over the refined lattice. F(base) = 0.
// Throws NonClosedForm when the plaquette circulation exceeds ten times the
// quadrature error estimate (the supplied field is then not a symmetry).
SurfaceGrid immersion_quadrature(const FrameGrid& frame, const TangentField& tangents,
                                 QuadratureReport* report = nullptr, int base_i = -1,
                                 int base_j = -1);

} // namespace solsurf

#endif
