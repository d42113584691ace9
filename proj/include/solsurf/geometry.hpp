#ifndef SOLSURF_GEOMETRY_HPP
#define SOLSURF_GEOMETRY_HPP

#include <functional>
#include <utility>
#include <vector>

#include "solsurf/frame.hpp"
#include "solsurf/symmetry.hpp"

namespace solsurf {

struct FirstForm {
    double g11 = 0, g12 = 0, g22 = 0;
    double det() const { return g11 * g22 - g12 * g12; }
    double scale() const;  // max(|g11|, |g12|, |g22|)
};

// g_ij from the Killing form of the tangent representations; independent of
// the wave function by conjugation invariance.
FirstForm first_fundamental(const Mat2r& A, const Mat2r& B);

struct NormalResult {
    Mat2r n_rep{};  // [A, B], the Phi-free representation of the normal
    Mat2r n{};      // sigma-oriented unit normal (valid only when Regular)
    Classification cls = Classification::Regular;
    bool timelike = false;  // killing(n_rep, n_rep) < 0
};

// Normal construction. Throws DegenerateTangents when A, B fail to span a
// 2-plane. Classification is IsotropicNormal when the Killing square of the
// normal vanishes relative to its size; the global orientation is sigma = -1.
NormalResult normal(const Mat2r& A, const Mat2r& B);

struct SecondForm {
    double L11 = 0, L12 = 0, L22 = 0;
};

// L_ij = killing(rep of D_i D_j F, n) with
//   rep(D_t D_t F) = D_t A + [A, U1],   rep(D_l D_t F) = D_l A + [A, U2],
//   rep(D_t D_l F) = D_t B + [B, U1],   rep(D_l D_l F) = D_l B + [B, U2].
// Requires a Regular normal; throws AsymmetricMixedDerivatives when the two
// mixed representations disagree under the Killing pairing.
SecondForm second_fundamental(const LaxPair& pair, const LaxPoint& p_onshell,
                              const TangentFrame& f, const Mat2r& n);

// K = (L11 L22 - L12^2)/det g, H = (g22 L11 - 2 g12 L12 + g11 L22)/(2 det g).
// Throws DegenerateMetric when |det g| <= 1e-12 * scale^2.
std::pair<double, double> curvatures(const FirstForm& g, const SecondForm& L);

// Full per-point pipeline; fills the geometry fields of a SurfaceNode.
void compute_geometry(const LaxPair& pair, const LaxPoint& p_onshell, const TangentFrame& f,
                      SurfaceNode& node);

// Geometry over a whole surface grid for the given symmetry choice.
void compute_geometry_grid(const FrameGrid& frame, const LaxPair& pair,
                           const SymmetryChoice& choice, const RSolution* r_data,
                           SurfaceGrid& grid);

// Geometry straight from a host trajectory: the forms, curvatures and
// classification never involve the wave function, so no frame integration is
// needed. Excluded nodes are marked invalid.
SurfaceGrid geometry_grid_from_host(const LaxPair& pair, const Trajectory& host,
                                    const GridSpec& grid, const SymmetryChoice& choice,
                                    const RSolution* r_data = nullptr);

// H^2 - K at an arbitrary admissible point, for umbilic refinement.
std::function<double(double, double)> h2k_evaluator(const LaxPair& pair, const Trajectory& host,
                                                    const SymmetryChoice& choice,
                                                    const RSolution* r_data = nullptr);

// Umbilic extraction: sign changes of H^2 - K along grid lines, refined by
// bisection of the supplied point evaluator until |H^2 - K| < 1e-8. Points
// closer than half a cell are merged.
using UmbilicEvaluator = std::function<double(double t, double lambda)>;
std::vector<std::pair<double, double>> umbilic_locus(const SurfaceGrid& grid,
                                                     const UmbilicEvaluator& h2k);

} // namespace solsurf

#endif
