#ifndef SOLSURF_SYMMETRY_HPP
#define SOLSURF_SYMMETRY_HPP

#include <functional>
#include <optional>
#include <vector>

#include "solsurf/laxpair.hpp"

namespace solsurf {

// Smooth scalar weight with derivatives (second derivative is used when the
// induced surfaces are pushed through the curvature pipeline).
struct ScalarFn {
    std::function<double(double)> f;
    std::function<double(double)> df;
    std::function<double(double)> d2f;

    static ScalarFn one();
    static ScalarFn polynomial(std::vector<double> coeffs);  // constant term first
};

// Weights alpha1..alpha6 of the six-term tangent combination, plus the
// optional r(t) weight on the t-translation family and s(lambda) on the
// spectral / Sym-Tafel family (defaults r = s = 1).
struct SymmetryChoice {
    double alpha1 = 0, alpha2 = 0, alpha3 = 0, alpha4 = 0, alpha5 = 0, alpha6 = 0;
    ScalarFn r = ScalarFn::one();
    ScalarFn s = ScalarFn::one();

    bool any_nonzero() const {
        return alpha1 != 0 || alpha2 != 0 || alpha3 != 0 || alpha4 != 0 || alpha5 != 0 ||
               alpha6 != 0;
    }
};

// A generalized-symmetry characteristic R of the integrable equation,
// evaluable as (R, D_t R) along a host solution. Closed-form kinds cover the
// special P2 solutions and the P3 point symmetries; Numeric carries samples
// of the integrated determining equation.
class RSolution {
  public:
    enum class Kind { Numeric, BesselAlpha1, AiryEps, P3ScaleR1, P3ScaleR2 };

    struct Value {
        double r = 0, rt = 0;
    };

    static RSolution bessel_alpha1();
    static RSolution airy(int eps);
    // skip_regime_check evaluates the scale characteristic outside its
    // admissible parameter set; the result then fails the determining
    // equation, which downstream quadrature reports as NonClosedForm.
    static RSolution p3_scale_r1(const PainleveParams& params, bool skip_regime_check = false);
    static RSolution p3_scale_r2(const PainleveParams& params, bool skip_regime_check = false);
    static RSolution numeric(PainleveParams params, std::vector<double> t, std::vector<double> r,
                             std::vector<double> rt, std::vector<double> rtt);

    Kind kind() const { return kind_; }
    std::size_t size() const { return t_.size(); }
    double t(std::size_t i) const { return t_[i]; }
    double r(std::size_t i) const { return r_[i]; }
    double r_t(std::size_t i) const { return rt_[i]; }

    // (R, D_t R) at the host state; the state must be on the host solution.
    Value eval(const PainleveState& host_state) const;

  private:
    explicit RSolution(Kind k) : kind_(k) {}
    Kind kind_;
    int eps_ = 1;
    bool skip_regime_ = false;
    PainleveParams params_{};  // P3 scale kinds / numeric
    std::vector<double> t_, r_, rt_, rtt_;
};

// Closed forms behind the special characteristics.
RSolution::Value bessel_r_alpha1(double t);
RSolution::Value airy_r(double t);

// P3 point symmetries R1 = x + t x_t (requires beta = delta = 0) and
// R2 = x - t x_t (requires alpha = gamma = 0); D_t R uses the on-shell x_tt.
// Throws WrongParameterRegime outside the admissible parameter set.
enum class P3Point { R1, R2 };
RSolution::Value p3_point_symmetry(const PainleveParams& params, P3Point which,
                                   const PainleveState& state);

// Tangent matrices of an immersion together with their first total
// derivatives; enough for the determining equation and the full second
// fundamental form.
struct TangentFrame {
    Mat2r A, B;
    Mat2r dA_dt, dA_dl;
    Mat2r dB_dt, dB_dl;
};

// The six-term combination
//   A = a1 D_t(r U1) + a2 s D_l U1 + a3 (t D_t U1 + U1) + a4 l D_l U1
//       + a5 (D_t^2 U1 + [D_t U1, U1]) + a6 pr_wR U1
//   B = a1 r D_t U2 + a2 D_l(s U2) + a3 t D_t U2 + a4 (l D_l U2 + U2)
//       + a5 (D_t^2 U2 + [D_t U2, U1]) + a6 pr_wR U2
// evaluated on-shell (x_tt and higher substituted from the equation).
// Throws MissingRSolution when alpha6 != 0 without r_data.
TangentFrame build_AB(const LaxPair& pair, const SymmetryChoice& choice, const LaxPoint& p,
                      const RSolution* r_data = nullptr);

// Gauge function S[u] supplied as a jet-evaluable matrix of (t, lambda, x, x_t).
using GaugeFn = std::function<M2t<Jet>(const Jet& t, const Jet& lam, const Jet& x, const Jet& xt)>;

// Characteristics of the gauge symmetry: Q1 = D_t S + [S, U1],
// Q2 = D_l S + [S, U2]; always a symmetry on-shell.
TangentFrame gauge_characteristics(const LaxPair& pair, const LaxPoint& p, const GaugeFn& S);

// D_l A - D_t B + [A, U2] + [U1, B]; vanishing certifies (A, B) as an
// infinitesimal deformation of the zero-curvature condition.
Mat2r deformation_residual(const LaxPair& pair, const LaxPoint& p_onshell,
                           const TangentFrame& f);

// Integrate the linearized equation R'' = w1 R + w2 R' along the host
// trajectory, jointly with the host flow, from (R0, Rt0) at the host's first
// sample. Local error tracked at the host tolerance.
RSolution solve_determining(const PainleveParams& params, const Trajectory& host, double r0,
                            double rt0, double rel_tol = 1e-10, double abs_tol = 1e-12);

// Frame for the alpha5 pair built from externally supplied (possibly
// off-shell) jets; exposed for identity checks.
TangentFrame alpha5_frame(const LaxJets& jets);

} // namespace solsurf

#endif
