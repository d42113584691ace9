#ifndef SOLSURF_LAXPAIR_HPP
#define SOLSURF_LAXPAIR_HPP

#include <array>
#include <cmath>
#include <optional>

#include "solsurf/algebra.hpp"
#include "solsurf/jet.hpp"
#include "solsurf/painleve.hpp"

namespace solsurf {

// Evaluation point for the potential matrices. x_tt is a free coordinate (it
// is NOT forced on-shell), so zero-curvature factorizations can be probed off
// the solution manifold; on-shell callers substitute rhs().
struct LaxPoint {
    double t = 0, lambda = 0, x = 0, x_t = 0, x_tt = 0;
};

inline LaxPoint onshell_point(const PainleveParams& p, double t, double lambda, double x,
                              double x_t) {
    return {t, lambda, x, x_t, rhs(p, {t, x, x_t})};
}

// Potential matrices over any scalar ring (double or Jet). They depend on
// (t, lambda, x, x_t) only.
template <class T>
struct LaxMatrices {
    M2t<T> u1, u2;
};

// The P3 pair is written in its own parameters (g, d) which enter the
// zero-curvature condition quadratically: the compatibility condition is the
// P3 equation with gamma = g^2 and delta = -d^2. A real pair therefore exists
// exactly for equation parameters gamma >= 0, delta <= 0.
struct P3PairParams {
    double g = 0, d = 0;
};

inline P3PairParams p3_pair_parameters(const PainleveParams& p) {
    if (p.gamma < 0.0 || p.delta > 0.0)
        throw WrongParameterRegime(
            "P3 pair: real potential matrices require gamma >= 0 and delta <= 0");
    return {std::sqrt(p.gamma), std::sqrt(-p.delta)};
}

template <class T>
LaxMatrices<T> lax_matrices(const PainleveParams& p, const T& t, const T& lam, const T& x,
                            const T& xt) {
    LaxMatrices<T> m;
    switch (p.equation) {
        case Equation::P1: {
            m.u1 = {T(0), lam + x * 2.0, T(1), T(0)};
            m.u2 = {-xt, lam * lam * 2.0 + lam * x * 2.0 + t + x * x * 2.0, (lam - x) * 2.0, xt};
            break;
        }
        case Equation::P2: {
            m.u1 = {-lam, x, x, lam};
            const T diag = lam * lam * 4.0 - x * x * 2.0 - t;
            const T off = x * lam * -4.0 + T(p.alpha) / lam;
            m.u2 = {diag, off + xt * 2.0, off - xt * 2.0, -diag};
            break;
        }
        case Equation::P3: {
            const auto [g, d] = p3_pair_parameters(p);
            const T w = xt / x + x * g + T(d) / x;
            m.u1 = {w * 0.5, lam, lam, w * -0.5};
            const T c = lam * lam + T(g * d);
            const T np =
                t * lam * lam * (xt + x * x * g + T(d)) * 2.0 + x * (p.beta * g - p.alpha * d);
            const T nq = t * lam * lam * -2.0 + xt * (g * t) + x * g + x * x * (g * g * t) -
                         T(g * d * t) + x * p.alpha;
            const T ns = t * x * x * lam * lam * -2.0 + xt * (d * t) - x * d + T(d * d * t) -
                         x * x * (g * d * t) - x * p.beta;
            const T u11 = np / (lam * x * c * 4.0);
            m.u2 = {u11, -(nq / (c * 2.0)), -(ns / (x * x * c * 2.0)), -u11};
            break;
        }
    }
    return m;
}

// One Lax pair: an equation id plus its parameters. Supplies the potential
// matrices and their closed-form first total derivatives (D_t carries
// x -> x_t, x_t -> x_tt; D_lambda touches only the explicit lambda slots).
class LaxPair {
  public:
    explicit LaxPair(PainleveParams params) : params_(params) {}

    const PainleveParams& params() const { return params_; }
    Equation equation() const { return params_.equation; }

    // Throws SingularInput when p violates the equation's admissibility set
    // (P2: lambda != 0; P3: x, t, lambda != 0 and lambda^2 + gamma*delta != 0).
    void require_admissible(const LaxPoint& p) const;
    bool admissible(const LaxPoint& p) const;

    Mat2r u1(const LaxPoint& p) const;
    Mat2r u2(const LaxPoint& p) const;
    Mat2r dt_u1(const LaxPoint& p) const;
    Mat2r dl_u1(const LaxPoint& p) const;
    Mat2r dt_u2(const LaxPoint& p) const;
    Mat2r dl_u2(const LaxPoint& p) const;

    // D_lambda U1 - D_t U2 + [U1, U2] with all five coordinates of p free.
    Mat2r zcc_residual(const LaxPoint& p) const;

    // Scalar residual of the equation itself at p: x_tt - rhs.
    double equation_residual(const LaxPoint& p) const;

    // Predicted zero-curvature residual for P3: (1/2) * equation residual
    // times the structure matrix [[-lt/(xc), gt/c], [dt/(x^2 c), lt/(xc)]].
    Mat2r p3_predicted_residual(const LaxPoint& p) const;

  private:
    PainleveParams params_;
};

// ---- jet evaluation --------------------------------------------------------
//
// Potential matrices expanded around an on-shell point as truncated Taylor
// polynomials in (dt, dl, ds). The dt direction follows the solution flow
// (x_tt and higher from the equation), dl is the spectral direction, and ds
// deforms (x, x_t) along an optional characteristic (R, R_t), so coefficient
// reads deliver pr w_R and every mixed total derivative in one place.

struct LaxJets {
    M2t<Jet> u1, u2;
    Jet t, lam, x, xt;
};

// Taylor coefficients of x(t) about the base point, orders 0..4, obtained by
// on-shell bootstrap from the equation.
std::array<double, 5> onshell_x_taylor(const PainleveParams& p, double t, double x, double xt);

// Taylor coefficients of a characteristic R(t), orders 0..3; the higher
// orders come from the linearized equation along the host flow.
std::array<double, 4> characteristic_taylor(const PainleveParams& p, double t, double x,
                                            double xt, double r, double rt);

LaxJets onshell_jets(const PainleveParams& p, double t, double lam, double x, double xt,
                     const std::array<double, 4>* r_taylor = nullptr);

// Free-jet variant: all t-derivatives of x supplied independently (used to
// probe identities off the solution manifold).
LaxJets offshell_jets(const PainleveParams& p, double t, double lam, double x, double xt,
                      double xtt, double xttt, double xtttt);

// Entry-wise jet-matrix helpers.
inline M2t<Jet> jm_dt(const M2t<Jet>& m) { return {m.a11.d_t(), m.a12.d_t(), m.a21.d_t(), m.a22.d_t()}; }
inline M2t<Jet> jm_dl(const M2t<Jet>& m) {
    return {m.a11.d_lambda(), m.a12.d_lambda(), m.a21.d_lambda(), m.a22.d_lambda()};
}
inline M2t<Jet> jm_dsigma(const M2t<Jet>& m) {
    return {m.a11.d_sigma(), m.a12.d_sigma(), m.a21.d_sigma(), m.a22.d_sigma()};
}
inline Mat2r jm_value(const M2t<Jet>& m) {
    return {m.a11.value(), m.a12.value(), m.a21.value(), m.a22.value()};
}
inline M2t<Jet> jm_scale(const M2t<Jet>& m, const Jet& s) {
    return {m.a11 * s, m.a12 * s, m.a21 * s, m.a22 * s};
}

} // namespace solsurf

#endif
