#ifndef SOLSURF_PAINLEVE_HPP
#define SOLSURF_PAINLEVE_HPP

#include <optional>
#include <string>
#include <vector>

#include "solsurf/errors.hpp"
#include "solsurf/ode.hpp"

namespace solsurf {

enum class Equation { P1, P2, P3 };

std::string equation_name(Equation eq);

struct PainleveParams {
    Equation equation = Equation::P1;
    double alpha = 0, beta = 0, gamma = 0, delta = 0;

    // P3 with gamma = delta = 0 (or beta = delta = 0 / alpha = gamma = 0) is
    // permitted; the reduced cases are the ones carrying point symmetries.
    bool degenerate_p3() const {
        return equation == Equation::P3 &&
               ((gamma == 0 && delta == 0) || (beta == 0 && delta == 0) ||
                (alpha == 0 && gamma == 0));
    }
};

struct PainleveState {
    double t = 0, x = 0, x_t = 0;
};

// Second derivative prescribed by the selected equation. Division-free for
// P1; P2/P3 reject t = 0 and P3 rejects x = 0 (SingularInput).
double rhs(const PainleveParams& params, const PainleveState& state);

// Coefficients of the linearization about a solution:
//   R'' = w1 * R + w2 * R'.
struct Linearization {
    double w1 = 0, w2 = 0;
};
Linearization linearization(const PainleveParams& params, const PainleveState& state);

// rhs over any scalar ring (plain double or truncated Taylor jets). No
// singularity checks: callers evaluate at admissible points only.
template <class T>
T rhs_generic(const PainleveParams& p, const T& t, const T& x, const T& xt) {
    switch (p.equation) {
        case Equation::P1:
            return x * x * 6.0 + t;
        case Equation::P2:
            return x * x * x * 2.0 + t * x - T(p.alpha);
        case Equation::P3:
        default:
            return xt * xt / x - xt / t + (x * x * p.alpha + T(p.beta)) / t +
                   x * x * x * p.gamma + T(p.delta) / x;
    }
}

// Solution samples with dense output. Samples are strictly monotone in t
// (increasing or decreasing); interpolation between nodes is quintic Hermite
// built from (x, x_t, x_tt) at the nodes, so the dense error is consistent
// with the integrator tolerance.
class Trajectory {
  public:
    Trajectory() = default;
    Trajectory(PainleveParams params, std::vector<double> t, std::vector<double> x,
               std::vector<double> xt, std::vector<double> xtt,
               std::optional<double> pole = std::nullopt);

    const PainleveParams& params() const { return params_; }
    std::size_t size() const { return t_.size(); }
    double t(std::size_t i) const { return t_[i]; }
    double x(std::size_t i) const { return x_[i]; }
    double x_t(std::size_t i) const { return xt_[i]; }
    double x_tt(std::size_t i) const { return xtt_[i]; }
    double t_front() const { return t_.front(); }
    double t_back() const { return t_.back(); }
    std::optional<double> pole_flag() const { return pole_flag_; }

    bool covers(double t_lo, double t_hi) const;

    // Dense evaluation; throws DomainError outside the sampled range.
    PainleveState at(double t) const;

  private:
    PainleveParams params_;
    std::vector<double> t_, x_, xt_, xtt_;
    std::optional<double> pole_flag_;
    bool increasing_ = true;
};

struct IntegrateOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = std::numeric_limits<double>::infinity();
    double pole_threshold = 1e8;  // |x| or |x_t| beyond this flags a pole
};

// Adaptive integration from `initial` to t_end (either direction). Stops
// early with pole_flag set when the state exceeds the pole threshold (or, for
// P3, when x approaches its singular value 0).
Trajectory integrate(const PainleveParams& params, const PainleveState& initial, double t_end,
                     const IntegrateOptions& opt = {});

// Integrate both directions from an interior initial condition and merge into
// one monotone trajectory covering [t_lo, t_hi] (or less if a pole intervenes).
Trajectory solve_range(const PainleveParams& params, const PainleveState& initial, double t_lo,
                       double t_hi, const IntegrateOptions& opt = {});

// Rational P2 solutions: n=1 is (alpha=1, x=1/t); n=2 is
// (alpha=2, x=-2(t^3-2)/(t(t^3+4))). x_t is the exact derivative.
PainleveState rational_p2(int n, double t);

// P2 parameter value the rational solution n corresponds to.
double rational_p2_alpha(int n);

// Airy-type P2 solution for alpha = eps/2 (eps = +-1):
//   x(t) = eps * d/dt ln Ai(-2^(-1/3) t),
// which satisfies the first-order relation x_t = -eps (x^2 + t/2). Throws
// NearAiryZero when the underlying Airy value is below 1e-12.
PainleveState airy_p2(int eps, double t);

// First integral of the Airy family; identically zero along exact solutions.
double airy_first_integral(int eps, const PainleveState& s);

} // namespace solsurf

#endif
