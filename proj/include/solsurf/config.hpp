#ifndef SOLSURF_CONFIG_HPP
#define SOLSURF_CONFIG_HPP

#include <string>
#include <vector>

#include "solsurf/frame.hpp"
#include "solsurf/painleve.hpp"
#include "solsurf/symmetry.hpp"

namespace solsurf {

// A run is described by a flat key = value file with bracketed sections.
// Parsing is strict: unknown sections or keys are errors, not warnings.
struct RunConfig {
    PainleveParams params;

    enum class Solution { Numeric, Rational1, Rational2, Airy };
    Solution solution = Solution::Numeric;
    int epsilon = 1;
    double t0 = 0, x0 = 0, xt0 = 0;
    double t_end = 1;

    GridSpec grid;

    SymmetryChoice choice;
    std::vector<double> r_poly = {1.0};
    std::vector<double> s_poly = {1.0};

    enum class RKind { None, Bessel, Airy, P3R1, P3R2, Numeric };
    RKind rsol = RKind::None;
    double r0 = 0, rt0 = 0;
    bool regime_override = false;

    double ode_rel = 1e-10;
    double ode_abs = 1e-12;
    double frame_tol = 1e-10;
};

// Parse + validate; throws ConfigError with the offending key named.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// A fully commented template with every key at its default.
std::string default_config_text();

// The Painleve state prescribed by the configured solution kind at time t.
PainleveState solution_state(const RunConfig& cfg, double t);

} // namespace solsurf

#endif
