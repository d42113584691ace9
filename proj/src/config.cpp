#include "solsurf/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace solsurf {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' has a non-numeric value '" + v + "'");
    }
}

int parse_int(const std::string& key, const std::string& v) {
    const double d = parse_double(key, v);
    const int i = static_cast<int>(std::lround(d));
    if (std::abs(d - i) > 0)
        throw ConfigError("config: key '" + key + "' must be an integer, got '" + v + "'");
    return i;
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("config: key '" + key + "' must be true or false, got '" + v + "'");
}

std::vector<double> parse_poly(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::istringstream ss(v);
    std::string tok;
    while (ss >> tok) out.push_back(parse_double(key, tok));
    if (out.empty()) throw ConfigError("config: key '" + key + "' needs coefficients");
    return out;
}

std::vector<Band> parse_bands(const std::string& key, const std::string& v) {
    std::vector<Band> out;
    std::istringstream ss(v);
    std::string piece;
    while (std::getline(ss, piece, ';')) {
        piece = trim(piece);
        if (piece.empty()) continue;
        const auto colon = piece.find(':');
        if (colon == std::string::npos)
            throw ConfigError("config: key '" + key + "' bands must look like lo:hi");
        Band b;
        b.lo = parse_double(key, trim(piece.substr(0, colon)));
        b.hi = parse_double(key, trim(piece.substr(colon + 1)));
        if (b.hi < b.lo) std::swap(b.lo, b.hi);
        out.push_back(b);
    }
    return out;
}

} // namespace

RunConfig parse_config_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config: malformed section header at line " +
                                  std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected key = value at line " + std::to_string(lineno));
        const std::string key = section + "." + trim(line.substr(0, eq));
        kv[key] = trim(line.substr(eq + 1));
    }

    RunConfig cfg;
    auto take = [&](const std::string& key) {
        const auto it = kv.find(key);
        if (it == kv.end()) return std::string();
        const std::string v = it->second;
        kv.erase(it);
        return v;
    };
    auto take_double = [&](const std::string& key, double& slot) {
        const std::string v = take(key);
        if (!v.empty()) slot = parse_double(key, v);
    };
    auto take_int = [&](const std::string& key, int& slot) {
        const std::string v = take(key);
        if (!v.empty()) slot = parse_int(key, v);
    };

    const std::string type = take("equation.type");
    if (type == "P1")
        cfg.params.equation = Equation::P1;
    else if (type == "P2" || type.empty())
        cfg.params.equation = Equation::P2;
    else if (type == "P3")
        cfg.params.equation = Equation::P3;
    else
        throw ConfigError("config: key 'equation.type' has unknown value '" + type + "'");
    take_double("equation.alpha", cfg.params.alpha);
    take_double("equation.beta", cfg.params.beta);
    take_double("equation.gamma", cfg.params.gamma);
    take_double("equation.delta", cfg.params.delta);

    const std::string kind = take("solution.kind");
    if (kind == "numeric" || kind.empty())
        cfg.solution = RunConfig::Solution::Numeric;
    else if (kind == "rational1")
        cfg.solution = RunConfig::Solution::Rational1;
    else if (kind == "rational2")
        cfg.solution = RunConfig::Solution::Rational2;
    else if (kind == "airy")
        cfg.solution = RunConfig::Solution::Airy;
    else
        throw ConfigError("config: key 'solution.kind' has unknown value '" + kind + "'");
    take_int("solution.epsilon", cfg.epsilon);
    take_double("solution.t0", cfg.t0);
    take_double("solution.x0", cfg.x0);
    take_double("solution.xt0", cfg.xt0);
    take_double("solution.t_end", cfg.t_end);

    take_double("grid.t_min", cfg.grid.t_min);
    take_double("grid.t_max", cfg.grid.t_max);
    take_int("grid.n_t", cfg.grid.n_t);
    take_double("grid.lambda_min", cfg.grid.lambda_min);
    take_double("grid.lambda_max", cfg.grid.lambda_max);
    take_int("grid.n_lambda", cfg.grid.n_lambda);
    take_double("grid.base_t", cfg.grid.base_t);
    take_double("grid.base_lambda", cfg.grid.base_lambda);
    {
        const std::string bt = take("grid.exclude_t");
        if (!bt.empty()) cfg.grid.exclude_t = parse_bands("grid.exclude_t", bt);
        const std::string bl = take("grid.exclude_lambda");
        if (!bl.empty()) cfg.grid.exclude_lambda = parse_bands("grid.exclude_lambda", bl);
    }

    take_double("symmetry.alpha1", cfg.choice.alpha1);
    take_double("symmetry.alpha2", cfg.choice.alpha2);
    take_double("symmetry.alpha3", cfg.choice.alpha3);
    take_double("symmetry.alpha4", cfg.choice.alpha4);
    take_double("symmetry.alpha5", cfg.choice.alpha5);
    take_double("symmetry.alpha6", cfg.choice.alpha6);
    {
        const std::string rp = take("symmetry.r_poly");
        if (!rp.empty()) cfg.r_poly = parse_poly("symmetry.r_poly", rp);
        const std::string sp = take("symmetry.s_poly");
        if (!sp.empty()) cfg.s_poly = parse_poly("symmetry.s_poly", sp);
        cfg.choice.r = ScalarFn::polynomial(cfg.r_poly);
        cfg.choice.s = ScalarFn::polynomial(cfg.s_poly);
    }
    const std::string rsol = take("symmetry.rsol");
    if (rsol == "none" || rsol.empty())
        cfg.rsol = RunConfig::RKind::None;
    else if (rsol == "bessel")
        cfg.rsol = RunConfig::RKind::Bessel;
    else if (rsol == "airy")
        cfg.rsol = RunConfig::RKind::Airy;
    else if (rsol == "p3r1")
        cfg.rsol = RunConfig::RKind::P3R1;
    else if (rsol == "p3r2")
        cfg.rsol = RunConfig::RKind::P3R2;
    else if (rsol == "numeric")
        cfg.rsol = RunConfig::RKind::Numeric;
    else
        throw ConfigError("config: key 'symmetry.rsol' has unknown value '" + rsol + "'");
    take_double("symmetry.r0", cfg.r0);
    take_double("symmetry.rt0", cfg.rt0);
    {
        const std::string ro = take("symmetry.regime_override");
        if (!ro.empty()) cfg.regime_override = parse_bool("symmetry.regime_override", ro);
    }

    take_double("tolerances.ode_rel", cfg.ode_rel);
    take_double("tolerances.ode_abs", cfg.ode_abs);
    take_double("tolerances.frame", cfg.frame_tol);

    if (!kv.empty()) throw ConfigError("config: unknown key '" + kv.begin()->first + "'");

    // cross-field validation
    if (cfg.solution == RunConfig::Solution::Rational1 &&
        (cfg.params.equation != Equation::P2 || cfg.params.alpha != 1.0))
        throw ConfigError("config: solution.kind = rational1 requires P2 with alpha = 1");
    if (cfg.solution == RunConfig::Solution::Rational2 &&
        (cfg.params.equation != Equation::P2 || cfg.params.alpha != -2.0))
        throw ConfigError(
            "config: solution.kind = rational2 requires P2 with alpha = -2 (the branch as "
            "written solves that parameter)");
    if (cfg.solution == RunConfig::Solution::Airy) {
        if (cfg.epsilon != 1 && cfg.epsilon != -1)
            throw ConfigError("config: solution.epsilon must be +-1");
        if (cfg.params.equation != Equation::P2 || cfg.params.alpha != cfg.epsilon / 2.0)
            throw ConfigError("config: solution.kind = airy requires P2 with alpha = epsilon/2");
    }
    if (cfg.choice.alpha6 != 0.0 && cfg.rsol == RunConfig::RKind::None)
        throw ConfigError("config: symmetry.alpha6 needs symmetry.rsol");
    if (cfg.rsol == RunConfig::RKind::Bessel &&
        (cfg.params.equation != Equation::P2 || cfg.params.alpha != 1.0))
        throw ConfigError("config: symmetry.rsol = bessel requires P2 with alpha = 1");
    if (cfg.rsol == RunConfig::RKind::Airy && cfg.params.equation != Equation::P2)
        throw ConfigError("config: symmetry.rsol = airy requires P2");
    if ((cfg.rsol == RunConfig::RKind::P3R1 || cfg.rsol == RunConfig::RKind::P3R2) &&
        cfg.params.equation != Equation::P3)
        throw ConfigError("config: symmetry.rsol = p3r1/p3r2 requires P3");
    if (!cfg.regime_override) {
        if (cfg.rsol == RunConfig::RKind::P3R1 &&
            (cfg.params.beta != 0.0 || cfg.params.delta != 0.0))
            throw ConfigError("config: rsol = p3r1 requires beta = delta = 0 "
                              "(set symmetry.regime_override to run anyway)");
        if (cfg.rsol == RunConfig::RKind::P3R2 &&
            (cfg.params.alpha != 0.0 || cfg.params.gamma != 0.0))
            throw ConfigError("config: rsol = p3r2 requires alpha = gamma = 0 "
                              "(set symmetry.regime_override to run anyway)");
    }
    if (cfg.grid.n_t < 2 || cfg.grid.n_lambda < 2)
        throw ConfigError("config: grid.n_t and grid.n_lambda must be at least 2");
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string default_config_text() {
    return R"(# solsurf run configuration (defaults shown; unknown keys are rejected)

[equation]
type = P2            # P1 | P2 | P3
alpha = 1            # P2/P3 parameter (ignored by P1)
beta = 0             # P3 only
gamma = 0            # P3 only (real pair needs gamma >= 0)
delta = 0            # P3 only (real pair needs delta <= 0)

[solution]
kind = rational1     # numeric | rational1 | rational2 | airy
                     # rational1: x = 1/t at alpha = 1
                     # rational2: x = -2(t^3-2)/(t(t^3+4)) at alpha = -2
                     # airy: the alpha = epsilon/2 family
epsilon = 1          # airy branch sign
t0 = 1               # initial data for kind = numeric, and the solve start
x0 = 1
xt0 = -1
t_end = 3            # target time for the solve command

[grid]
t_min = 1
t_max = 3
n_t = 50
lambda_min = 0.5
lambda_max = 2
n_lambda = 50
base_t = 1           # must coincide with a grid node
base_lambda = 0.5
exclude_t =          # omitted bands, e.g. -0.01:0.01; 1.57:1.61
exclude_lambda =

[symmetry]
alpha1 = 1           # t-translation family (weighted by r)
alpha2 = 0           # spectral family (weighted by s)
alpha3 = 0           # t-dilation
alpha4 = 0           # spectral dilation
alpha5 = 0           # generalized flow term
alpha6 = 0           # characteristic term; needs rsol
r_poly = 1           # r(t) polynomial coefficients, constant first
s_poly = 1           # s(lambda) polynomial coefficients
rsol = none          # none | bessel | airy | p3r1 | p3r2 | numeric
r0 = 0               # initial data for rsol = numeric
rt0 = 0
regime_override = false  # run p3r1/p3r2 outside their parameter regime

[tolerances]
ode_rel = 1e-10
ode_abs = 1e-12
frame = 1e-10
)";
}

PainleveState solution_state(const RunConfig& cfg, double t) {
    switch (cfg.solution) {
        case RunConfig::Solution::Rational1:
            return rational_p2(1, t);
        case RunConfig::Solution::Rational2:
            return rational_p2(2, t);
        case RunConfig::Solution::Airy:
            return airy_p2(cfg.epsilon, t);
        case RunConfig::Solution::Numeric:
            break;
    }
    if (t != cfg.t0)
        throw DomainError("solution_state: numeric initial data is only known at t0");
    return {cfg.t0, cfg.x0, cfg.xt0};
}

} // namespace solsurf
