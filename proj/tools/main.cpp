#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>

#include "solsurf/config.hpp"
#include "solsurf/geometry.hpp"
#include "solsurf/mesh_io.hpp"
#include "solsurf/verify.hpp"

namespace fs = std::filesystem;
using namespace solsurf;

namespace {

// Exit codes: 0 success, 1 failed checks or internal error, 2 configuration
// or domain error, 3 pole-truncated trajectory (partial output written),
// 4 tangent field fails the determining equation.
constexpr int kOk = 0, kFail = 1, kConfig = 2, kPole = 3, kNonClosed = 4;

std::string out_path(const std::string& dir, const std::string& name) {
    fs::create_directories(dir);
    return (fs::path(dir) / name).string();
}

std::optional<RSolution> make_rsolution(const RunConfig& cfg, const Trajectory& host) {
    switch (cfg.rsol) {
        case RunConfig::RKind::None:
            return std::nullopt;
        case RunConfig::RKind::Bessel:
            return RSolution::bessel_alpha1();
        case RunConfig::RKind::Airy:
            return RSolution::airy(cfg.epsilon);
        case RunConfig::RKind::P3R1:
            return RSolution::p3_scale_r1(cfg.params, cfg.regime_override);
        case RunConfig::RKind::P3R2:
            return RSolution::p3_scale_r2(cfg.params, cfg.regime_override);
        case RunConfig::RKind::Numeric:
            return solve_determining(cfg.params, host, cfg.r0, cfg.rt0, cfg.ode_rel,
                                     cfg.ode_abs);
    }
    return std::nullopt;
}

Trajectory block_host(const RunConfig& cfg, double t_lo, double t_hi) {
    IntegrateOptions opt;
    opt.rel_tol = cfg.ode_rel;
    opt.abs_tol = cfg.ode_abs;
    if (cfg.solution == RunConfig::Solution::Numeric) {
        if (cfg.t0 < t_lo - 1e-12 || cfg.t0 > t_hi + 1e-12)
            throw ConfigError("surface: numeric initial data lies outside a grid block; "
                              "split runs or use a closed-form solution kind");
        return solve_range(cfg.params, solution_state(cfg, cfg.t0), t_lo, t_hi, opt);
    }
    const double t_seed = 0.5 * (t_lo + t_hi);
    return solve_range(cfg.params, solution_state(cfg, t_seed), t_lo, t_hi, opt);
}

int cmd_solve(const RunConfig& cfg, const std::string& out_dir) {
    IntegrateOptions opt;
    opt.rel_tol = cfg.ode_rel;
    opt.abs_tol = cfg.ode_abs;
    const Trajectory tr = integrate(cfg.params, solution_state(cfg, cfg.t0), cfg.t_end, opt);
    write_trajectory_csv(out_path(out_dir, "trajectory.csv"), tr);
    if (tr.pole_flag()) {
        std::cerr << "solve: integration stopped at a pole near t = " << *tr.pole_flag()
                  << "; partial trajectory written\n";
        return kPole;
    }
    std::cout << "solve: wrote " << tr.size() << " samples to " << out_dir
              << "/trajectory.csv\n";
    return kOk;
}

int cmd_surface(const RunConfig& cfg, const std::string& out_dir) {
    const LaxPair pair(cfg.params);
    const auto blocks = enumerate_blocks(cfg.grid);
    if (blocks.empty()) throw ConfigError("surface: the exclusion bands leave no grid block");
    if (cfg.rsol == RunConfig::RKind::Numeric && blocks.size() > 1)
        throw ConfigError("surface: rsol = numeric carries one set of initial data and cannot "
                          "span multiple grid blocks");

    SurfaceGrid full;
    full.n_t = cfg.grid.n_t;
    full.n_lambda = cfg.grid.n_lambda;
    full.ts.resize(full.n_t);
    full.lambdas.resize(full.n_lambda);
    for (int i = 0; i < full.n_t; ++i) full.ts[i] = cfg.grid.t_at(i);
    for (int j = 0; j < full.n_lambda; ++j) full.lambdas[j] = cfg.grid.lambda_at(j);
    full.nodes.assign(full.n_t * full.n_lambda, SurfaceNode{});
    for (int i = 0; i < full.n_t; ++i)
        for (int j = 0; j < full.n_lambda; ++j) {
            full.at(i, j).t = full.ts[i];
            full.at(i, j).lambda = full.lambdas[j];
            full.at(i, j).valid = false;
        }

    for (const GridBlock& b : blocks) {
        GridSpec sub;
        sub.t_min = cfg.grid.t_at(b.i0);
        sub.t_max = cfg.grid.t_at(b.i1);
        sub.n_t = b.i1 - b.i0 + 1;
        sub.lambda_min = cfg.grid.lambda_at(b.j0);
        sub.lambda_max = cfg.grid.lambda_at(b.j1);
        sub.n_lambda = b.j1 - b.j0 + 1;
        // base: the configured node when inside this block, otherwise the
        // nearest block node (each block is normalized independently)
        auto clamp_to = [](double v, double lo, double hi) { return std::min(std::max(v, lo), hi); };
        const double bt = clamp_to(cfg.grid.base_t, sub.t_min, sub.t_max);
        const double bl = clamp_to(cfg.grid.base_lambda, sub.lambda_min, sub.lambda_max);
        const double dt = (sub.t_max - sub.t_min) / (sub.n_t - 1);
        const double dl = (sub.lambda_max - sub.lambda_min) / (sub.n_lambda - 1);
        sub.base_t = sub.t_min + dt * std::lround((bt - sub.t_min) / dt);
        sub.base_lambda = sub.lambda_min + dl * std::lround((bl - sub.lambda_min) / dl);

        const Trajectory host = block_host(cfg, sub.t_min, sub.t_max);
        if (host.pole_flag())
            throw SingularInput("surface: host solution has a pole inside a grid block; add an "
                                "exclusion band around t = " +
                                std::to_string(*host.pole_flag()));
        const FrameGrid fg = integrate_frame(pair, host, sub, cfg.frame_tol);
        const std::optional<RSolution> rs = make_rsolution(cfg, host);
        if (rs && rs->size() > 0)
            write_rsolution_csv(out_path(out_dir, "rsolution.csv"), *rs);

        SurfaceGrid part;
        if (cfg.choice.alpha6 == 0.0) {
            part = immersion_closed_form(fg, pair, cfg.choice);
        } else {
            const RSolution* rp = rs ? &*rs : nullptr;
            const TangentField field = [&](const LaxPoint& p, Mat2r& A, Mat2r& B) {
                const TangentFrame f = build_AB(pair, cfg.choice, p, rp);
                A = f.A;
                B = f.B;
            };
            part = immersion_quadrature(fg, field);
        }
        for (int i = 0; i < sub.n_t; ++i)
            for (int j = 0; j < sub.n_lambda; ++j) {
                SurfaceNode& n = full.at(b.i0 + i, b.j0 + j);
                n = part.at(i, j);
                n.valid = true;
            }
    }

    write_surface_obj(out_path(out_dir, "surface.obj"), full);
    write_surface_csv(out_path(out_dir, "surface.csv"), full);
    std::cout << "surface: wrote surface.obj and surface.csv to " << out_dir << "\n";
    return kOk;
}

SurfaceGrid geometry_for(const RunConfig& cfg, const LaxPair& pair,
                         std::optional<RSolution>& rs_holder) {
    const auto blocks = enumerate_blocks(cfg.grid);
    if (blocks.empty()) throw ConfigError("geometry: the exclusion bands leave no grid block");
    if (cfg.rsol == RunConfig::RKind::Numeric && blocks.size() > 1)
        throw ConfigError("geometry: rsol = numeric carries one set of initial data and cannot "
                          "span multiple grid blocks");
    SurfaceGrid full;
    full.n_t = cfg.grid.n_t;
    full.n_lambda = cfg.grid.n_lambda;
    full.ts.resize(full.n_t);
    full.lambdas.resize(full.n_lambda);
    for (int i = 0; i < full.n_t; ++i) full.ts[i] = cfg.grid.t_at(i);
    for (int j = 0; j < full.n_lambda; ++j) full.lambdas[j] = cfg.grid.lambda_at(j);
    full.nodes.assign(full.n_t * full.n_lambda, SurfaceNode{});
    for (int i = 0; i < full.n_t; ++i)
        for (int j = 0; j < full.n_lambda; ++j) {
            full.at(i, j).t = full.ts[i];
            full.at(i, j).lambda = full.lambdas[j];
            full.at(i, j).valid = false;
        }
    for (const GridBlock& b : blocks) {
        GridSpec sub;
        sub.t_min = cfg.grid.t_at(b.i0);
        sub.t_max = cfg.grid.t_at(b.i1);
        sub.n_t = b.i1 - b.i0 + 1;
        sub.lambda_min = cfg.grid.lambda_at(b.j0);
        sub.lambda_max = cfg.grid.lambda_at(b.j1);
        sub.n_lambda = b.j1 - b.j0 + 1;
        const Trajectory host = block_host(cfg, sub.t_min, sub.t_max);
        rs_holder = make_rsolution(cfg, host);
        const RSolution* rp = rs_holder ? &*rs_holder : nullptr;
        const SurfaceGrid part = geometry_grid_from_host(pair, host, sub, cfg.choice, rp);
        for (int i = 0; i < sub.n_t; ++i)
            for (int j = 0; j < sub.n_lambda; ++j) full.at(b.i0 + i, b.j0 + j) = part.at(i, j);
    }
    return full;
}

int cmd_geometry(const RunConfig& cfg, const std::string& out_dir) {
    const LaxPair pair(cfg.params);
    std::optional<RSolution> rs;
    const SurfaceGrid full = geometry_for(cfg, pair, rs);
    write_geometry_csv(out_path(out_dir, "geometry.csv"), full);
    std::cout << "geometry: wrote geometry.csv to " << out_dir << "\n";
    return kOk;
}

int cmd_umbilic(const RunConfig& cfg, const std::string& out_dir) {
    const LaxPair pair(cfg.params);
    std::optional<RSolution> rs;
    const SurfaceGrid full = geometry_for(cfg, pair, rs);
    const Trajectory host = block_host(cfg, cfg.grid.t_min, cfg.grid.t_max);
    const RSolution* rp = rs ? &*rs : nullptr;
    const auto points = umbilic_locus(full, h2k_evaluator(pair, host, cfg.choice, rp));
    write_umbilic_csv(out_path(out_dir, "umbilic.csv"), points);
    std::cout << "umbilic: found " << points.size() << " points, wrote umbilic.csv to "
              << out_dir << "\n";
    return kOk;
}

int cmd_verify(const std::string& suite, bool inject) {
    VerifyOptions opt;
    opt.inject_killing_sign = inject;
    const auto results = run_suite(suite, opt);
    std::cout << format_report(results);
    return all_passed(results) ? kOk : kFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"solsurf: surfaces from zero-curvature representations of Painleve equations"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".", suite = "all";
    bool inject = false;

    auto add_config = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "run configuration file")->required();
        cmd->add_option("--out", out_dir, "output directory (default .)");
    };
    CLI::App* solve = app.add_subcommand("solve", "integrate the selected solution, write CSV");
    add_config(solve);
    CLI::App* surface =
        app.add_subcommand("surface", "build the immersed surface, write OBJ and CSV");
    add_config(surface);
    CLI::App* geometry =
        app.add_subcommand("geometry", "fundamental forms and curvatures, write CSV");
    add_config(geometry);
    CLI::App* umbilic = app.add_subcommand("umbilic", "extract the umbilic locus, write CSV");
    add_config(umbilic);
    CLI::App* verify = app.add_subcommand("verify", "run the named check suites");
    verify->add_option("--suite", suite, "algebra | zcc | symmetry | frame | geometry | all");
    verify->add_flag("--inject-killing-sign", inject,
                     "deliberately mis-sign the metric (failure-path demonstration)");
    CLI::App* tmpl = app.add_subcommand("template", "print a fully commented config template");

    CLI11_PARSE(app, argc, argv);

    try {
        if (tmpl->parsed()) {
            std::cout << default_config_text();
            return kOk;
        }
        if (verify->parsed()) return cmd_verify(suite, inject);

        const RunConfig cfg = parse_config_file(config_path);
        if (solve->parsed()) return cmd_solve(cfg, out_dir);
        if (surface->parsed()) return cmd_surface(cfg, out_dir);
        if (geometry->parsed()) return cmd_geometry(cfg, out_dir);
        if (umbilic->parsed()) return cmd_umbilic(cfg, out_dir);
    } catch (const NonClosedForm& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNonClosed;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfig;
    } catch (const WrongParameterRegime& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfig;
    } catch (const SingularInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfig;
    } catch (const FrameOverflow& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfig;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfig;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
    return kFail;
}
