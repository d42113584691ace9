// End-to-end checks of the command-line tool: exit codes, artifacts and
// determinism, driven through the real binary.

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <unistd.h>

#include "solsurf/mesh_io.hpp"

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(SOLSURF_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string work_dir() {
    static const std::string dir = "/tmp/solsurf_cli_" + std::to_string(::getpid());
    const int rc = std::system(("mkdir -p " + dir).c_str());
    (void)rc;
    return dir;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool exists(const std::string& path) { return std::ifstream(path).good(); }

const char* kSurfaceConfig = R"(
[equation]
type = P2
alpha = 1
[solution]
kind = rational1
t0 = 1
t_end = 3
[grid]
t_min = 1
t_max = 2
n_t = 11
lambda_min = 0.5
lambda_max = 1.5
n_lambda = 11
base_t = 1
base_lambda = 0.5
[symmetry]
alpha1 = 1
)";

} // namespace

TEST_CASE("cli: template output parses and drives solve") {
    const std::string dir = work_dir();
    REQUIRE(std::system((std::string(SOLSURF_CLI_PATH) + " template > " + dir +
                         "/run.cfg 2>/dev/null")
                            .c_str()) == 0);
    CHECK(run("solve --config " + dir + "/run.cfg --out " + dir) == 0);
    REQUIRE(exists(dir + "/trajectory.csv"));
    std::ifstream in(dir + "/trajectory.csv");
    std::string header, row;
    std::getline(in, header);
    CHECK(header == "t,x,x_t");
    double worst = 0;
    while (std::getline(in, row)) {
        double t, x, xt;
        char c;
        std::istringstream(row) >> t >> c >> x >> c >> xt;
        worst = std::max(worst, std::abs(x - 1.0 / t));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("cli: identical config gives bit-identical output") {
    const std::string dir = work_dir();
    write_file(dir + "/s.cfg", kSurfaceConfig);
    REQUIRE(run("surface --config " + dir + "/s.cfg --out " + dir + "/a") == 0);
    REQUIRE(run("surface --config " + dir + "/s.cfg --out " + dir + "/b") == 0);
    CHECK(slurp(dir + "/a/surface.csv") == slurp(dir + "/b/surface.csv"));
    CHECK(slurp(dir + "/a/surface.obj") == slurp(dir + "/b/surface.obj"));
    CHECK(!slurp(dir + "/a/surface.csv").empty());
}

TEST_CASE("cli: surface artifacts and base-node value") {
    const std::string dir = work_dir();
    write_file(dir + "/s2.cfg", kSurfaceConfig);
    REQUIRE(run("surface --config " + dir + "/s2.cfg --out " + dir + "/surf") == 0);
    const auto rows = solsurf::read_surface_csv(dir + "/surf/surface.csv");
    REQUIRE(rows.size() == 11 * 11);
    // t-translation surface at the base node: components of U1 there,
    // with x = 1/t: U1 = [[-lambda, x], [x, lambda]] at (t,lambda) = (1, 0.5).
    const solsurf::AlgebraVector expect =
        solsurf::decompose(solsurf::Mat2r{-0.5, 1.0, 1.0, 0.5});
    bool found = false;
    for (const auto& r : rows)
        if (r.t == 1.0 && r.lambda == 0.5) {
            found = true;
            CHECK(std::abs(r.F.c1 - expect.c1) < 1e-9);
            CHECK(std::abs(r.F.c2 - expect.c2) < 1e-9);
            CHECK(std::abs(r.F.c3 - expect.c3) < 1e-9);
        }
    CHECK(found);

    // the spectral-translation surface at the base node carries U2 there
    std::string cfg2(kSurfaceConfig);
    cfg2.replace(cfg2.find("alpha1 = 1"), 10, "alpha2 = 1");
    write_file(dir + "/s3.cfg", cfg2);
    REQUIRE(run("surface --config " + dir + "/s3.cfg --out " + dir + "/surf2") == 0);
    const auto rows2 = solsurf::read_surface_csv(dir + "/surf2/surface.csv");
    // U2 at (t, lambda, x, x_t) = (1, 0.5, 1, -1) with alpha = 1
    const solsurf::AlgebraVector expect2 =
        solsurf::decompose(solsurf::Mat2r{-2.0, -2.0, 2.0, 2.0});
    for (const auto& r : rows2)
        if (r.t == 1.0 && r.lambda == 0.5) {
            CHECK(std::abs(r.F.c1 - expect2.c1) < 1e-9);
            CHECK(std::abs(r.F.c2 - expect2.c2) < 1e-9);
            CHECK(std::abs(r.F.c3 - expect2.c3) < 1e-9);
        }
}

TEST_CASE("cli: config errors exit with code 2") {
    const std::string dir = work_dir();
    write_file(dir + "/bad1.cfg", "[equation]\ntype = P7\n");
    CHECK(run("solve --config " + dir + "/bad1.cfg --out " + dir) == 2);
    write_file(dir + "/bad2.cfg", "[equation]\ntype = P2\nnonsense = 1\n");
    CHECK(run("solve --config " + dir + "/bad2.cfg --out " + dir) == 2);
    CHECK(run("solve --config " + dir + "/missing.cfg --out " + dir) == 2);
}

TEST_CASE("cli: pole-truncated solve exits 3 with partial output") {
    const std::string dir = work_dir();
    write_file(dir + "/pole.cfg", R"(
[equation]
type = P1
[solution]
kind = numeric
t0 = 0
x0 = 3
xt0 = 0
t_end = 10
)");
    CHECK(run("solve --config " + dir + "/pole.cfg --out " + dir + "/pole") == 3);
    CHECK(exists(dir + "/pole/trajectory.csv"));
}

TEST_CASE("cli: non-symmetry tangents exit 4") {
    const std::string dir = work_dir();
    // The as-captioned preset carries a scale symmetry outside its regime.
    CHECK(run(std::string("surface --config ") + SOLSURF_PRESET_DIR +
              "/figure2_p3_caption.cfg --out " + dir + "/f2") == 4);
    CHECK(run(std::string("surface --config ") + SOLSURF_PRESET_DIR +
              "/figure2_p3_consistent.cfg --out " + dir + "/f2ok") == 0);
    CHECK(exists(dir + "/f2ok/surface.obj"));
}

TEST_CASE("cli: banded figure preset runs in blocks") {
    const std::string dir = work_dir();
    CHECK(run(std::string("surface --config ") + SOLSURF_PRESET_DIR +
              "/figure1_rational1_f2.cfg --out " + dir + "/fig1") == 0);
    const auto rows = solsurf::read_surface_csv(dir + "/fig1/surface.csv");
    CHECK(rows.size() > 0);
    // nodes inside the bands are absent
    for (const auto& r : rows) {
        CHECK((r.t < -0.45 || r.t > 0.45));
        CHECK((r.lambda < -0.04 || r.lambda > 0.04));
    }
}

TEST_CASE("cli: characteristic surface with a numeric determining solution") {
    const std::string dir = work_dir();
    write_file(dir + "/f6.cfg", R"(
[equation]
type = P2
alpha = 1
[solution]
kind = rational1
t0 = 1
t_end = 2
[grid]
t_min = 1
t_max = 2
n_t = 9
lambda_min = 0.6
lambda_max = 1.4
n_lambda = 9
base_t = 1
base_lambda = 0.6
[symmetry]
alpha6 = 1
rsol = numeric
r0 = 1
rt0 = 0
)");
    REQUIRE(run("surface --config " + dir + "/f6.cfg --out " + dir + "/f6") == 0);
    CHECK(exists(dir + "/f6/surface.obj"));
    CHECK(exists(dir + "/f6/rsolution.csv"));
    std::ifstream in(dir + "/f6/rsolution.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "t,R,R_t");
}

TEST_CASE("cli: geometry and umbilic commands") {
    const std::string dir = work_dir();
    write_file(dir + "/g.cfg", R"(
[equation]
type = P1
[solution]
kind = numeric
t0 = 0.5
x0 = 0
xt0 = 0.1
t_end = 1.5
[grid]
t_min = 0.5
t_max = 1.5
n_t = 21
lambda_min = -1.5
lambda_max = 1
n_lambda = 21
base_t = 1
base_lambda = 0
[symmetry]
alpha2 = 1
)");
    CHECK(run("geometry --config " + dir + "/g.cfg --out " + dir + "/geom") == 0);
    REQUIRE(exists(dir + "/geom/geometry.csv"));
    std::ifstream in(dir + "/geom/geometry.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "t,lambda,g11,g12,g22,det_g,L11,L12,L22,K,H,class");
    CHECK(run("umbilic --config " + dir + "/g.cfg --out " + dir + "/geom") == 0);
    CHECK(exists(dir + "/geom/umbilic.csv"));
}

TEST_CASE("cli: verify exit codes and fault injection") {
    CHECK(run("verify --suite algebra") == 0);
    CHECK(run("verify --suite zcc") == 0);
    CHECK(run("verify --suite algebra --inject-killing-sign") == 1);
    CHECK(run("verify --suite nosuchsuite") == 2);
    // the failing check is named in the report
    const std::string dir = work_dir();
    const int rc = std::system((std::string(SOLSURF_CLI_PATH) +
                                " verify --suite algebra --inject-killing-sign > " + dir +
                                "/rep.txt 2>&1")
                                   .c_str());
    (void)rc;
    const std::string rep = slurp(dir + "/rep.txt");
    CHECK(rep.find("algebra.killing_signature") != std::string::npos);
    CHECK(rep.find("FAIL") != std::string::npos);
}
