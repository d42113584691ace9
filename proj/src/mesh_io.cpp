#include "solsurf/mesh_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace solsurf {

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    return out;
}

} // namespace

void write_trajectory_csv(const std::string& path, const Trajectory& tr) {
    auto out = open_out(path);
    out << "t,x,x_t\n";
    for (std::size_t i = 0; i < tr.size(); ++i)
        out << format_full(tr.t(i)) << ',' << format_full(tr.x(i)) << ','
            << format_full(tr.x_t(i)) << '\n';
    if (!out) throw IoError("write failed: " + path);
}

void write_rsolution_csv(const std::string& path, const RSolution& r) {
    auto out = open_out(path);
    out << "t,R,R_t\n";
    for (std::size_t i = 0; i < r.size(); ++i)
        out << format_full(r.t(i)) << ',' << format_full(r.r(i)) << ',' << format_full(r.r_t(i))
            << '\n';
    if (!out) throw IoError("write failed: " + path);
}

void write_surface_csv(const std::string& path, const SurfaceGrid& grid) {
    auto out = open_out(path);
    out << "t,lambda,F1,F2,F3\n";
    for (int i = 0; i < grid.n_t; ++i)
        for (int j = 0; j < grid.n_lambda; ++j) {
            const SurfaceNode& n = grid.at(i, j);
            if (!n.valid) continue;
            out << format_full(n.t) << ',' << format_full(n.lambda) << ',' << format_full(n.F.c1)
                << ',' << format_full(n.F.c2) << ',' << format_full(n.F.c3) << '\n';
        }
    if (!out) throw IoError("write failed: " + path);
}

void write_surface_obj(const std::string& path, const SurfaceGrid& grid) {
    auto out = open_out(path);
    std::vector<int> index(grid.n_t * grid.n_lambda, 0);
    int next = 1;  // OBJ indices are 1-based
    for (int i = 0; i < grid.n_t; ++i)
        for (int j = 0; j < grid.n_lambda; ++j) {
            const SurfaceNode& n = grid.at(i, j);
            if (!n.valid) continue;
            index[i * grid.n_lambda + j] = next++;
            out << "v " << format_full(n.F.c1) << ' ' << format_full(n.F.c2) << ' '
                << format_full(n.F.c3) << '\n';
        }
    for (int i = 0; i + 1 < grid.n_t; ++i)
        for (int j = 0; j + 1 < grid.n_lambda; ++j) {
            const int a = index[i * grid.n_lambda + j];
            const int b = index[i * grid.n_lambda + j + 1];
            const int c = index[(i + 1) * grid.n_lambda + j + 1];
            const int d = index[(i + 1) * grid.n_lambda + j];
            if (a && b && c && d) {
                out << "f " << a << ' ' << b << ' ' << c << '\n';
                out << "f " << a << ' ' << c << ' ' << d << '\n';
            }
        }
    if (!out) throw IoError("write failed: " + path);
}

void write_geometry_csv(const std::string& path, const SurfaceGrid& grid) {
    auto out = open_out(path);
    out << "t,lambda,g11,g12,g22,det_g,L11,L12,L22,K,H,class\n";
    auto cls_name = [](Classification c) {
        switch (c) {
            case Classification::Regular: return "Regular";
            case Classification::DegenerateMetric: return "DegenerateMetric";
            case Classification::IsotropicNormal: return "IsotropicNormal";
        }
        return "?";
    };
    for (int i = 0; i < grid.n_t; ++i)
        for (int j = 0; j < grid.n_lambda; ++j) {
            const SurfaceNode& n = grid.at(i, j);
            if (!n.valid || !n.has_geometry) continue;
            out << format_full(n.t) << ',' << format_full(n.lambda) << ',' << format_full(n.g11)
                << ',' << format_full(n.g12) << ',' << format_full(n.g22) << ','
                << format_full(n.det_g) << ',';
            if (n.has_second)
                out << format_full(n.L11) << ',' << format_full(n.L12) << ','
                    << format_full(n.L22) << ',' << format_full(n.K) << ',' << format_full(n.H)
                    << ',';
            else
                out << ",,,,,";
            out << cls_name(n.cls) << '\n';
        }
    if (!out) throw IoError("write failed: " + path);
}

void write_umbilic_csv(const std::string& path,
                       const std::vector<std::pair<double, double>>& points) {
    auto out = open_out(path);
    out << "t,lambda\n";
    for (const auto& p : points)
        out << format_full(p.first) << ',' << format_full(p.second) << '\n';
    if (!out) throw IoError("write failed: " + path);
}

std::vector<SurfaceCsvRow> read_surface_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty surface CSV: " + path);
    std::vector<SurfaceCsvRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        SurfaceCsvRow r{};
        char comma;
        if (!(ss >> r.t >> comma >> r.lambda >> comma >> r.F.c1 >> comma >> r.F.c2 >> comma >>
              r.F.c3))
            throw IoError("malformed surface CSV row: " + line);
        rows.push_back(r);
    }
    return rows;
}

} // namespace solsurf
