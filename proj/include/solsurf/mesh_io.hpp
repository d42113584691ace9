#ifndef SOLSURF_MESH_IO_HPP
#define SOLSURF_MESH_IO_HPP

#include <string>
#include <utility>
#include <vector>

#include "solsurf/frame.hpp"
#include "solsurf/painleve.hpp"
#include "solsurf/symmetry.hpp"

namespace solsurf {

// All writers emit full double precision (17 significant digits) so that a
// read-back reproduces the values bit-exactly. Throws IoError on failure.

void write_trajectory_csv(const std::string& path, const Trajectory& tr);
void write_rsolution_csv(const std::string& path, const RSolution& r);

// Columns t,lambda,F1,F2,F3; excluded nodes are skipped.
void write_surface_csv(const std::string& path, const SurfaceGrid& grid);

// ASCII OBJ: one `v c1 c2 c3` per valid node in row-major order, quads split
// into two triangles wherever all four corners are valid.
void write_surface_obj(const std::string& path, const SurfaceGrid& grid);

// Columns t,lambda,g11,g12,g22,det_g,L11,L12,L22,K,H,class with empty fields
// where undefined.
void write_geometry_csv(const std::string& path, const SurfaceGrid& grid);

void write_umbilic_csv(const std::string& path,
                       const std::vector<std::pair<double, double>>& points);

// Reader for the surface CSV (round-trip checks and downstream tooling).
struct SurfaceCsvRow {
    double t, lambda;
    AlgebraVector F;
};
std::vector<SurfaceCsvRow> read_surface_csv(const std::string& path);

std::string format_full(double v);

} // namespace solsurf

#endif
