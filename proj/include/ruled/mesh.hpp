#pragma once

// Wavefront OBJ export of a ruled surface patch and its striction polyline.

#include <array>
#include <string>
#include <vector>

#include "ruled/ruled_surface.hpp"

namespace ruled {

struct MeshGrid {
  double vmin = -1.0;
  double vmax = 1.0;
  int nt = 64;
  int nv = 16;
};

struct Mesh {
  std::vector<Vec3> vertices;             // row-major over (t, v)
  std::vector<std::array<int, 4>> quads;  // 0-based vertex indices
  std::vector<Vec3> striction;            // empty for cylindrical surfaces
};

/// Grid t_i = i T/(nt − 1), v_j = vmin + j (vmax − vmin)/(nv − 1). Throws
/// precondition for grids smaller than 2 x 2.
Mesh build_mesh(const RuledSurfaceDef& s, const MeshGrid& grid);

std::string to_obj(const Mesh& mesh, const std::string& name = "surface");

/// Throws io on failure.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace ruled
