#include "ruled/mesh.hpp"

#include <cstdio>
#include <fstream>

#include "ruled/errors.hpp"

namespace ruled {

Mesh build_mesh(const RuledSurfaceDef& s, const MeshGrid& grid) {
  if (grid.nt < 2 || grid.nv < 2) {
    throw Error(ErrorCode::precondition, "mesh grid needs at least 2 x 2 samples");
  }
  if (!(grid.vmax > grid.vmin)) throw Error(ErrorCode::precondition, "mesh needs vmax > vmin");
  Mesh m;
  m.vertices.reserve(static_cast<std::size_t>(grid.nt) * grid.nv);
  std::vector<double> ts(grid.nt);
  for (int i = 0; i < grid.nt; ++i) {
    ts[i] = s.period * i / (grid.nt - 1);
    const Vec3 k = s.base(ts[i]);
    const Vec3 q = s.director(ts[i]);
    for (int j = 0; j < grid.nv; ++j) {
      const double v = grid.vmin + (grid.vmax - grid.vmin) * j / (grid.nv - 1);
      m.vertices.push_back(k + v * q);
    }
  }
  for (int i = 0; i + 1 < grid.nt; ++i) {
    for (int j = 0; j + 1 < grid.nv; ++j) {
      const int a = i * grid.nv + j;
      const int b = (i + 1) * grid.nv + j;
      m.quads.push_back({a, b, b + 1, a + 1});
    }
  }
  try {
    for (double t : ts) m.striction.push_back(striction_jet(s, t)[0]);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::cylindrical) throw;
    m.striction.clear();
  }
  return m;
}

std::string to_obj(const Mesh& mesh, const std::string& name) {
  std::string out;
  char buf[128];
  auto vertex = [&](const Vec3& p) {
    std::snprintf(buf, sizeof buf, "v %.10g %.10g %.10g\n", p.x() + 0.0, p.y() + 0.0, p.z() + 0.0);
    out += buf;
  };
  out += "o " + name + "\n";
  for (const Vec3& p : mesh.vertices) vertex(p);
  for (const auto& q : mesh.quads) {
    std::snprintf(buf, sizeof buf, "f %d %d %d %d\n", q[0] + 1, q[1] + 1, q[2] + 1, q[3] + 1);
    out += buf;
  }
  if (!mesh.striction.empty()) {
    out += "o striction\n";
    const int first = static_cast<int>(mesh.vertices.size()) + 1;
    for (const Vec3& p : mesh.striction) vertex(p);
    out += "l";
    for (std::size_t i = 0; i < mesh.striction.size(); ++i) {
      out += " " + std::to_string(first + static_cast<int>(i));
    }
    out += "\n";
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::io, "cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw Error(ErrorCode::io, "failed writing '" + path + "'");
}

}  // namespace ruled
