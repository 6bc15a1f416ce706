#include <sstream>

#include "doctest.h"
#include "ruled/catalog.hpp"
#include "ruled/errors.hpp"
#include "ruled/mesh.hpp"

using namespace ruled;

TEST_CASE("cone mesh grid counts and apex") {
  const RuledSurfaceDef cone = make_catalog_surface("paper-cone");
  const Mesh m = build_mesh(cone, {-2.0, 2.0, 64, 16});
  CHECK(m.vertices.size() == 1024);
  CHECK(m.quads.size() == 945);
  // every ruling passes through the apex at v = 0, midway between columns 7 and 8
  const Vec3 mid = 0.5 * (m.vertices[7] + m.vertices[8]);
  CHECK((mid - Vec3(0, 1, 0)).norm() < 1e-12);
  // the striction polyline collapses to the apex
  REQUIRE(m.striction.size() == 64);
  for (const Vec3& p : m.striction) CHECK((p - Vec3(0, 1, 0)).norm() < 1e-12);
}

TEST_CASE("quads index neighbouring grid vertices") {
  const Mesh m = build_mesh(make_catalog_surface("closed-skew"), {-1, 1, 5, 4});
  REQUIRE(m.quads.size() == 12);
  CHECK(m.quads[0] == std::array<int, 4>{0, 4, 5, 1});
  for (const auto& q : m.quads) {
    for (int k : q) CHECK((k >= 0 && k < 20));
  }
}

TEST_CASE("grids below 2x2 are rejected") {
  CHECK_THROWS_AS(build_mesh(make_catalog_surface("paper-cone"), {-1, 1, 1, 1}), Error);
  CHECK_THROWS_AS(build_mesh(make_catalog_surface("paper-cone"), {-1, 1, 2, 1}), Error);
}

TEST_CASE("cylinders export without a striction object") {
  const Mesh m = build_mesh(make_catalog_surface("cylinder"), {-1, 1, 8, 2});
  CHECK(m.striction.empty());
  CHECK(to_obj(m).find("o striction") == std::string::npos);
}

TEST_CASE("OBJ text layout") {
  const Mesh m = build_mesh(make_catalog_surface("helicoid"), {-1, 1, 3, 2});
  const std::string obj = to_obj(m, "patch");
  std::istringstream in(obj);
  std::string line;
  int v = 0, f = 0, l = 0;
  std::getline(in, line);
  CHECK(line == "o patch");
  while (std::getline(in, line)) {
    if (line.rfind("v ", 0) == 0) ++v;
    if (line.rfind("f ", 0) == 0) {
      ++f;
      int a, b, c, d;
      CHECK(std::sscanf(line.c_str(), "f %d %d %d %d", &a, &b, &c, &d) == 4);
      CHECK(std::min({a, b, c, d}) >= 1);
    }
    if (line.rfind("l ", 0) == 0) ++l;
  }
  CHECK(v == 6 + 3);
  CHECK(f == 2);
  CHECK(l == 1);
  CHECK(obj.find("l 7 8 9") != std::string::npos);
  // deterministic
  CHECK(to_obj(build_mesh(make_catalog_surface("helicoid"), {-1, 1, 3, 2}), "patch") == obj);
}

TEST_CASE("unwritable paths raise io errors") {
  try {
    write_text_file("/nonexistent-dir/x.obj", "o x\n");
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::io);
  }
}
