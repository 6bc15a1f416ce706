#pragma once

// Surface configuration documents. One `key = value` per line, '#' starts a
// comment. Three kinds:
//
//   surface = catalog         surface = expression          surface = tabulated
//   name = paper-cone         base = (cos(t), sin(t), 0)    period = 6.283185307179586
//   param.alpha = 0.3         director = (0, 0, 1)          periodic = true
//                             period = 2*pi                 sample = bx by bz qx qy qz
//                             closed = auto|true|false      ...

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ruled/catalog.hpp"
#include "ruled/ruled_surface.hpp"

namespace ruled {

struct CatalogSpec {
  std::string name;
  Parameters params;
  bool operator==(const CatalogSpec&) const = default;
};

struct ExpressionSpec {
  std::string base;
  std::string director;
  double period = 2.0 * M_PI;
  std::string closed = "auto";
  bool operator==(const ExpressionSpec&) const = default;
};

struct TabulatedSpec {
  std::vector<Vec3> base;
  std::vector<Vec3> director;
  bool periodic = true;
  double period = 2.0 * M_PI;
  bool operator==(const TabulatedSpec&) const = default;
};

struct SurfaceConfig {
  std::variant<CatalogSpec, ExpressionSpec, TabulatedSpec> source;
  bool operator==(const SurfaceConfig&) const = default;
};

/// Throws ParseError (with line and column) for malformed documents and a
/// parse Error when an expression evaluates to a non-finite value.
SurfaceConfig parse_config(std::string_view text);

std::string serialize_config(const SurfaceConfig& config);

RuledSurfaceDef build_surface(const SurfaceConfig& config);

}  // namespace ruled
