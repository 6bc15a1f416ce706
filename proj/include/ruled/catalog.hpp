#pragma once

// Named surfaces with adjustable parameters.

#include <map>
#include <string>
#include <vector>

#include "ruled/ruled_surface.hpp"

namespace ruled {

using Parameters = std::map<std::string, double>;

struct CatalogEntry {
  std::string name;
  std::string summary;
  Parameters defaults;
};

const std::vector<CatalogEntry>& catalog_entries();

/// Throws a parse error for unknown names or parameters.
RuledSurfaceDef make_catalog_surface(const std::string& name, const Parameters& params = {});

}  // namespace ruled
