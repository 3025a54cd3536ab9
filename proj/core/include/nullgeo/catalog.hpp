// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "nullgeo/hypersurface.hpp"

namespace nullgeo {

struct GridAxis {
  std::string name;
  double lo = 0.0, hi = 1.0;
  int count = 1;
};

struct CatalogDefaults {
  std::vector<GridAxis> grid;
  std::vector<std::string> checks;
};

std::vector<std::string> catalog_names();

// Builds a catalog hypersurface. Graph entries validate the eikonal
// condition |grad f| = rho(f) on the default grid before returning
// (EikonalViolated otherwise); invalid parameters raise BadParams.
HypersurfaceMap catalog_build(const std::string& name, const nlohmann::json& params);

CatalogDefaults catalog_defaults(const std::string& name, const nlohmann::json& params);

std::string catalog_describe(const std::string& name);

}  // namespace nullgeo
