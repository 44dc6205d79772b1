#pragma once

#include <optional>
#include <string>

#include "infspec/raster.hpp"
#include "infspec/spectra.hpp"

namespace infspec {

// Static SVG of the occupancy (merged horizontal runs). When a sandwich check
// is given, the inner ball is drawn green, the outer ball red and the
// reference ball of radius r dashed grey.
std::string render_svg(const RasterDomain& raster, const std::optional<SandwichCheck>& sandwich,
                       double r);

}  // namespace infspec
