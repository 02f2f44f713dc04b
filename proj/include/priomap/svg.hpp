#pragma once

#include <string>
#include <vector>

#include "priomap/errors.hpp"
#include "priomap/model.hpp"

namespace priomap {

struct SvgOptions {
  int width = 640;   // per panel
  int height = 640;
  bool show_labels = false;
  double point_radius = 4.0;
};

/// Standalone SVG scatter of the priority map: origin at the lower left,
/// frontier items highlighted and joined by the upper-right hull polyline.
/// d = 2 renders one panel; d = 3 renders three pairwise projection panels,
/// each with the hull of the projected points. `frontier` must carry one
/// result per item (as produced by detect_frontier).
std::string render_priority_map_svg(const PriorityMap& map,
                                    const std::vector<FrontierResult>& frontier,
                                    const SvgOptions& options = {});

}  // namespace priomap
