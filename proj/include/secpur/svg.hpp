#pragma once

#include <string>

#include "secpur/binning.hpp"
#include "secpur/geometry.hpp"
#include "secpur/slicing.hpp"
#include "secpur/topotrace.hpp"

namespace secpur {

/// Three panels: points inside the slice, all points projected, and the frame's axis
/// guides. Both scatter panels carry the R-circle and the polar grid. Each scatter panel
/// is a <g class="points" data-count="n"> holding exactly n <circle> elements; nothing
/// else in the document is a circle.
std::string render_slice_svg(const Dataset& data, const Frame& frame, double h, const PolarGrid& grid,
                             const std::string& title);

/// Index against alpha, one polyline per trace.
std::string render_topotrace_svg(const TopotraceSet& tset, const std::string& title);

}  // namespace secpur
