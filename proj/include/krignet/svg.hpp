#pragma once

#include <string>

#include "krignet/path_ensemble.hpp"

namespace krignet {

/// Line plot of a 1-D ensemble: one polyline per path over the grid, axis
/// box with min/max labels. The bytes depend only on the ensemble (fixed
/// viewport, fixed palette, fixed numeric formatting — no timestamps), so
/// replays reproduce the file exactly.
void write_ensemble_svg(const std::string& path, const PathEnsemble& ensemble);

}  // namespace krignet
