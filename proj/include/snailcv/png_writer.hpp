#pragma once

#include <string>

#include "snailcv/analysis.hpp"

namespace snailcv::plot {

/// Heat map of a Wigner grid: q along x, p upwards, blue-white-red colormap
/// symmetric about W = 0. Throws std::runtime_error on I/O failure.
void write_heatmap_png(const std::string& path, const analysis::WignerGrid& w);

}  // namespace snailcv::plot
