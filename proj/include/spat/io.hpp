#pragma once

#include <string>

#include "spat/forward.hpp"
#include "spat/grid.hpp"

namespace spat {

/// Measurement CSV: '#'-prefixed key=value provenance lines (mode, domain,
/// grids, phantom hash), then one row per time sample with the time in the
/// first column and one column per sensor, 17 significant digits.
void write_measurement_csv(const std::string& path, const MeasurementData& data);
MeasurementData read_measurement_csv(const std::string& path);

/// Image CSV: '#' header with the bounding box and dimensions, then ny rows
/// of nx comma-separated values (row j holds y index j, i.e. y increasing).
void write_image_csv(const std::string& path, const ImageGrid& image);
ImageGrid read_image_csv(const std::string& path);

/// 8-bit min-max normalized P2 PGM, top row = ymax.  Presentation only.
void write_image_pgm(const std::string& path, const ImageGrid& image);

}  // namespace spat
