#pragma once

#include "spat/grid.hpp"

namespace spat {

/// Error metrics of an image b against a reference a on the same grid.
/// relative_l2 is ||a - b|| / ||a||; the support mask comes from the
/// nonzero pixels of a, dilated by `dilate_px` pixels (Chebyshev).
struct Metrics {
  double relative_l2 = 0.0;
  double max_abs_error = 0.0;
  double peak_offset_px = 0.0;
  double mass_outside_support = 0.0;
};

Metrics compute_metrics(const ImageGrid& reference, const ImageGrid& image,
                        int dilate_px = 4);

/// ||a - b|| / ||a|| restricted to a sub-box (used for half-space
/// reconstructions that are only claimed inside the phantom box).
double relative_l2_in_box(const ImageGrid& reference, const ImageGrid& image,
                          const Eigen::AlignedBox2d& box);

double relative_l2(const ImageGrid& reference, const ImageGrid& image);

}  // namespace spat
