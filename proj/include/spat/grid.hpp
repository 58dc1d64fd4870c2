#pragma once

#include <Eigen/Dense>

#include "spat/geometry.hpp"

namespace spat {

/// Cartesian raster over an axis-aligned box, pixel-center convention:
/// x_i = xmin + (i + 1/2) dx, i = 0 .. nx-1 (same in y).
struct GridSpec {
  double xmin = -1.0, xmax = 1.0;
  double ymin = -1.0, ymax = 1.0;
  int nx = 0, ny = 0;

  double dx() const { return (xmax - xmin) / nx; }
  double dy() const { return (ymax - ymin) / ny; }
  double x(int i) const { return xmin + (i + 0.5) * dx(); }
  double y(int j) const { return ymin + (j + 0.5) * dy(); }

  bool compatible(const GridSpec& o, double tol = 1e-12) const {
    return nx == o.nx && ny == o.ny && std::abs(xmin - o.xmin) <= tol &&
           std::abs(xmax - o.xmax) <= tol && std::abs(ymin - o.ymin) <= tol &&
           std::abs(ymax - o.ymax) <= tol;
  }

  static GridSpec square(double half_extent, int n) {
    return GridSpec{-half_extent, half_extent, -half_extent, half_extent, n, n};
  }
};

/// Scalar field on a GridSpec; values(j, i) is the pixel at (x_i, y_j).
struct ImageGrid {
  GridSpec spec;
  Eigen::MatrixXd values;

  ImageGrid() = default;
  explicit ImageGrid(const GridSpec& s)
      : spec(s), values(Eigen::MatrixXd::Zero(s.ny, s.nx)) {}

  /// Bilinear interpolation between pixel centers, 0 outside.
  double sample(double x, double y) const;
};

/// Phantom rasterization with subpixel supersampling (area-style
/// anti-aliasing of the disk edges).
ImageGrid rasterize(const Phantom& phantom, const GridSpec& spec,
                    int supersample = 4);

}  // namespace spat
