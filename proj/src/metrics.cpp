#include "spat/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace spat {

double relative_l2(const ImageGrid& reference, const ImageGrid& image) {
  if (!reference.spec.compatible(image.spec)) {
    throw std::invalid_argument("relative_l2: image grids differ");
  }
  const double denom = reference.values.norm();
  const double num = (reference.values - image.values).norm();
  if (denom == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return num / denom;
}

double relative_l2_in_box(const ImageGrid& reference, const ImageGrid& image,
                          const Eigen::AlignedBox2d& box) {
  if (!reference.spec.compatible(image.spec)) {
    throw std::invalid_argument("relative_l2_in_box: image grids differ");
  }
  const GridSpec& g = reference.spec;
  double num = 0.0, denom = 0.0;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      if (!box.contains(Vec2(g.x(i), g.y(j)))) continue;
      const double a = reference.values(j, i);
      const double d = a - image.values(j, i);
      num += d * d;
      denom += a * a;
    }
  }
  if (denom == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::sqrt(num / denom);
}

Metrics compute_metrics(const ImageGrid& reference, const ImageGrid& image,
                        int dilate_px) {
  if (!reference.spec.compatible(image.spec)) {
    throw std::invalid_argument("compute_metrics: image grids differ");
  }
  Metrics m;
  m.relative_l2 = relative_l2(reference, image);
  m.max_abs_error = (reference.values - image.values).cwiseAbs().maxCoeff();

  Eigen::Index ar, ac, br, bc;
  reference.values.cwiseAbs().maxCoeff(&ar, &ac);
  image.values.cwiseAbs().maxCoeff(&br, &bc);
  m.peak_offset_px = std::hypot(static_cast<double>(ar - br),
                                static_cast<double>(ac - bc));

  // Support mask from the reference, Chebyshev dilation.
  const GridSpec& g = reference.spec;
  const double thresh = 1e-12 * reference.values.cwiseAbs().maxCoeff();
  Eigen::MatrixXd mask = Eigen::MatrixXd::Zero(g.ny, g.nx);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      if (std::abs(reference.values(j, i)) > thresh) {
        for (int dj = -dilate_px; dj <= dilate_px; ++dj) {
          for (int di = -dilate_px; di <= dilate_px; ++di) {
            const int jj = j + dj, ii = i + di;
            if (jj >= 0 && jj < g.ny && ii >= 0 && ii < g.nx) mask(jj, ii) = 1.0;
          }
        }
      }
    }
  }
  const double total = image.values.cwiseAbs().sum();
  const double outside =
      ((1.0 - mask.array()) * image.values.array().abs()).sum();
  m.mass_outside_support = total > 0.0 ? outside / total : 0.0;
  return m;
}

}  // namespace spat
