#include "spat/grid.hpp"

#include <stdexcept>

namespace spat {

double ImageGrid::sample(double x, double y) const {
  const double u = (x - spec.xmin) / spec.dx() - 0.5;
  const double v = (y - spec.ymin) / spec.dy() - 0.5;
  if (u < 0.0 || v < 0.0 || u > spec.nx - 1.0 || v > spec.ny - 1.0) return 0.0;
  const int i = std::min(static_cast<int>(u), spec.nx - 2);
  const int j = std::min(static_cast<int>(v), spec.ny - 2);
  const double fu = u - i;
  const double fv = v - j;
  return (1.0 - fv) * ((1.0 - fu) * values(j, i) + fu * values(j, i + 1)) +
         fv * ((1.0 - fu) * values(j + 1, i) + fu * values(j + 1, i + 1));
}

ImageGrid rasterize(const Phantom& phantom, const GridSpec& spec,
                    int supersample) {
  if (spec.nx < 1 || spec.ny < 1) {
    throw std::invalid_argument("rasterize: empty grid");
  }
  if (supersample < 1) supersample = 1;
  ImageGrid img(spec);
  const double dx = spec.dx();
  const double dy = spec.dy();
  const double w = 1.0 / (supersample * supersample);
  for (int j = 0; j < spec.ny; ++j) {
    for (int i = 0; i < spec.nx; ++i) {
      double acc = 0.0;
      for (int sj = 0; sj < supersample; ++sj) {
        const double y = spec.ymin + (j + (sj + 0.5) / supersample) * dy;
        for (int si = 0; si < supersample; ++si) {
          const double x = spec.xmin + (i + (si + 0.5) / supersample) * dx;
          acc += phantom_eval(phantom, Vec2(x, y));
        }
      }
      img.values(j, i) = acc * w;
    }
  }
  return img;
}

}  // namespace spat
