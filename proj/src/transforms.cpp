#include "spat/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "spat/quadrature.hpp"

namespace spat {

namespace {
constexpr double kPi = std::numbers::pi;
}

RadialProfile::RadialProfile(double rmax, Eigen::VectorXd values, double tol)
    : r_max(rmax), samples(std::move(values)), decay_tol(tol) {
  if (!(r_max > 0.0)) {
    throw std::invalid_argument("RadialProfile: r_max must be positive");
  }
  if (samples.size() < 16) {
    throw std::invalid_argument("RadialProfile: need at least 16 nodes");
  }
  const double scale = std::max(1.0, samples.cwiseAbs().maxCoeff());
  if (std::abs(samples[samples.size() - 1]) > decay_tol * scale) {
    throw std::invalid_argument(
        "RadialProfile: profile does not decay to ~0 at r_max");
  }
}

double RadialProfile::value(double r) const {
  return lerp_uniform(samples, 0.0, step(), r);
}

RadialProfile RadialProfile::tabulate(const std::function<double(double)>& f,
                                      double rmax, int n, double tol) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = f(rmax * i / (n - 1));
  return RadialProfile(rmax, std::move(v), tol);
}

double abel_forward(const RadialProfile& psi, double y) {
  if (!(y >= 0.0) || y >= psi.r_max) {
    throw std::domain_error("abel_forward: need 0 <= y < r_max");
  }
  const double u_max = std::sqrt(psi.r_max * psi.r_max - y * y);
  // Panel size tied to the sampling step of the profile.
  const int panels = std::clamp(
      static_cast<int>(std::ceil(u_max / (32.0 * psi.step()))), 1, 128);
  const double y2 = y * y;
  return 2.0 * integrate_gl(
                   [&](double u) { return psi.value(std::sqrt(y2 + u * u)); },
                   0.0, u_max, panels);
}

double abel_inverse(const RadialProfile& phi, double y) {
  const double h = phi.step();
  if (!(y - 2.0 * h > 0.0) || !(y + 2.0 * h < phi.r_max)) {
    throw std::domain_error(
        "abel_inverse: y too close to 0 or r_max for the stencil");
  }
  const double d = derivative5(
      [&](double yy) { return abel_forward(phi, yy); }, y, h);
  return -d / (2.0 * kPi * y);
}

Sinogram radon_forward(const ImageGrid& image, int n_angles, int n_offsets,
                       double s_max) {
  if (n_angles < 1 || n_offsets < 2 || !(s_max > 0.0)) {
    throw std::invalid_argument("radon_forward: bad sinogram spec");
  }
  Sinogram sino(n_angles, n_offsets, s_max);
  const GridSpec& g = image.spec;
  const double corner = std::max({Vec2(g.xmin, g.ymin).norm(),
                                  Vec2(g.xmin, g.ymax).norm(),
                                  Vec2(g.xmax, g.ymin).norm(),
                                  Vec2(g.xmax, g.ymax).norm()});
  const double du = 0.5 * std::min(g.dx(), g.dy());
  const int n_u = static_cast<int>(std::ceil(2.0 * corner / du)) + 1;
  for (int j = 0; j < n_angles; ++j) {
    const Direction theta = Direction::from_angle(sino.angle(j));
    const Vec2 t = theta.vec();
    const Vec2 perp = theta.perp();
    for (int i = 0; i < n_offsets; ++i) {
      const Vec2 base = sino.offset(i) * t;
      double acc = 0.0;
      for (int k = 0; k < n_u; ++k) {
        const double u = -corner + (k + 0.5) * du;
        const Vec2 p = base + u * perp;
        acc += image.sample(p.x(), p.y());
      }
      sino.values(i, j) = acc * du;
    }
  }
  return sino;
}

ImageGrid radon_inverse(const Sinogram& sino, const GridSpec& grid) {
  const int n_s = sino.n_offsets();
  const int n_a = sino.n_angles;
  if (n_s < 4 || n_a < 1) {
    throw std::invalid_argument("radon_inverse: sinogram too small");
  }
  const double ds = sino.ds();

  // Band-limited ramp (Ram-Lak) kernel, cutoff at the offset Nyquist
  // frequency: h(0) = 1/(4 ds^2), h(m) = -1/(pi^2 m^2 ds^2) for odd m.
  Eigen::VectorXd kernel = Eigen::VectorXd::Zero(2 * n_s - 1);
  for (int m = -(n_s - 1); m <= n_s - 1; ++m) {
    double v = 0.0;
    if (m == 0) {
      v = 1.0 / (4.0 * ds * ds);
    } else if (m % 2 != 0) {
      v = -1.0 / (kPi * kPi * m * m * ds * ds);
    }
    kernel[m + n_s - 1] = v;
  }
  Eigen::MatrixXd toeplitz(n_s, n_s);
  for (int i = 0; i < n_s; ++i) {
    for (int k = 0; k < n_s; ++k) toeplitz(i, k) = kernel[i - k + n_s - 1];
  }
  const Eigen::MatrixXd filtered = ds * (toeplitz * sino.values);

  ImageGrid out(grid);
  const double dtheta = 2.0 * kPi / n_a;
  Eigen::MatrixXd dirs(2, n_a);
  for (int j = 0; j < n_a; ++j) {
    dirs(0, j) = std::cos(sino.angle(j));
    dirs(1, j) = std::sin(sino.angle(j));
  }
  for (int jy = 0; jy < grid.ny; ++jy) {
    const double y = grid.y(jy);
    for (int ix = 0; ix < grid.nx; ++ix) {
      const double x = grid.x(ix);
      double acc = 0.0;
      for (int j = 0; j < n_a; ++j) {
        const double s = x * dirs(0, j) + y * dirs(1, j);
        acc += lerp_uniform(filtered.col(j), -sino.s_max, ds, s);
      }
      out.values(jy, ix) = 0.5 * dtheta * acc;
    }
  }
  return out;
}

double wave2d_pressure(const std::function<double(double)>& mean, double t,
                       double h, int n_quad) {
  const auto weighted = [&](double tau) {
    const double a = std::abs(tau);
    // int_0^t r M(r) / sqrt(t^2 - r^2) dr with r = |tau| sin(alpha);
    // odd in tau.
    const double val = integrate_trapezoid(
        [&](double alpha) {
          const double r = a * std::sin(alpha);
          return r * mean(r);
        },
        0.0, 0.5 * kPi, n_quad);
    return tau >= 0.0 ? val : -val;
  };
  return derivative5(weighted, t, h);
}

double wave2d_from_spherical_means(const SphericalMeanData& means, int center,
                                   double t, int n_quad) {
  if (center < 0 || center >= static_cast<int>(means.centers.size())) {
    throw std::invalid_argument("wave2d_from_spherical_means: bad center");
  }
  if (!(t > 0.0) || t >= means.r_max) {
    throw std::domain_error("wave2d_from_spherical_means: t out of (0, r_max)");
  }
  const double dr = means.dr();
  const Eigen::VectorXd row = means.values.row(center);
  const auto mean = [&](double r) {
    return lerp_uniform_anchored(row, 0.5 * dr, dr, r, 0.0);
  };
  return wave2d_pressure(mean, t, std::min(dr, t / 100.0), n_quad);
}

double spherical_means_from_wave_2d(
    const Eigen::Ref<const Eigen::VectorXd>& pressure, double dt, double r,
    int n_quad) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(r > 0.0) || r > pressure.size() * dt) {
    throw std::domain_error(
        "spherical_means_from_wave_2d: r beyond the sampled time range");
  }
  const double val = integrate_trapezoid(
      [&](double alpha) {
        return lerp_uniform_anchored(pressure, 0.5 * dt, dt, r * std::sin(alpha),
                                     0.0);
      },
      0.0, 0.5 * kPi, n_quad);
  return 2.0 / kPi * val;
}

double spherical_means_from_wave_3d(
    const Eigen::Ref<const Eigen::VectorXd>& pressure, double dt, double r) {
  if (!(r > 0.0)) {
    throw std::invalid_argument("spherical_means_from_wave_3d: r must be > 0");
  }
  const Eigen::Index n = pressure.size();
  if (r > n * dt) {
    throw std::domain_error(
        "spherical_means_from_wave_3d: r beyond the sampled time range");
  }
  // Exact integral of the piecewise-linear interpolant through the half-step
  // samples, extended by its first value on the leading half cell (so a
  // constant series integrates to exactly that constant).
  double acc = pressure[0] * std::min(r, 0.5 * dt);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    const double a = (i + 0.5) * dt;
    if (a >= r) break;
    const double b = std::min(r, a + dt);
    const double pb =
        pressure[i] + (pressure[i + 1] - pressure[i]) * (b - a) / dt;
    acc += 0.5 * (pressure[i] + pb) * (b - a);
  }
  return acc / r;
}

}  // namespace spat
