#pragma once

#include <Eigen/Dense>

#include <functional>
#include <numbers>
#include <vector>

#include "spat/geometry.hpp"
#include "spat/grid.hpp"

namespace spat {

/// Radial function on the uniform grid r_i = i * r_max / (n - 1),
/// i = 0 .. n-1, linearly interpolated, assumed ~0 at and beyond r_max.
struct RadialProfile {
  double r_max = 0.0;
  Eigen::VectorXd samples;
  double decay_tol = 1e-3;

  RadialProfile() = default;
  RadialProfile(double rmax, Eigen::VectorXd values, double tol = 1e-3);

  int size() const { return static_cast<int>(samples.size()); }
  double step() const { return r_max / (size() - 1); }
  /// Linear interpolation; 0 for r outside [0, r_max].
  double value(double r) const;

  static RadialProfile tabulate(const std::function<double(double)>& f,
                                double r_max, int n, double tol = 1e-3);
};

/// Radon data R[g](s, theta) on n_s uniform offsets over [-s_max, s_max]
/// (endpoints included) and n_theta uniform angles over [0, 2pi).
struct Sinogram {
  int n_angles = 0;
  double s_max = 0.0;
  Eigen::MatrixXd values;  // (n_s, n_angles)

  Sinogram() = default;
  Sinogram(int num_angles, int num_offsets, double smax)
      : n_angles(num_angles),
        s_max(smax),
        values(Eigen::MatrixXd::Zero(num_offsets, num_angles)) {}

  int n_offsets() const { return static_cast<int>(values.rows()); }
  double angle(int j) const { return 2.0 * std::numbers::pi * j / n_angles; }
  double ds() const { return 2.0 * s_max / (n_offsets() - 1); }
  double offset(int i) const { return -s_max + i * ds(); }
};

/// Circular means M2[f](xi_j; r_m) for boundary centers xi_j and half-step
/// radii r_m = (m + 1/2) * r_max / n_r, m = 0 .. n_r-1.  The half-step grid
/// keeps the log kernel of the backprojection formulas off its singularity.
struct SphericalMeanData {
  std::vector<Vec2> centers;
  double r_max = 0.0;
  Eigen::MatrixXd values;  // (centers, n_r)

  int n_r() const { return static_cast<int>(values.cols()); }
  double dr() const { return r_max / n_r(); }
  double radius(int m) const { return (m + 0.5) * dr(); }
};

/// Abel transform A[psi](y) = 2 int_y^inf r psi(r) / sqrt(r^2 - y^2) dr of a
/// decaying radial profile.  The substitution r = sqrt(y^2 + u^2) removes
/// the endpoint singularity exactly; composite 64-node Gauss-Legendre in u.
double abel_forward(const RadialProfile& psi, double y);

/// Inverse Abel transform  -(A[phi])'(y) / (2 pi y)  with the derivative
/// from a five-point stencil of abel_forward at the profile's grid step.
/// y must keep the stencil inside (0, r_max).
double abel_inverse(const RadialProfile& phi, double y);

/// Line integrals of a raster image by bilinear sampling at half-pixel steps.
Sinogram radon_forward(const ImageGrid& image, int n_angles, int n_offsets,
                       double s_max);

/// Inverse Radon transform as filtered backprojection: band-limited ramp
/// filter (cutoff at the offset Nyquist frequency) per angle, then
/// backprojection over the full circle with weight dtheta / 2.
ImageGrid radon_inverse(const Sinogram& sino, const GridSpec& grid);

/// Solution of the 2D wave equation from circular means,
///   p(x; t) = d/dt int_0^t r M(r) / sqrt(t^2 - r^2) dr,
/// with r = t sin(alpha) quadrature (n_quad trapezoid nodes) and a
/// five-point time stencil of step h.
double wave2d_pressure(const std::function<double(double)>& mean, double t,
                       double h, int n_quad = 512);

/// Same, reading M from sampled data at the given center index; stencil
/// step min(grid step, t/100).
double wave2d_from_spherical_means(const SphericalMeanData& means, int center,
                                   double t, int n_quad = 512);

/// Circular means from a time series of the 2D wave solution at one point:
///   M2[f](x; r) = (2/pi) int_0^r p(x; t) / sqrt(r^2 - t^2) dt,
/// with t = r sin(alpha) and 512 trapezoid nodes; p linearly interpolated,
/// anchored to p = 0 at t = 0.
double spherical_means_from_wave_2d(
    const Eigen::Ref<const Eigen::VectorXd>& pressure, double dt, double r,
    int n_quad = 512);

/// M3[f](x; r) = (1/r) int_0^r p(x; t) dt: exact integral of the linear
/// interpolant through the half-step samples (first value extended to t = 0).
double spherical_means_from_wave_3d(
    const Eigen::Ref<const Eigen::VectorXd>& pressure, double dt, double r);

}  // namespace spat
