#pragma once

#include <Eigen/Dense>

#include <functional>

namespace spat {

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre recurrence.
struct GaussLegendre {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};
GaussLegendre gauss_legendre(int n);

/// Composite Gauss-Legendre over [a, b] with `panels` equal panels of
/// `nodes_per_panel` nodes each.
double integrate_gl(const std::function<double(double)>& f, double a, double b,
                    int panels, int nodes_per_panel = 64);

/// Trapezoid rule on n+1 equispaced nodes over [a, b].
double integrate_trapezoid(const std::function<double(double)>& f, double a,
                           double b, int n);

/// Five-point central first derivative (the Richardson extrapolation of the
/// two-point stencil): (-f(x+2h) + 8 f(x+h) - 8 f(x-h) + f(x-2h)) / (12 h).
double derivative5(const std::function<double(double)>& f, double x, double h);

/// Linear interpolation of uniform samples placed at first + i * step,
/// i = 0 .. n-1.  Returns 0 outside the sampled interval.
double lerp_uniform(const Eigen::Ref<const Eigen::VectorXd>& samples,
                    double first, double step, double x);

/// Same grid, but values ramp linearly to 0 at x = zero_left below the first
/// node and are 0 beyond the last node.  Used for time series that vanish at
/// t = 0 and are sampled on the half-step grid.
double lerp_uniform_anchored(const Eigen::Ref<const Eigen::VectorXd>& samples,
                             double first, double step, double x,
                             double zero_left);

}  // namespace spat
