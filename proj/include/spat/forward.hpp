#pragma once

#include <Eigen/Dense>

#include <string>

#include "spat/geometry.hpp"
#include "spat/transforms.hpp"

namespace spat {

enum class Mode { m1, m2, m3, m4 };

std::string mode_name(Mode mode);
Mode parse_mode(const std::string& name);

/// Sensor placement and time sampling for one measurement mode.
///
/// m1/m2 sample boundary points (uniform in the parametric boundary angle
/// for disk and ellipse, uniform in xi_1 over [-L, L] on the half-space
/// boundary); m3/m4 sample tangent directions theta_j uniform on S^1.
/// Times sit on the half-step grid t_i = (i + 1/2) dt, which avoids t = 0
/// and the tangency kinks of disk phantoms.
struct SensorLayout {
  Mode mode = Mode::m1;
  ConvexDomain domain = ConvexDomain::disk(1.0);
  int n_sensors = 0;
  int n_t = 0;
  double t_max = 0.0;
  double half_width = 0.0;  // L, half-space m1/m2 only

  double dt() const { return t_max / n_t; }
  double time(int i) const { return (i + 0.5) * dt(); }

  /// Boundary point of sensor j (m1/m2).
  Vec2 sensor_position(int j) const;
  /// Tangent direction theta_j (m3/m4).
  Direction sensor_direction(int j) const;

  /// Structural checks (counts positive, mode/domain combination allowed).
  void validate() const;
};

/// Sampled measurements plus provenance for downstream compatibility checks.
struct MeasurementData {
  SensorLayout layout;
  Eigen::MatrixXd values;  // (n_sensors, n_t)
  std::string phantom_hash;

  MeasurementData() = default;
  explicit MeasurementData(const SensorLayout& l)
      : layout(l),
        values(Eigen::MatrixXd::Zero(l.n_sensors, l.n_t)) {}
};

/// t_max large enough for complete data of this phantom/layout pairing.
double default_t_max(const ConvexDomain& domain, const Phantom& phantom,
                     double half_width);

/// Vertical line detectors: m1(xi; t) is the 2D wave solution with initial
/// value f, synthesized from the analytic circular means.
MeasurementData simulate_m1(const Phantom& phantom, const SensorLayout& layout,
                            int n_quad = 512);

/// Point detectors: m2(xi; t) = (1/2) d/dt M2[f](xi; t).
MeasurementData simulate_m2(const Phantom& phantom, const SensorLayout& layout);

/// Vertical plane detectors: m3(theta; t) = (1/2) R[f](<zeta, theta> - t).
MeasurementData simulate_m3(const Phantom& phantom, const SensorLayout& layout);

/// Horizontal line detectors:
/// m4(theta; t) = (1/(2 pi)) d/dt int_0^t F(-rho)/sqrt(t^2-rho^2) drho.
MeasurementData simulate_m4(const Phantom& phantom, const SensorLayout& layout,
                            int n_quad = 512);

MeasurementData simulate(const Phantom& phantom, const SensorLayout& layout,
                         int n_quad = 512);

}  // namespace spat
