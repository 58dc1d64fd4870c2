#include "spat/forward.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "spat/quadrature.hpp"

namespace spat {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::string mode_name(Mode mode) {
  switch (mode) {
    case Mode::m1: return "m1";
    case Mode::m2: return "m2";
    case Mode::m3: return "m3";
    case Mode::m4: return "m4";
  }
  throw std::logic_error("unreachable");
}

Mode parse_mode(const std::string& name) {
  if (name == "m1") return Mode::m1;
  if (name == "m2") return Mode::m2;
  if (name == "m3") return Mode::m3;
  if (name == "m4") return Mode::m4;
  throw std::invalid_argument("unknown mode '" + name +
                              "' (expected m1, m2, m3, or m4)");
}

Vec2 SensorLayout::sensor_position(int j) const {
  if (mode != Mode::m1 && mode != Mode::m2) {
    throw std::logic_error("sensor_position is defined for m1/m2 layouts");
  }
  if (domain.kind() == DomainKind::halfspace) {
    const double x =
        n_sensors == 1 ? 0.0
                       : -half_width + 2.0 * half_width * j / (n_sensors - 1);
    return Vec2(x, 0.0);
  }
  return domain.boundary_point(2.0 * kPi * j / n_sensors);
}

Direction SensorLayout::sensor_direction(int j) const {
  if (mode != Mode::m3 && mode != Mode::m4) {
    throw std::logic_error("sensor_direction is defined for m3/m4 layouts");
  }
  return Direction::from_angle(2.0 * kPi * j / n_sensors);
}

void SensorLayout::validate() const {
  if (n_sensors < 1) throw std::invalid_argument("layout: n_sensors >= 1");
  if (n_t < 1) throw std::invalid_argument("layout: n_t >= 1");
  if (!(t_max > 0.0)) throw std::invalid_argument("layout: t_max > 0");
  if ((mode == Mode::m3 || mode == Mode::m4) && !domain.bounded()) {
    throw std::invalid_argument(
        mode_name(mode) +
        " requires a bounded strictly convex domain (disk or ellipse)");
  }
  if (domain.kind() == DomainKind::halfspace && !(half_width > 0.0)) {
    throw std::invalid_argument("half-space layout: half_width (L) > 0");
  }
}

double default_t_max(const ConvexDomain& domain, const Phantom& phantom,
                     double half_width) {
  double t = 0.0;
  if (domain.bounded()) {
    t = domain.diameter() + phantom.support_radius();
  } else {
    for (const auto& p : phantom.primitives()) {
      for (double sx : {-half_width, half_width}) {
        t = std::max(t, (p.center - Vec2(sx, 0.0)).norm() + p.radius);
      }
    }
    if (t == 0.0) t = 2.0 * half_width;  // empty phantom
  }
  return 1.05 * t + 0.1;
}

namespace {

// Full-data requirement: every sensor entity must have heard the whole
// phantom by t_max.
void check_time_coverage(const Phantom& phantom, const SensorLayout& layout) {
  if (phantom.empty()) return;
  double needed = 0.0;
  if (layout.domain.bounded()) {
    needed = layout.domain.diameter() + phantom.support_radius();
  } else {
    for (const auto& p : phantom.primitives()) {
      for (double sx : {-layout.half_width, layout.half_width}) {
        needed = std::max(needed, (p.center - Vec2(sx, 0.0)).norm() + p.radius);
      }
    }
  }
  if (layout.t_max < needed) {
    throw std::invalid_argument(
        "layout: t_max = " + std::to_string(layout.t_max) +
        " is below the full-data requirement " + std::to_string(needed));
  }
}

void check_common(const Phantom& phantom, const SensorLayout& layout,
                  Mode expected) {
  layout.validate();
  if (layout.mode != expected) {
    throw std::invalid_argument("layout mode is " + mode_name(layout.mode) +
                                ", expected " + mode_name(expected));
  }
  phantom.require_inside(layout.domain);
  check_time_coverage(phantom, layout);
}

// Five-point stencil over values tabulated on the extended half-step grid
// g_i = (i - 1.5) dt, i = 0 .. n_t+3, so that g_{i+2} = t_i.
Eigen::VectorXd stencil_rows(const Eigen::VectorXd& table, int n_t, double dt) {
  Eigen::VectorXd out(n_t);
  for (int i = 0; i < n_t; ++i) {
    out[i] = (-table[i + 4] + 8.0 * table[i + 3] - 8.0 * table[i + 1] +
              table[i]) /
             (12.0 * dt);
  }
  return out;
}

}  // namespace

MeasurementData simulate_m1(const Phantom& phantom, const SensorLayout& layout,
                            int n_quad) {
  check_common(phantom, layout, Mode::m1);
  MeasurementData data(layout);
  data.phantom_hash = phantom.hash();
  const double dt = layout.dt();
  Eigen::VectorXd table(layout.n_t + 4);
  for (int j = 0; j < layout.n_sensors; ++j) {
    const Vec2 xi = layout.sensor_position(j);
    for (int i = 0; i < layout.n_t + 4; ++i) {
      const double tau = (i - 1.5) * dt;
      const double a = std::abs(tau);
      // int_0^{pi/2} r M2[f](xi; r) dalpha at r = |tau| sin(alpha); odd in tau.
      double val = integrate_trapezoid(
          [&](double alpha) {
            const double r = a * std::sin(alpha);
            return r * phantom_spherical_mean(phantom, xi, r);
          },
          0.0, 0.5 * kPi, n_quad);
      table[i] = tau >= 0.0 ? val : -val;
    }
    data.values.row(j) = stencil_rows(table, layout.n_t, dt);
  }
  return data;
}

MeasurementData simulate_m2(const Phantom& phantom,
                            const SensorLayout& layout) {
  check_common(phantom, layout, Mode::m2);
  MeasurementData data(layout);
  data.phantom_hash = phantom.hash();
  const double dt = layout.dt();
  Eigen::VectorXd table(layout.n_t + 4);
  for (int j = 0; j < layout.n_sensors; ++j) {
    const Vec2 xi = layout.sensor_position(j);
    for (int i = 0; i < layout.n_t + 4; ++i) {
      const double tau = (i - 1.5) * dt;
      // M2 is even in the radius.
      table[i] = phantom_spherical_mean(phantom, xi, std::abs(tau));
    }
    data.values.row(j) = 0.5 * stencil_rows(table, layout.n_t, dt);
  }
  return data;
}

MeasurementData simulate_m3(const Phantom& phantom,
                            const SensorLayout& layout) {
  check_common(phantom, layout, Mode::m3);
  MeasurementData data(layout);
  data.phantom_hash = phantom.hash();
  for (int j = 0; j < layout.n_sensors; ++j) {
    const Direction theta = layout.sensor_direction(j);
    const double h = layout.domain.support_value(theta);
    for (int i = 0; i < layout.n_t; ++i) {
      data.values(j, i) =
          0.5 * phantom_radon(phantom, h - layout.time(i), theta);
    }
  }
  return data;
}

MeasurementData simulate_m4(const Phantom& phantom, const SensorLayout& layout,
                            int n_quad) {
  check_common(phantom, layout, Mode::m4);
  MeasurementData data(layout);
  data.phantom_hash = phantom.hash();
  const double dt = layout.dt();
  Eigen::VectorXd table(layout.n_t + 4);
  for (int j = 0; j < layout.n_sensors; ++j) {
    const Direction theta = layout.sensor_direction(j);
    const double h = layout.domain.support_value(theta);
    for (int i = 0; i < layout.n_t + 4; ++i) {
      const double a = std::abs((i - 1.5) * dt);
      // int_0^t F(-rho)/sqrt(t^2-rho^2) drho at rho = t sin(alpha); even in t.
      table[i] = integrate_trapezoid(
          [&](double alpha) {
            return phantom_radon(phantom, h - a * std::sin(alpha), theta);
          },
          0.0, 0.5 * kPi, n_quad);
    }
    data.values.row(j) = stencil_rows(table, layout.n_t, dt) / (2.0 * kPi);
  }
  return data;
}

MeasurementData simulate(const Phantom& phantom, const SensorLayout& layout,
                         int n_quad) {
  switch (layout.mode) {
    case Mode::m1: return simulate_m1(phantom, layout, n_quad);
    case Mode::m2: return simulate_m2(phantom, layout);
    case Mode::m3: return simulate_m3(phantom, layout);
    case Mode::m4: return simulate_m4(phantom, layout, n_quad);
  }
  throw std::logic_error("unreachable");
}

}  // namespace spat
