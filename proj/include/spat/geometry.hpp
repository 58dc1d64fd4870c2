#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <iosfwd>
#include <string>
#include <vector>

namespace spat {

using Vec2 = Eigen::Vector2d;

/// Unit vector in the plane, stored as (cos, sin).  Normalized on
/// construction so the support map never sees a non-unit direction.
class Direction {
 public:
  Direction(double x, double y);
  static Direction from_angle(double radians) {
    return Direction(std::cos(radians), std::sin(radians));
  }

  const Vec2& vec() const { return v_; }
  double x() const { return v_.x(); }
  double y() const { return v_.y(); }
  /// Left-hand perpendicular (-sin, cos).
  Vec2 perp() const { return Vec2(-v_.y(), v_.x()); }
  double angle() const { return std::atan2(v_.y(), v_.x()); }

 private:
  Vec2 v_;
};

enum class DomainKind { disk, ellipse, halfspace };

/// Sensor geometry: a centered disk of radius R, a centered ellipse with
/// semi-axes a > b, or the upper half-plane {xi_2 > 0}.  Disk and ellipse
/// are bounded and strictly convex; the half-space is neither, and the
/// operations that require boundedness reject it.
class ConvexDomain {
 public:
  static ConvexDomain disk(double R);
  static ConvexDomain ellipse(double a, double b);
  static ConvexDomain halfspace();

  DomainKind kind() const { return kind_; }
  bool bounded() const { return kind_ != DomainKind::halfspace; }

  double radius() const;      // disk only
  double semi_major() const;  // ellipse only
  double semi_minor() const;  // ellipse only

  /// Linear eccentricity sqrt(a^2 - b^2) of the ellipse.
  double eccentricity() const;
  /// Elliptic radius r0 = artanh(b/a); psi(r0, phi) parametrizes the boundary.
  double elliptic_radius() const;

  /// Support function h(theta) = <zeta(theta), theta>.
  double support_value(const Direction& theta) const;

  /// Boundary point at parameter phi: disk (R cos, R sin),
  /// ellipse (a cos, b sin).  Not defined for the half-space.
  Vec2 boundary_point(double phi) const;

  double diameter() const;

  /// Signed distance from x to the boundary, positive inside.
  /// Exact for disk and half-space; for the ellipse computed from the
  /// supporting-halfplane characterization on a dense direction sample.
  double boundary_distance(const Vec2& x) const;

  /// Canonical text form, e.g. "disk:2", "ellipse:2,1", "halfspace".
  std::string describe() const;
  static ConvexDomain parse(const std::string& text);

  bool same_geometry(const ConvexDomain& other, double tol = 1e-12) const;

 private:
  ConvexDomain(DomainKind kind, double p1, double p2)
      : kind_(kind), p1_(p1), p2_(p2) {}

  DomainKind kind_;
  double p1_ = 0.0;  // R or a
  double p2_ = 0.0;  // b
};

/// theta, the boundary touch point zeta(theta), and a signed offset r
/// along theta; represents the line zeta(theta) + r theta + R theta^perp.
struct TangentFrame {
  Direction theta;
  Vec2 zeta;
  double offset = 0.0;

  Vec2 point() const { return zeta + offset * theta.vec(); }
  Vec2 line_direction() const { return theta.perp(); }
};

/// zeta(theta): the boundary point whose outward normal is theta.
Vec2 support_point(const ConvexDomain& domain, const Direction& theta);

/// The line T(r, theta) parallel to the tangent at zeta(theta).
TangentFrame tangent_line(const ConvexDomain& domain, const Direction& theta,
                          double r);

struct DiskPrimitive {
  Vec2 center;
  double radius = 0.0;
  double amplitude = 0.0;
};

/// Initial in-plane pressure as a sum of constant-amplitude disks.  All
/// transforms of interest (Radon, circular mean) are closed-form, which is
/// what makes these phantoms usable as oracles.
class Phantom {
 public:
  Phantom() = default;
  explicit Phantom(std::vector<DiskPrimitive> primitives);

  const std::vector<DiskPrimitive>& primitives() const { return primitives_; }
  bool empty() const { return primitives_.empty(); }

  void add(const DiskPrimitive& p);

  /// Largest |c| + rho over the primitives (0 for an empty phantom).
  double support_radius() const;
  /// Axis-aligned bounding box of the support; zero box when empty.
  Eigen::AlignedBox2d bounding_box() const;

  /// Smallest distance from a primitive to the domain boundary; negative
  /// when some primitive pokes outside.
  double support_margin(const ConvexDomain& domain) const;

  /// Throws std::invalid_argument unless supp(f) lies strictly inside.
  void require_inside(const ConvexDomain& domain) const;

  /// Canonical text form (one "disk cx cy r A" line per primitive).
  std::string format() const;
  /// FNV-1a hash of the canonical text, for provenance records.
  std::string hash() const;

  static Phantom parse(std::istream& in);
  static Phantom load(const std::string& path);

 private:
  std::vector<DiskPrimitive> primitives_;
};

/// Pointwise value of the phantom; disk boundaries count as inside.
double phantom_eval(const Phantom& phantom, const Vec2& xi);

/// Exact Radon transform: sum of chord lengths 2 A sqrt(rho^2 - d^2).
double phantom_radon(const Phantom& phantom, double s, const Direction& theta);

/// Exact circular mean over the circle of radius r centered xi, from the
/// circle-circle intersection angle.  r = 0 returns phantom_eval.
double phantom_spherical_mean(const Phantom& phantom, const Vec2& xi,
                              double r);

}  // namespace spat
