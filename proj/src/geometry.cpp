#include "spat/geometry.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace spat {

namespace {
constexpr double kPi = std::numbers::pi;
}

Direction::Direction(double x, double y) : v_(x, y) {
  const double n = v_.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("Direction: zero or non-finite vector");
  }
  v_ /= n;
}

ConvexDomain ConvexDomain::disk(double R) {
  if (!(R > 0.0)) throw std::invalid_argument("disk radius must be positive");
  return ConvexDomain(DomainKind::disk, R, 0.0);
}

ConvexDomain ConvexDomain::ellipse(double a, double b) {
  if (!(a > b && b > 0.0)) {
    throw std::invalid_argument("ellipse requires a > b > 0");
  }
  return ConvexDomain(DomainKind::ellipse, a, b);
}

ConvexDomain ConvexDomain::halfspace() {
  return ConvexDomain(DomainKind::halfspace, 0.0, 0.0);
}

double ConvexDomain::radius() const {
  if (kind_ != DomainKind::disk) {
    throw std::logic_error("radius() is defined for the disk only");
  }
  return p1_;
}

double ConvexDomain::semi_major() const {
  if (kind_ != DomainKind::ellipse) {
    throw std::logic_error("semi_major() is defined for the ellipse only");
  }
  return p1_;
}

double ConvexDomain::semi_minor() const {
  if (kind_ != DomainKind::ellipse) {
    throw std::logic_error("semi_minor() is defined for the ellipse only");
  }
  return p2_;
}

double ConvexDomain::eccentricity() const {
  return std::sqrt(semi_major() * semi_major() - semi_minor() * semi_minor());
}

double ConvexDomain::elliptic_radius() const {
  return std::atanh(semi_minor() / semi_major());
}

double ConvexDomain::support_value(const Direction& theta) const {
  switch (kind_) {
    case DomainKind::disk:
      return p1_;
    case DomainKind::ellipse: {
      const double tx = p1_ * theta.x();
      const double ty = p2_ * theta.y();
      return std::sqrt(tx * tx + ty * ty);
    }
    case DomainKind::halfspace:
      throw std::invalid_argument("support map requires a bounded domain");
  }
  throw std::logic_error("unreachable");
}

Vec2 ConvexDomain::boundary_point(double phi) const {
  switch (kind_) {
    case DomainKind::disk:
      return Vec2(p1_ * std::cos(phi), p1_ * std::sin(phi));
    case DomainKind::ellipse:
      return Vec2(p1_ * std::cos(phi), p2_ * std::sin(phi));
    case DomainKind::halfspace:
      throw std::invalid_argument(
          "boundary_point(phi) requires a bounded domain");
  }
  throw std::logic_error("unreachable");
}

double ConvexDomain::diameter() const {
  switch (kind_) {
    case DomainKind::disk:
      return 2.0 * p1_;
    case DomainKind::ellipse:
      return 2.0 * p1_;
    case DomainKind::halfspace:
      throw std::invalid_argument("diameter requires a bounded domain");
  }
  throw std::logic_error("unreachable");
}

double ConvexDomain::boundary_distance(const Vec2& x) const {
  switch (kind_) {
    case DomainKind::disk:
      return p1_ - x.norm();
    case DomainKind::halfspace:
      return x.y();
    case DomainKind::ellipse: {
      // dist(x, boundary) = min over theta of h(theta) - <x, theta> for
      // interior points of a convex body; dense sampling is accurate enough
      // for support checks.
      const int n = 8192;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < n; ++i) {
        const Direction theta = Direction::from_angle(2.0 * kPi * i / n);
        best = std::min(best, support_value(theta) - x.dot(theta.vec()));
      }
      return best;
    }
  }
  throw std::logic_error("unreachable");
}

std::string ConvexDomain::describe() const {
  char buf[96];
  switch (kind_) {
    case DomainKind::disk:
      std::snprintf(buf, sizeof buf, "disk:%.17g", p1_);
      return buf;
    case DomainKind::ellipse:
      std::snprintf(buf, sizeof buf, "ellipse:%.17g,%.17g", p1_, p2_);
      return buf;
    case DomainKind::halfspace:
      return "halfspace";
  }
  throw std::logic_error("unreachable");
}

ConvexDomain ConvexDomain::parse(const std::string& text) {
  if (text == "halfspace") return halfspace();
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const std::string head = text.substr(0, colon);
    const std::string args = text.substr(colon + 1);
    if (head == "disk") {
      return disk(std::stod(args));
    }
    if (head == "ellipse") {
      const auto comma = args.find(',');
      if (comma != std::string::npos) {
        return ellipse(std::stod(args.substr(0, comma)),
                       std::stod(args.substr(comma + 1)));
      }
    }
  }
  throw std::invalid_argument(
      "cannot parse domain '" + text +
      "' (expected disk:R, ellipse:a,b, or halfspace)");
}

bool ConvexDomain::same_geometry(const ConvexDomain& other, double tol) const {
  return kind_ == other.kind_ && std::abs(p1_ - other.p1_) <= tol &&
         std::abs(p2_ - other.p2_) <= tol;
}

Vec2 support_point(const ConvexDomain& domain, const Direction& theta) {
  switch (domain.kind()) {
    case DomainKind::disk:
      return domain.radius() * theta.vec();
    case DomainKind::ellipse: {
      const double a = domain.semi_major();
      const double b = domain.semi_minor();
      const Vec2 w(a * a * theta.x(), b * b * theta.y());
      return w / std::sqrt(a * a * theta.x() * theta.x() +
                           b * b * theta.y() * theta.y());
    }
    case DomainKind::halfspace:
      throw std::invalid_argument("support map requires a bounded domain");
  }
  throw std::logic_error("unreachable");
}

TangentFrame tangent_line(const ConvexDomain& domain, const Direction& theta,
                          double r) {
  return TangentFrame{theta, support_point(domain, theta), r};
}

Phantom::Phantom(std::vector<DiskPrimitive> primitives)
    : primitives_(std::move(primitives)) {
  for (const auto& p : primitives_) {
    if (!(p.radius > 0.0)) {
      throw std::invalid_argument("phantom disk radius must be positive");
    }
  }
}

void Phantom::add(const DiskPrimitive& p) {
  if (!(p.radius > 0.0)) {
    throw std::invalid_argument("phantom disk radius must be positive");
  }
  primitives_.push_back(p);
}

double Phantom::support_radius() const {
  double r = 0.0;
  for (const auto& p : primitives_) {
    r = std::max(r, p.center.norm() + p.radius);
  }
  return r;
}

Eigen::AlignedBox2d Phantom::bounding_box() const {
  Eigen::AlignedBox2d box;
  for (const auto& p : primitives_) {
    box.extend(Vec2(p.center.x() - p.radius, p.center.y() - p.radius));
    box.extend(Vec2(p.center.x() + p.radius, p.center.y() + p.radius));
  }
  return box;
}

double Phantom::support_margin(const ConvexDomain& domain) const {
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& p : primitives_) {
    margin = std::min(margin, domain.boundary_distance(p.center) - p.radius);
  }
  return margin;
}

void Phantom::require_inside(const ConvexDomain& domain) const {
  if (empty()) return;
  if (!(support_margin(domain) > 0.0)) {
    throw std::invalid_argument(
        "phantom support must lie strictly inside the domain");
  }
}

std::string Phantom::format() const {
  std::string out;
  char buf[160];
  for (const auto& p : primitives_) {
    std::snprintf(buf, sizeof buf, "disk %.17g %.17g %.17g %.17g\n",
                  p.center.x(), p.center.y(), p.radius, p.amplitude);
    out += buf;
  }
  return out;
}

std::string Phantom::hash() const {
  // FNV-1a, 64 bit.
  const std::string text = format();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Phantom Phantom::parse(std::istream& in) {
  Phantom phantom;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line.erase(hash_pos);
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;  // blank line
    if (kind != "disk") {
      throw std::invalid_argument("phantom line " + std::to_string(lineno) +
                                  ": unknown primitive '" + kind + "'");
    }
    DiskPrimitive p;
    if (!(ls >> p.center.x() >> p.center.y() >> p.radius >> p.amplitude)) {
      throw std::invalid_argument("phantom line " + std::to_string(lineno) +
                                  ": expected 'disk cx cy radius amplitude'");
    }
    phantom.add(p);
  }
  return phantom;
}

Phantom Phantom::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::ios_base::failure("cannot open phantom file '" + path + "'");
  }
  return parse(in);
}

double phantom_eval(const Phantom& phantom, const Vec2& xi) {
  double v = 0.0;
  for (const auto& p : phantom.primitives()) {
    if ((xi - p.center).norm() <= p.radius) v += p.amplitude;
  }
  return v;
}

double phantom_radon(const Phantom& phantom, double s,
                     const Direction& theta) {
  double v = 0.0;
  for (const auto& p : phantom.primitives()) {
    const double d = std::abs(s - p.center.dot(theta.vec()));
    if (d < p.radius) {
      v += 2.0 * p.amplitude * std::sqrt(p.radius * p.radius - d * d);
    }
  }
  return v;
}

double phantom_spherical_mean(const Phantom& phantom, const Vec2& xi,
                              double r) {
  if (r < 0.0) throw std::invalid_argument("spherical mean radius must be >= 0");
  if (r == 0.0) return phantom_eval(phantom, xi);
  double v = 0.0;
  for (const auto& p : phantom.primitives()) {
    const double d = (xi - p.center).norm();
    if (d + r <= p.radius) {
      v += p.amplitude;  // circle entirely inside the disk
    } else if (d >= r + p.radius || r >= d + p.radius) {
      // circle entirely outside (or the disk strictly inside the circle)
    } else {
      const double c =
          (d * d + r * r - p.radius * p.radius) / (2.0 * d * r);
      v += p.amplitude * std::acos(std::clamp(c, -1.0, 1.0)) / kPi;
    }
  }
  return v;
}

}  // namespace spat
