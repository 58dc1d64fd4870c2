#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "spat/geometry.hpp"

using namespace spat;
using namespace spat::testing;

TEST_SUITE("geometry") {

TEST_CASE("direction is normalized and rejects zero") {
  const Direction d(3.0, 4.0);
  CHECK(d.vec().norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(d.x() == doctest::Approx(0.6));
  CHECK_THROWS_AS(Direction(0.0, 0.0), std::invalid_argument);
}

TEST_CASE("ellipse derived quantities match their definitions") {
  const auto dom = ConvexDomain::ellipse(2.0, 1.0);
  CHECK(dom.eccentricity() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK(dom.elliptic_radius() ==
        doctest::Approx(std::atanh(0.5)).epsilon(1e-15));
  // psi(r0, phi) parametrization reproduces the semi-axes
  const double eps = dom.eccentricity(), r0 = dom.elliptic_radius();
  CHECK(eps * std::cosh(r0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(eps * std::sinh(r0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("support point: disk and ellipse axis cases") {
  const auto disk = ConvexDomain::disk(1.0);
  const Vec2 p = support_point(disk, Direction(0.0, 1.0));
  CHECK(p.x() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(p.y() == doctest::Approx(1.0).epsilon(1e-15));

  const auto ell = ConvexDomain::ellipse(2.0, 1.0);
  const Vec2 q = support_point(ell, Direction(1.0, 0.0));
  CHECK(q.x() == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(q.y() == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("support point: ellipse diagonal against brute-force maximization") {
  const auto ell = ConvexDomain::ellipse(2.0, 1.0);
  const Direction theta(1.0, 1.0);
  const Vec2 zeta = support_point(ell, theta);
  const Vec2 brute = brute_force_support(ell, theta);
  CHECK((zeta - brute).norm() < 1e-4);
  // support value must dominate every sampled boundary point
  CHECK(zeta.dot(theta.vec()) >= brute.dot(theta.vec()) - 1e-12);
}

TEST_CASE("support map strict convexity inequality") {
  for (const auto& dom :
       {ConvexDomain::disk(1.5), ConvexDomain::ellipse(2.0, 1.0)}) {
    for (int i = 0; i < 64; ++i) {
      const Direction theta = Direction::from_angle(2.0 * kPi * i / 64 + 0.13);
      const Vec2 zeta = support_point(dom, theta);
      for (int j = 0; j < 256; ++j) {
        const Direction other = Direction::from_angle(2.0 * kPi * j / 256);
        const Vec2 zp = support_point(dom, other);
        CHECK((zp - zeta).dot(theta.vec()) <= 1e-12);
      }
    }
  }
}

TEST_CASE("support map rejects the half-space") {
  const auto hs = ConvexDomain::halfspace();
  CHECK_THROWS_AS(support_point(hs, Direction(0.0, 1.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(tangent_line(hs, Direction(0.0, 1.0), 0.0),
                  std::invalid_argument);
}

TEST_CASE("tangent lines") {
  const auto disk = ConvexDomain::disk(1.0);
  SUBCASE("disk r=0 gives x1 = 1") {
    const TangentFrame f = tangent_line(disk, Direction(1.0, 0.0), 0.0);
    CHECK(f.point().x() == doctest::Approx(1.0));
    CHECK(f.line_direction().dot(Vec2(1.0, 0.0)) == doctest::Approx(0.0));
  }
  SUBCASE("disk r=-2 gives x1 = -1") {
    const TangentFrame f = tangent_line(disk, Direction(1.0, 0.0), -2.0);
    CHECK(f.point().x() == doctest::Approx(-1.0));
  }
  SUBCASE("ellipse offset line against boundary sampling") {
    const auto ell = ConvexDomain::ellipse(2.0, 1.0);
    const TangentFrame f = tangent_line(ell, Direction(0.0, 1.0), -0.5);
    CHECK(f.point().y() == doctest::Approx(0.5).epsilon(1e-12));
    const Vec2 brute = brute_force_support(ell, Direction(0.0, 1.0));
    CHECK((f.zeta - brute).norm() < 1e-4);
  }
}

TEST_CASE("phantom_eval counts overlapping disks additively") {
  Phantom ph;
  ph.add({Vec2(0.0, 0.0), 0.3, 1.0});
  CHECK(phantom_eval(ph, Vec2(0.0, 0.0)) == 1.0);
  CHECK(phantom_eval(ph, Vec2(1.0, 0.0)) == 0.0);
  CHECK(phantom_eval(ph, Vec2(0.3, 0.0)) == 1.0);  // boundary counts inside

  Phantom two;
  two.add({Vec2(0.0, 0.0), 0.5, 1.0});
  two.add({Vec2(0.3, 0.0), 0.5, 1.0});
  CHECK(phantom_eval(two, Vec2(0.15, 0.0)) == 2.0);
}

TEST_CASE("phantom_radon chord values") {
  Phantom unit;
  unit.add({Vec2(0.0, 0.0), 1.0, 1.0});
  const Direction theta = Direction::from_angle(0.37);
  CHECK(phantom_radon(unit, 0.0, theta) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(phantom_radon(unit, 1.0, theta) == 0.0);
  CHECK(phantom_radon(unit, 0.0, theta) ==
        doctest::Approx(quadrature_radon(unit, 0.0, theta, 2.0))
            .epsilon(1e-9));

  Phantom off;
  off.add({Vec2(0.5, 0.0), 0.25, 2.0});
  CHECK(phantom_radon(off, 0.5, Direction(1.0, 0.0)) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(phantom_radon(off, 0.5, Direction(1.0, 0.0)) ==
        doctest::Approx(quadrature_radon(off, 0.5, Direction(1.0, 0.0), 1.0))
            .epsilon(1e-9));
}

TEST_CASE("radon mass is angle independent and equals sum A pi rho^2") {
  Phantom ph;
  ph.add({Vec2(0.4, 0.25), 0.35, 1.0});
  ph.add({Vec2(-0.5, -0.3), 0.45, 0.8});
  const double expected = kPi * (0.35 * 0.35 * 1.0 + 0.45 * 0.45 * 0.8);
  for (double ang : {0.0, 0.7, 2.1, 4.4}) {
    const Direction theta = Direction::from_angle(ang);
    std::vector<double> breaks{-2.0, 2.0};
    for (const auto& d : ph.primitives()) {
      const double c = d.center.dot(theta.vec());
      breaks.push_back(c - d.radius);
      breaks.push_back(c + d.radius);
    }
    const double mass = integrate_kinked(
        [&](double s) { return phantom_radon(ph, s, theta); }, breaks);
    CHECK(mass == doctest::Approx(expected).epsilon(1e-6));
  }
}

TEST_CASE("phantom_spherical_mean exact cases") {
  Phantom unit;
  unit.add({Vec2(0.0, 0.0), 1.0, 1.0});
  CHECK(phantom_spherical_mean(unit, Vec2(0.0, 0.0), 0.5) == 1.0);
  CHECK(phantom_spherical_mean(unit, Vec2(0.0, 0.0), 2.0) == 0.0);
  // intersection-angle value, cross-checked by quadrature
  const double v = phantom_spherical_mean(unit, Vec2(2.0, 0.0), 2.0);
  CHECK(v == doctest::Approx(std::acos(7.0 / 8.0) / kPi).epsilon(1e-14));
  CHECK(v == doctest::Approx(quadrature_circular_mean(unit, Vec2(2.0, 0.0), 2.0))
                 .epsilon(1e-10));
}

TEST_CASE("spherical mean agrees with quadrature away from tangency radii") {
  Phantom ph;
  ph.add({Vec2(0.4, 0.25), 0.35, 1.0});
  ph.add({Vec2(-0.5, -0.3), 0.45, 0.8});
  const Vec2 xi(1.7, -0.6);
  for (double r : {0.2, 0.5, 0.9, 1.3, 1.9, 2.4}) {
    bool near_tangency = false;
    for (const auto& d : ph.primitives()) {
      const double dist = (xi - d.center).norm();
      if (std::abs(r - std::abs(dist - d.radius)) < 1e-3 ||
          std::abs(r - (dist + d.radius)) < 1e-3) {
        near_tangency = true;
      }
    }
    if (near_tangency) continue;
    CHECK(phantom_spherical_mean(ph, xi, r) ==
          doctest::Approx(quadrature_circular_mean(ph, xi, r)).epsilon(1e-8));
  }
}

TEST_CASE("spherical mean r->0 limit recovers the pointwise value") {
  Phantom ph;
  ph.add({Vec2(0.2, 0.1), 0.4, 1.5});
  const Vec2 inside(0.25, 0.2);
  const Vec2 outside(1.5, 1.5);
  CHECK(phantom_spherical_mean(ph, inside, 1e-9) ==
        doctest::Approx(phantom_eval(ph, inside)));
  CHECK(phantom_spherical_mean(ph, outside, 1e-9) ==
        doctest::Approx(phantom_eval(ph, outside)));
}

TEST_CASE("phantom support validation") {
  const auto disk = ConvexDomain::disk(1.0);
  Phantom ok;
  ok.add({Vec2(0.2, 0.0), 0.5, 1.0});
  CHECK_NOTHROW(ok.require_inside(disk));
  Phantom bad;
  bad.add({Vec2(0.8, 0.0), 0.5, 1.0});
  CHECK_THROWS_AS(bad.require_inside(disk), std::invalid_argument);

  const auto ell = ConvexDomain::ellipse(2.0, 1.0);
  Phantom edge;
  edge.add({Vec2(1.5, 0.0), 0.4, 1.0});  // pokes out near the flat side
  CHECK_THROWS_AS(edge.require_inside(ell), std::invalid_argument);
  Phantom fits;
  fits.add({Vec2(1.2, 0.0), 0.3, 1.0});
  CHECK_NOTHROW(fits.require_inside(ell));

  CHECK(ok.support_margin(disk) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("phantom text round trip and hash stability") {
  std::istringstream in(
      "# comment line\n"
      "disk 0.4 0.25 0.35 1.0\n"
      "\n"
      "disk -0.5 -0.3 0.45 0.8   # trailing comment\n");
  const Phantom ph = Phantom::parse(in);
  REQUIRE(ph.primitives().size() == 2);
  CHECK(ph.primitives()[1].amplitude == doctest::Approx(0.8));

  std::istringstream again(ph.format());
  const Phantom ph2 = Phantom::parse(again);
  CHECK(ph.hash() == ph2.hash());
  CHECK(ph.hash().size() == 16);

  std::istringstream bad("square 0 0 1 1\n");
  CHECK_THROWS_AS(Phantom::parse(bad), std::invalid_argument);
}

TEST_CASE("domain describe/parse round trip") {
  for (const auto& dom :
       {ConvexDomain::disk(2.0), ConvexDomain::ellipse(2.0, 1.0),
        ConvexDomain::halfspace()}) {
    CHECK(ConvexDomain::parse(dom.describe()).same_geometry(dom));
  }
  CHECK_THROWS_AS(ConvexDomain::parse("triangle:1"), std::invalid_argument);
  CHECK_THROWS_AS(ConvexDomain::ellipse(1.0, 2.0), std::invalid_argument);
}

}  // TEST_SUITE
