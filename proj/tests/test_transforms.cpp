#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "spat/forward.hpp"
#include "spat/quadrature.hpp"
#include "spat/transforms.hpp"

using namespace spat;
using namespace spat::testing;

namespace {

RadialProfile gaussian_profile(double r_max = 6.0, int n = 2048) {
  return RadialProfile::tabulate(
      [](double r) { return std::exp(-r * r); }, r_max, n);
}

// A[exp(-r^2)](y) = sqrt(pi) exp(-y^2)
double abel_gaussian_exact(double y) {
  return std::sqrt(kPi) * std::exp(-y * y);
}

}  // namespace

TEST_SUITE("transforms") {

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  const GaussLegendre g = gauss_legendre(6);
  double acc = 0.0;
  for (int i = 0; i < 6; ++i) {
    acc += g.weights[i] * std::pow(g.nodes[i], 10);
  }
  CHECK(acc == doctest::Approx(2.0 / 11.0).epsilon(1e-13));
  CHECK(integrate_gl([](double x) { return std::sin(x); }, 0.0, kPi, 4) ==
        doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("derivative5 is fourth order") {
  const double d = derivative5([](double x) { return std::sin(x); }, 0.6, 1e-2);
  CHECK(d == doctest::Approx(std::cos(0.6)).epsilon(1e-9));
}

TEST_CASE("radial profile validation") {
  CHECK_THROWS_AS(RadialProfile(1.0, Eigen::VectorXd::Zero(8)),
                  std::invalid_argument);
  Eigen::VectorXd bad = Eigen::VectorXd::Ones(32);
  CHECK_THROWS_AS(RadialProfile(1.0, bad), std::invalid_argument);  // no decay
}

TEST_CASE("abel_forward: gaussian closed form") {
  const RadialProfile psi = gaussian_profile();
  CHECK(abel_forward(psi, 0.0) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-8));
  CHECK(abel_forward(psi, 1.2) ==
        doctest::Approx(abel_gaussian_exact(1.2)).epsilon(1e-6));
}

TEST_CASE("abel_forward: indicator chord and zero profile") {
  const RadialProfile ind = RadialProfile::tabulate(
      [](double r) { return r < 1.0 ? 1.0 : 0.0; }, 2.0, 4096);
  CHECK(std::abs(abel_forward(ind, 0.6) - 1.6) < 2e-3);

  const RadialProfile zero(3.0, Eigen::VectorXd::Zero(64));
  CHECK(abel_forward(zero, 0.5) == 0.0);
  CHECK_THROWS_AS(abel_forward(zero, 3.0), std::domain_error);
}

TEST_CASE("abel_inverse: gaussian round trip at y = 0.7") {
  const int n = 2048;
  const double r_max = 6.0;
  Eigen::VectorXd phi(n);
  for (int i = 0; i < n; ++i) {
    phi[i] = abel_gaussian_exact(r_max * i / (n - 1));
  }
  const RadialProfile prof(r_max, std::move(phi));
  CHECK(abel_inverse(prof, 0.7) ==
        doctest::Approx(std::exp(-0.49)).epsilon(1e-5));

  const RadialProfile zero(3.0, Eigen::VectorXd::Zero(64));
  CHECK(abel_inverse(zero, 1.0) == 0.0);
  CHECK_THROWS_AS(abel_inverse(zero, 1e-4), std::domain_error);
}

TEST_CASE("abel round trip sup error < 1e-4 on the 2048-node gaussian") {
  const RadialProfile psi = gaussian_profile();
  Eigen::VectorXd phi(psi.size());
  for (int i = 0; i < psi.size() - 1; ++i) {
    phi[i] = abel_forward(psi, psi.step() * i);
  }
  phi[psi.size() - 1] = 0.0;
  const RadialProfile prof(psi.r_max, std::move(phi));
  double sup = 0.0;
  for (double y = 0.05; y <= 3.0; y += 0.05) {
    sup = std::max(sup, std::abs(abel_inverse(prof, y) - std::exp(-y * y)));
  }
  CHECK(sup < 1e-4);
}

TEST_CASE("scaled inverse identity: A^-1[r^2 psi] = -(1/2pi) d_y(y A[psi])") {
  const RadialProfile psi = gaussian_profile();
  const RadialProfile r2psi = RadialProfile::tabulate(
      [](double r) { return r * r * std::exp(-r * r); }, 6.0, 2048);
  // left side needs A[r^2 psi] sampled, then the stencil derivative
  Eigen::VectorXd phi(r2psi.size());
  for (int i = 0; i < r2psi.size() - 1; ++i) {
    phi[i] = abel_forward(r2psi, r2psi.step() * i);
  }
  phi[r2psi.size() - 1] = 0.0;
  const RadialProfile a_r2psi(6.0, std::move(phi));
  for (double y : {0.3, 0.8}) {
    const double lhs = abel_inverse(a_r2psi, y);
    const double rhs =
        -derivative5(
            [&](double yy) { return yy * abel_forward(psi, yy); }, y, 1e-3) /
        (2.0 * kPi);
    CHECK(std::abs(lhs - rhs) < 1e-5);
  }
}

TEST_CASE("radon_forward: zero image, analytic disk, shift covariance") {
  const GridSpec grid = GridSpec::square(2.0, 256);

  SUBCASE("zero image gives a zero sinogram") {
    const ImageGrid zero(grid);
    const Sinogram s = radon_forward(zero, 16, 64, 2.0);
    CHECK(s.values.cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("rasterized unit disk matches the chord within 1% relative L2") {
    Phantom unit;
    unit.add({Vec2(0.0, 0.0), 1.0, 1.0});
    const ImageGrid img = rasterize(unit, grid);
    const Sinogram s = radon_forward(img, 32, 256, 2.0);
    double num = 0.0, den = 0.0;
    for (int j = 0; j < s.n_angles; ++j) {
      const Direction theta = Direction::from_angle(s.angle(j));
      for (int i = 0; i < s.n_offsets(); ++i) {
        const double exact = phantom_radon(unit, s.offset(i), theta);
        num += (s.values(i, j) - exact) * (s.values(i, j) - exact);
        den += exact * exact;
      }
    }
    CHECK(std::sqrt(num / den) < 0.01);
  }

  SUBCASE("shifting the image shifts offsets by <v, theta>") {
    Phantom a, b;
    a.add({Vec2(0.1, -0.2), 0.5, 1.0});
    const Vec2 shift(0.25, 0.125);  // exact pixel multiples of 4/256
    b.add({Vec2(0.1 + shift.x(), -0.2 + shift.y()), 0.5, 1.0});
    const Sinogram sa = radon_forward(rasterize(a, grid), 8, 256, 2.0);
    const Sinogram sb = radon_forward(rasterize(b, grid), 8, 256, 2.0);
    for (int j = 0; j < 8; ++j) {
      const Direction theta = Direction::from_angle(sa.angle(j));
      const double so = shift.dot(theta.vec());
      double worst = 0.0;
      for (int i = 0; i < sa.n_offsets(); ++i) {
        const double s_shifted = sa.offset(i) + so;
        if (std::abs(s_shifted) > 1.6) continue;
        const double interp =
            lerp_uniform(sb.values.col(j), -sb.s_max, sb.ds(), s_shifted);
        worst = std::max(worst, std::abs(interp - sa.values(i, j)));
      }
      CHECK(worst < 0.02);  // interpolation tolerance
    }
  }
}

TEST_CASE("radon_inverse: zero, exact scaling, disk round trip < 5%") {
  const GridSpec grid = GridSpec::square(2.0, 256);

  SUBCASE("zero sinogram gives a zero image") {
    const Sinogram zero(32, 64, 2.0);
    const ImageGrid img = radon_inverse(zero, grid);
    CHECK(img.values.cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("analytic disk sinogram, 180 x 512") {
    Phantom unit;
    unit.add({Vec2(0.0, 0.0), 1.0, 1.0});
    Sinogram sino(180, 512, 2.0);
    for (int j = 0; j < sino.n_angles; ++j) {
      const Direction theta = Direction::from_angle(sino.angle(j));
      for (int i = 0; i < sino.n_offsets(); ++i) {
        sino.values(i, j) = phantom_radon(unit, sino.offset(i), theta);
      }
    }
    const ImageGrid rec = radon_inverse(sino, grid);
    const ImageGrid ref = rasterize(unit, grid);
    const double rel =
        (rec.values - ref.values).norm() / ref.values.norm();
    CHECK(rel < 0.05);

    // linearity with an exact power-of-two factor
    Sinogram doubled = sino;
    doubled.values *= 2.0;
    const ImageGrid rec2 = radon_inverse(doubled, grid);
    CHECK((rec2.values - 2.0 * rec.values).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("wave2d_pressure: zero means, causality, m2 cross-check") {
  Phantom ph;
  ph.add({Vec2(0.0, 0.0), 0.5, 1.0});
  const Vec2 xi(2.0, 0.0);

  SUBCASE("zero means give zero pressure") {
    CHECK(wave2d_pressure([](double) { return 0.0; }, 1.0, 1e-3) == 0.0);
  }

  SUBCASE("two code paths: Abel-quadrature solution vs (1/2) d_t M2") {
    // sampled means -> wave solution
    SphericalMeanData means;
    means.centers = {xi};
    means.r_max = 4.0;
    means.values.resize(1, 4096);
    for (int m = 0; m < 4096; ++m) {
      means.values(0, m) = phantom_spherical_mean(ph, xi, means.radius(m));
    }
    for (double t : {1.7, 2.1, 2.4}) {
      const double via_abel = wave2d_from_spherical_means(means, 0, t, 2048);
      const double via_dt =
          0.5 * derivative5(
                    [&](double r) {
                      return phantom_spherical_mean(ph, xi, std::abs(r));
                    },
                    t, 1e-4);
      CHECK(via_abel == doctest::Approx(via_dt).epsilon(5e-3));
    }
  }

  SUBCASE("finite propagation: quiet after the support has passed") {
    SphericalMeanData means;
    means.centers = {xi};
    means.r_max = 8.0;
    means.values.resize(1, 8192);
    for (int m = 0; m < 8192; ++m) {
      means.values(0, m) = phantom_spherical_mean(ph, xi, means.radius(m));
    }
    // support seen from xi ends at |xi| + rho = 2.5; 2D waves leave a tail
    // that decays, not a sharp cutoff
    CHECK(std::abs(wave2d_from_spherical_means(means, 0, 6.0, 2048)) < 1e-3);
    CHECK(std::abs(wave2d_from_spherical_means(means, 0, 7.5, 2048)) < 1e-3);
  }
}

TEST_CASE("spherical_means_from_wave_2d basics") {
  SUBCASE("zero pressure gives zero means") {
    const Eigen::VectorXd p = Eigen::VectorXd::Zero(256);
    CHECK(spherical_means_from_wave_2d(p, 0.01, 1.0) == 0.0);
  }
  SUBCASE("linearity in p") {
    Eigen::VectorXd p(256);
    for (int i = 0; i < 256; ++i) p[i] = std::sin(0.13 * i) / (1.0 + i);
    const double a = spherical_means_from_wave_2d(p, 0.01, 1.7);
    const double b = spherical_means_from_wave_2d((2.0 * p).eval(), 0.01, 1.7);
    CHECK(b == doctest::Approx(2.0 * a).epsilon(1e-14));
  }
  SUBCASE("r beyond the time range throws") {
    const Eigen::VectorXd p = Eigen::VectorXd::Zero(16);
    CHECK_THROWS_AS(spherical_means_from_wave_2d(p, 0.01, 0.5),
                    std::domain_error);
  }
}

TEST_CASE("spherical_means_from_wave_3d") {
  SUBCASE("zero and constant") {
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(64);
    CHECK(spherical_means_from_wave_3d(zero, 0.1, 2.0) == 0.0);
    const Eigen::VectorXd c = Eigen::VectorXd::Constant(64, 3.25);
    CHECK(spherical_means_from_wave_3d(c, 0.1, 2.0) ==
          doctest::Approx(3.25).epsilon(1e-15));
    CHECK_THROWS_AS(spherical_means_from_wave_3d(c, 0.1, -1.0),
                    std::invalid_argument);
  }
  SUBCASE("p = d_t(t M3) with gaussian M3 recovers exp(-r^2)") {
    const int n = 16384;
    const double dt = 6.0 / n;
    Eigen::VectorXd p(n);
    for (int i = 0; i < n; ++i) {
      const double t = (i + 0.5) * dt;
      p[i] = (1.0 - 2.0 * t * t) * std::exp(-t * t);
    }
    for (double r : {0.5, 1.0, 2.0}) {
      CHECK(spherical_means_from_wave_3d(p, dt, r) ==
            doctest::Approx(std::exp(-r * r)).epsilon(1e-6));
    }
  }
}

TEST_CASE("disk-integral wave form agrees with the Abel-quadrature path") {
  // p(x;t) = (1/2pi) d_t  int_{B_t(0)} f(x+y)/sqrt(t^2-|y|^2) ds(y),
  // evaluated by 2D quadrature in (alpha, angle) after rho = t sin(alpha).
  Phantom ph;
  ph.add({Vec2(0.3, 0.1), 0.5, 1.0});
  const auto disk_form = [&](const Vec2& x, double t) {
    const auto inner = [&](double tt) {
      const double a = std::abs(tt);
      double acc = 0.0;
      const int n_alpha = 384, n_ang = 512;
      for (int ia = 0; ia < n_alpha; ++ia) {
        const double alpha = 0.5 * kPi * (ia + 0.5) / n_alpha;
        const double rho = a * std::sin(alpha);
        double ring = 0.0;
        for (int ja = 0; ja < n_ang; ++ja) {
          const double ang = 2.0 * kPi * ja / n_ang;
          ring += phantom_eval(
              ph, x + rho * Vec2(std::cos(ang), std::sin(ang)));
        }
        acc += ring * rho * (2.0 * kPi / n_ang) * (0.5 * kPi / n_alpha);
      }
      return tt >= 0.0 ? acc : -acc;
    };
    // with rho = t sin(alpha): drho / sqrt(t^2 - rho^2) = dalpha, the extra
    // rho is the polar Jacobian, so inner() = int_{B_t} f / sqrt ds(y)
    return derivative5(inner, t, 1e-3) / (2.0 * kPi);
  };

  SphericalMeanData means;
  const Vec2 xi(1.5, -0.4);
  means.centers = {xi};
  means.r_max = 4.0;
  means.values.resize(1, 4096);
  for (int m = 0; m < 4096; ++m) {
    means.values(0, m) = phantom_spherical_mean(ph, xi, means.radius(m));
  }
  for (double t : {1.0, 1.45, 2.2}) {
    const double a = disk_form(xi, t);
    const double b = wave2d_from_spherical_means(means, 0, t, 2048);
    CHECK(std::abs(a - b) < 1e-3);
  }
}

}  // TEST_SUITE
