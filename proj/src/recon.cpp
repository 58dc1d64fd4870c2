#include "spat/recon.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "spat/quadrature.hpp"

namespace spat {

namespace {

constexpr double kPi = std::numbers::pi;
using Complex = std::complex<double>;

// Midpoint time-transform: CosT(j, l) = dt * sum_i m(j, i) cos(omega_l t_i).
Eigen::MatrixXd cosine_time_transform(const MeasurementData& data,
                                      const SpectralTruncation& trunc) {
  const int n_t = data.layout.n_t;
  const double dt = data.layout.dt();
  Eigen::MatrixXd c(n_t, trunc.n_omega);
  for (int l = 0; l < trunc.n_omega; ++l) {
    const double omega = (l + 0.5) * trunc.omega_max / trunc.n_omega;
    for (int i = 0; i < n_t; ++i) {
      c(i, l) = std::cos(omega * data.layout.time(i)) * dt;
    }
  }
  return data.values * c;  // (n_sensors, n_omega)
}

double circumradius(const ConvexDomain& domain) {
  return domain.kind() == DomainKind::disk ? domain.radius()
                                           : domain.semi_major();
}

// Centers of mean data must be a uniform circle around the origin starting
// at angle 0; returns its radius.
double circle_radius_of(const SphericalMeanData& means) {
  const int n = static_cast<int>(means.centers.size());
  if (n < 4) throw std::invalid_argument("mean data: too few centers");
  const double R = means.centers[0].norm();
  for (int j = 0; j < n; ++j) {
    const Vec2 expect =
        R * Vec2(std::cos(2.0 * kPi * j / n), std::sin(2.0 * kPi * j / n));
    if ((means.centers[j] - expect).norm() > 1e-6 * std::max(1.0, R)) {
      throw std::invalid_argument(
          "mean data centers are not a uniform circle about the origin");
    }
  }
  return R;
}

}  // namespace

SpectralTruncation SpectralTruncation::defaults_for(
    const ConvexDomain& domain) {
  SpectralTruncation t;
  switch (domain.kind()) {
    case DomainKind::disk:
      t.omega_max = 64.0 / domain.radius();
      break;
    case DomainKind::ellipse:
      t.omega_max = 64.0 / domain.semi_major();
      break;
    case DomainKind::halfspace:
      t.omega_max = 32.0;
      break;
  }
  return t;
}

SpectralData spectral_transform_m1(const MeasurementData& data,
                                   const SpectralTruncation& trunc) {
  if (data.layout.mode != Mode::m1) {
    throw std::invalid_argument("spectral_transform_m1: data mode must be m1");
  }
  if (!(trunc.omega_max > 0.0) || trunc.n_omega < 1) {
    throw std::invalid_argument("spectral_transform_m1: omega grid missing");
  }
  SpectralData spec;
  spec.domain = data.layout.domain;
  spec.trunc = trunc;

  const int n_s = data.layout.n_sensors;
  const Eigen::MatrixXd cos_t = cosine_time_transform(data, trunc);

  switch (spec.domain.kind()) {
    case DomainKind::disk: {
      const int K = trunc.n_angular;
      const double dphi = 2.0 * kPi / n_s;
      Eigen::MatrixXcd e(2 * K + 1, n_s);
      for (int r = 0; r < 2 * K + 1; ++r) {
        const int k = r - K;
        for (int j = 0; j < n_s; ++j) {
          const double phi = 2.0 * kPi * j / n_s;
          e(r, j) = std::exp(Complex(0.0, -k * phi)) * (dphi / kPi);
        }
      }
      spec.coeffs = e * cos_t;
      break;
    }
    case DomainKind::ellipse: {
      const int K = trunc.n_angular;
      const double dphi = 2.0 * kPi / n_s;
      const double eps = spec.domain.eccentricity();
      spec.coeffs = Eigen::MatrixXcd::Zero(K + 1, trunc.n_omega);
      for (int l = 0; l < trunc.n_omega; ++l) {
        const double omega = spec.omega(l);
        const MathieuBasis basis(0.25 * eps * eps * omega * omega);
        Eigen::MatrixXd phi_mat(K + 1, n_s);
        for (int k = 0; k <= K; ++k) {
          const MathieuMode mode = basis.phi_mode(k);
          for (int j = 0; j < n_s; ++j) {
            phi_mat(k, j) = mathieu_angular(mode, 2.0 * kPi * j / n_s);
          }
        }
        spec.coeffs.col(l) =
            (std::sqrt(2.0) / kPi * dphi * (phi_mat * cos_t.col(l)))
                .cast<Complex>();
      }
      break;
    }
    case DomainKind::halfspace: {
      if (trunc.n_k < 2 || !(trunc.k_max > 0.0)) {
        throw std::invalid_argument("spectral_transform_m1: k grid missing");
      }
      const double L = data.layout.half_width;
      const double dxi = 2.0 * L / (n_s - 1);
      Eigen::MatrixXcd e(trunc.n_k, n_s);
      for (int v = 0; v < trunc.n_k; ++v) {
        const double k = spec.k_value(v);
        for (int j = 0; j < n_s; ++j) {
          const double xi1 = -L + dxi * j;
          const double w = (j == 0 || j == n_s - 1) ? 0.5 : 1.0;
          e(v, j) = std::exp(Complex(0.0, -k * xi1)) * (w * dxi / kPi);
        }
      }
      spec.coeffs = e * cos_t;
      break;
    }
  }
  return spec;
}

ImageGrid recon_m1_halfspace(const SpectralData& spec, const GridSpec& grid) {
  if (spec.domain.kind() != DomainKind::halfspace) {
    throw std::invalid_argument("recon_m1_halfspace: domain is not halfspace");
  }
  const int n_k = spec.trunc.n_k;
  const int n_w = spec.trunc.n_omega;
  const double dw = spec.domega();

  // Inner omega sum over the cone omega > |k|, per (k row, image row).
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(n_k, grid.ny);
  for (int v = 0; v < n_k; ++v) {
    const double k = spec.k_value(v);
    for (int l = 0; l < n_w; ++l) {
      const double w = spec.omega(l);
      if (w <= std::abs(k)) continue;
      const double kappa = std::sqrt(w * w - k * k);
      const Complex m = spec.coeffs(v, l) * dw;
      for (int jy = 0; jy < grid.ny; ++jy) {
        b(v, jy) += m * std::cos(kappa * grid.y(jy));
      }
    }
  }

  ImageGrid out(grid);
  const double dk = spec.dk();
  for (int jy = 0; jy < grid.ny; ++jy) {
    for (int ix = 0; ix < grid.nx; ++ix) {
      const double x = grid.x(ix);
      Complex acc(0.0, 0.0);
      for (int v = 0; v < n_k; ++v) {
        const double wk = (v == 0 || v == n_k - 1) ? 0.5 : 1.0;
        acc += wk * b(v, jy) * std::exp(Complex(0.0, spec.k_value(v) * x));
      }
      out.values(jy, ix) = (2.0 / kPi) * dk * acc.real();
    }
  }
  return out;
}

ImageGrid recon_m1_disk_series(const SpectralData& spec, const GridSpec& grid,
                               SeriesDiagnostics* diag) {
  if (spec.domain.kind() != DomainKind::disk) {
    throw std::invalid_argument("recon_m1_disk_series: domain is not a disk");
  }
  const double R = spec.domain.radius();
  const int K = spec.trunc.n_angular;
  const int n_w = spec.trunc.n_omega;
  const double dw = spec.domega();
  SeriesDiagnostics local;

  // Resonance guard: drop (k, omega) where |J_|k|(omega R)| falls below
  // 1e-3 of its maximum over the omega grid.
  Eigen::MatrixXd denom(K + 1, n_w);
  for (int l = 0; l < n_w; ++l) {
    denom.col(l) = bessel_j_all(K, spec.omega(l) * R);
  }
  Eigen::VectorXd guard(K + 1);
  for (int k = 0; k <= K; ++k) {
    guard[k] = 1e-3 * denom.row(k).cwiseAbs().maxCoeff();
  }

  // Radial profiles g_k(d) = (dw/pi) sum_l J_|k|(omega d)/J_|k|(omega R) m1~,
  // one column per angular index.
  const int n_d = std::max(512, 2 * std::max(grid.nx, grid.ny));
  const double dd = R / (n_d - 1);
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(n_d, 2 * K + 1);
  for (int l = 0; l < n_w; ++l) {
    const double omega = spec.omega(l);
    std::vector<bool> keep(K + 1);
    for (int k = 0; k <= K; ++k) {
      keep[k] = std::abs(denom(k, l)) >= guard[k];
      local.terms_total += (k == 0) ? 1 : 2;
      if (!keep[k]) local.terms_dropped += (k == 0) ? 1 : 2;
    }
    for (int m = 0; m < n_d; ++m) {
      const Eigen::VectorXd j_all = bessel_j_all(K, omega * m * dd);
      for (int k = 0; k <= K; ++k) {
        if (!keep[k]) continue;
        const double ratio = j_all[k] / denom(k, l);
        const double w = dw / kPi * ratio;
        g(m, K + k) += w * spec.coeffs(K + k, l);
        if (k > 0) g(m, K - k) += w * spec.coeffs(K - k, l);
      }
    }
  }
  const Eigen::MatrixXd g_re = g.real();
  const Eigen::MatrixXd g_im = g.imag();

  ImageGrid out(grid);
  double peak_re = 0.0, peak_im = 0.0;
  for (int jy = 0; jy < grid.ny; ++jy) {
    for (int ix = 0; ix < grid.nx; ++ix) {
      const Vec2 p(grid.x(ix), grid.y(jy));
      const double d = p.norm();
      if (d > R) continue;
      const double phi = std::atan2(p.y(), p.x());
      const Complex e = std::exp(Complex(0.0, phi));
      Complex ek = std::exp(Complex(0.0, -K * phi));
      Complex acc(0.0, 0.0);
      for (int r = 0; r < 2 * K + 1; ++r) {
        acc += ek * Complex(lerp_uniform(g_re.col(r), 0.0, dd, d),
                            lerp_uniform(g_im.col(r), 0.0, dd, d));
        ek *= e;
      }
      out.values(jy, ix) = acc.real();
      peak_re = std::max(peak_re, std::abs(acc.real()));
      peak_im = std::max(peak_im, std::abs(acc.imag()));
    }
  }
  local.max_imag_fraction = peak_re > 0.0 ? peak_im / peak_re : 0.0;
  if (diag) *diag = local;
  return out;
}

ImageGrid recon_m1_ellipse_series(const SpectralData& spec,
                                  const GridSpec& grid,
                                  SeriesDiagnostics* diag) {
  if (spec.domain.kind() != DomainKind::ellipse) {
    throw std::invalid_argument(
        "recon_m1_ellipse_series: domain is not an ellipse");
  }
  const double eps = spec.domain.eccentricity();
  const double r0 = spec.domain.elliptic_radius();
  const int K = spec.trunc.n_angular;
  const int n_w = spec.trunc.n_omega;
  const double dw = spec.domega();
  SeriesDiagnostics local;

  std::vector<MathieuBasis> bases;
  bases.reserve(n_w);
  for (int l = 0; l < n_w; ++l) {
    const double omega = spec.omega(l);
    bases.emplace_back(0.25 * eps * eps * omega * omega);
  }

  // Denominators R_k(r0; omega) and their guard thresholds.
  Eigen::MatrixXd denom(K + 1, n_w);
  for (int l = 0; l < n_w; ++l) {
    for (int k = 0; k <= K; ++k) {
      denom(k, l) = mathieu_radial(bases[l].phi_mode(k), r0);
    }
  }
  Eigen::VectorXd guard(K + 1);
  for (int k = 0; k <= K; ++k) {
    guard[k] = 1e-3 * denom.row(k).cwiseAbs().maxCoeff();
  }

  // Accumulate the series on an (r, phi) elliptic grid, one rank-K update
  // per omega node.
  const int n_r = 256;
  const int n_phi = 768;
  const double dr = r0 / (n_r - 1);
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n_r, n_phi);
  Eigen::MatrixXd r_mat(K + 1, n_r);
  Eigen::MatrixXd phi_mat(K + 1, n_phi);
  Eigen::VectorXd weights(K + 1);
  double max_imag = 0.0, max_abs = 0.0;
  for (int l = 0; l < n_w; ++l) {
    for (int k = 0; k <= K; ++k) {
      local.terms_total += 1;
      const Complex c = spec.coeffs(k, l);
      max_imag = std::max(max_imag, std::abs(c.imag()));
      max_abs = std::max(max_abs, std::abs(c));
      if (std::abs(denom(k, l)) < guard[k]) {
        local.terms_dropped += 1;
        weights[k] = 0.0;
        r_mat.row(k).setZero();
        phi_mat.row(k).setZero();
        continue;
      }
      const MathieuMode mode = bases[l].phi_mode(k);
      for (int m = 0; m < n_r; ++m) {
        r_mat(k, m) = mathieu_radial(mode, m * dr);
      }
      for (int p = 0; p < n_phi; ++p) {
        phi_mat(k, p) = mathieu_angular(mode, 2.0 * kPi * p / n_phi);
      }
      weights[k] = std::sqrt(2.0) / kPi * dw * c.real() / denom(k, l);
    }
    acc.noalias() += r_mat.transpose() * weights.asDiagonal() * phi_mat;
  }
  local.max_imag_fraction = max_abs > 0.0 ? max_imag / max_abs : 0.0;

  ImageGrid out(grid);
  for (int jy = 0; jy < grid.ny; ++jy) {
    for (int ix = 0; ix < grid.nx; ++ix) {
      const Complex w(grid.x(ix) / eps, grid.y(jy) / eps);
      const Complex z = std::acosh(w);
      const double r = z.real();
      if (r > r0) continue;
      double phi = z.imag();
      if (phi < 0.0) phi += 2.0 * kPi;
      // bilinear on the (r, phi) table, periodic in phi
      const double u = r / dr;
      const int m = std::min(static_cast<int>(u), n_r - 2);
      const double fu = u - m;
      const double v = phi / (2.0 * kPi / n_phi);
      const int p = std::min(static_cast<int>(v), n_phi - 1);
      const double fv = v - p;
      const int p1 = (p + 1) % n_phi;
      out.values(jy, ix) =
          (1.0 - fv) * ((1.0 - fu) * acc(m, p) + fu * acc(m + 1, p)) +
          fv * ((1.0 - fu) * acc(m, p1) + fu * acc(m + 1, p1));
    }
  }
  if (diag) *diag = local;
  return out;
}

SphericalMeanData spherical_means_from_m2(const MeasurementData& data) {
  if (data.layout.mode != Mode::m2) {
    throw std::invalid_argument("spherical_means_from_m2: data mode must be m2");
  }
  const int n_s = data.layout.n_sensors;
  const int n_t = data.layout.n_t;
  const double dt = data.layout.dt();
  SphericalMeanData means;
  means.r_max = data.layout.t_max;
  means.values.resize(n_s, n_t);
  means.centers.resize(n_s);
  for (int j = 0; j < n_s; ++j) {
    means.centers[j] = data.layout.sensor_position(j);
    // cumulative trapezoid of the interpolant anchored at (0, 0)
    double integral = 0.25 * data.values(j, 0) * dt;
    means.values(j, 0) = 2.0 * integral;
    for (int i = 1; i < n_t; ++i) {
      integral += 0.5 * (data.values(j, i - 1) + data.values(j, i)) * dt;
      means.values(j, i) = 2.0 * integral;
    }
  }
  return means;
}

SphericalMeanData spherical_means_from_m1(const MeasurementData& data, int n_r,
                                          double r_max, int n_quad) {
  if (data.layout.mode != Mode::m1) {
    throw std::invalid_argument("spherical_means_from_m1: data mode must be m1");
  }
  if (r_max <= 0.0) r_max = data.layout.t_max;
  if (r_max > data.layout.t_max) {
    throw std::invalid_argument(
        "spherical_means_from_m1: r_max exceeds the data time range");
  }
  if (n_r < 2) throw std::invalid_argument("spherical_means_from_m1: n_r >= 2");
  const int n_s = data.layout.n_sensors;
  const double dt = data.layout.dt();
  SphericalMeanData means;
  means.r_max = r_max;
  means.values.resize(n_s, n_r);
  means.centers.resize(n_s);
  for (int j = 0; j < n_s; ++j) {
    means.centers[j] = data.layout.sensor_position(j);
    const Eigen::VectorXd row = data.values.row(j);
    for (int m = 0; m < n_r; ++m) {
      means.values(j, m) = spherical_means_from_wave_2d(
          row, dt, means.radius(m), n_quad);
    }
  }
  return means;
}

ImageGrid recon_fhr(const SphericalMeanData& means, FhrVariant variant,
                    const GridSpec& grid) {
  const double R = circle_radius_of(means);
  const int n_s = static_cast<int>(means.centers.size());
  const int n_r = means.n_r();
  const double dr = means.dr();
  const double dphi = 2.0 * kPi / n_s;

  // Integrand weights against the log kernel.
  Eigen::MatrixXd w(n_s, n_r);
  if (variant == FhrVariant::lap) {
    for (int m = 0; m < n_r; ++m) {
      w.col(m) = means.values.col(m) * (means.radius(m) * dr * dphi);
    }
  } else {
    // (d_r r d_r M) by central differences on the uniform radius grid.
    Eigen::MatrixXd d1(n_s, n_r);
    for (int m = 0; m < n_r; ++m) {
      if (m == 0) {
        d1.col(m) = (means.values.col(1) - means.values.col(0)) / dr;
      } else if (m == n_r - 1) {
        d1.col(m) = (means.values.col(m) - means.values.col(m - 1)) / dr;
      } else {
        d1.col(m) =
            (means.values.col(m + 1) - means.values.col(m - 1)) / (2.0 * dr);
      }
      d1.col(m) *= means.radius(m);
    }
    for (int m = 0; m < n_r; ++m) {
      if (m == 0) {
        w.col(m) = (d1.col(1) - d1.col(0)) / dr;
      } else if (m == n_r - 1) {
        w.col(m) = (d1.col(m) - d1.col(m - 1)) / dr;
      } else {
        w.col(m) = (d1.col(m + 1) - d1.col(m - 1)) / (2.0 * dr);
      }
      w.col(m) *= dr * dphi;
    }
  }

  // Shared log kernel on a dense distance grid, then one GEMM.
  const bool lap = variant == FhrVariant::lap;
  const GridSpec padded{grid.xmin - grid.dx(), grid.xmax + grid.dx(),
                        grid.ymin - grid.dy(), grid.ymax + grid.dy(),
                        grid.nx + 2, grid.ny + 2};
  const double c_max =
      std::max({Vec2(padded.xmin, padded.ymin).norm(),
                Vec2(padded.xmin, padded.ymax).norm(),
                Vec2(padded.xmax, padded.ymin).norm(),
                Vec2(padded.xmax, padded.ymax).norm()}) +
      R + 1e-6;
  const int n_c = 2048;
  const double dc = c_max / (n_c - 1);
  Eigen::MatrixXd kernel(n_r, n_c);
  for (int i = 0; i < n_c; ++i) {
    const double c2 = (i * dc) * (i * dc);
    for (int m = 0; m < n_r; ++m) {
      const double r = means.radius(m);
      kernel(m, i) = std::log(std::max(std::abs(r * r - c2), 1e-300));
    }
  }
  const Eigen::MatrixXd table = (w * kernel).transpose();  // (n_c, n_s)

  // Backproject onto the (padded, for "lap") pixel grid.
  const GridSpec& bp = lap ? padded : grid;
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(bp.ny, bp.nx);
  for (int jy = 0; jy < bp.ny; ++jy) {
    for (int ix = 0; ix < bp.nx; ++ix) {
      const Vec2 p(bp.x(ix), bp.y(jy));
      double acc = 0.0;
      for (int j = 0; j < n_s; ++j) {
        const double c = (p - means.centers[j]).norm();
        acc += lerp_uniform(table.col(j), 0.0, dc, c);
      }
      b(jy, ix) = acc;
    }
  }

  ImageGrid out(grid);
  if (lap) {
    const double idx2 = 1.0 / (grid.dx() * grid.dx());
    const double idy2 = 1.0 / (grid.dy() * grid.dy());
    for (int jy = 0; jy < grid.ny; ++jy) {
      for (int ix = 0; ix < grid.nx; ++ix) {
        const double lapl =
            (b(jy + 1, ix) + b(jy + 1, ix + 2) - 2.0 * b(jy + 1, ix + 1)) *
                idx2 +
            (b(jy, ix + 1) + b(jy + 2, ix + 1) - 2.0 * b(jy + 1, ix + 1)) *
                idy2;
        out.values(jy, ix) = lapl / (2.0 * kPi);
      }
    }
  } else {
    out.values = b / (2.0 * kPi);
  }
  return out;
}

std::vector<DiskEigenmode> disk_eigenmodes(double R, double alpha_max) {
  if (!(R > 0.0) || !(alpha_max > 0.0)) {
    throw std::invalid_argument("disk_eigenmodes: R and alpha_max must be > 0");
  }
  std::vector<DiskEigenmode> modes;
  for (int k = 0;; ++k) {
    const auto zeros = bessel_j_zeros_upto(k, alpha_max);
    if (zeros.empty()) break;
    for (int j = 0; j < static_cast<int>(zeros.size()); ++j) {
      DiskEigenmode mode;
      mode.k = k;
      mode.j = j + 1;
      mode.alpha = zeros[j];
      mode.lambda = (zeros[j] / R) * (zeros[j] / R);
      mode.norm_const =
          1.0 / (std::sqrt(kPi) * R * std::abs(bessel_j(k + 1, zeros[j])));
      modes.push_back(mode);
      if (k > 0) {
        mode.k = -k;
        modes.push_back(mode);
      }
    }
  }
  std::sort(modes.begin(), modes.end(),
            [](const DiskEigenmode& a, const DiskEigenmode& b) {
              if (a.lambda != b.lambda) return a.lambda < b.lambda;
              return a.k < b.k;
            });
  return modes;
}

ImageGrid recon_kunyansky_disk(const SphericalMeanData& means,
                               const std::vector<DiskEigenmode>& modes,
                               const GridSpec& grid) {
  if (modes.empty()) {
    throw std::invalid_argument("recon_kunyansky_disk: no eigenmodes given");
  }
  const double R = circle_radius_of(means);
  const int n_s = static_cast<int>(means.centers.size());
  const int n_r = means.n_r();
  const double dr = means.dr();
  const double dphi = 2.0 * kPi / n_s;

  int k_max = 0;
  for (const auto& m : modes) k_max = std::max(k_max, std::abs(m.k));

  // s_mode(eta) = int r M(eta, r) G_lambda(r) dr, all modes at once.
  Eigen::MatrixXd green(static_cast<int>(modes.size()), n_r);
  for (int q = 0; q < static_cast<int>(modes.size()); ++q) {
    const double sq = std::sqrt(modes[q].lambda);
    for (int m = 0; m < n_r; ++m) {
      const double r = means.radius(m);
      green(q, m) = -0.25 * bessel_y0(sq * r) * r * dr;
    }
  }
  const Eigen::MatrixXd s = green * means.values.transpose();  // (modes, n_s)

  // M~_mode = R dphi sum_eta s(eta) e^{i k phi_eta} * <grad u, n> factor.
  Eigen::MatrixXcd phases(2 * k_max + 1, n_s);
  for (int k = -k_max; k <= k_max; ++k) {
    for (int j = 0; j < n_s; ++j) {
      phases(k + k_max, j) = std::exp(Complex(0.0, k * 2.0 * kPi * j / n_s));
    }
  }

  // Radial accumulation per angular index:
  // G_k(d) = 2 pi sum_j M~ N J_|k|(alpha d / R), one column per k.
  const int n_d = std::max(512, 2 * std::max(grid.nx, grid.ny));
  const double dd = R / (n_d - 1);
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(n_d, 2 * k_max + 1);
  for (int q = 0; q < static_cast<int>(modes.size()); ++q) {
    const DiskEigenmode& mode = modes[q];
    const int col = mode.k + k_max;
    const Complex t =
        phases.row(col).transpose().cwiseProduct(s.col(q).cast<Complex>())
            .sum();
    const double boundary_factor = -mode.norm_const *
                                   (mode.alpha / R) *
                                   bessel_j(std::abs(mode.k) + 1, mode.alpha);
    const Complex coeff =
        2.0 * kPi * (R * dphi) * t * boundary_factor * mode.norm_const;
    for (int m = 0; m < n_d; ++m) {
      g(m, col) +=
          coeff * bessel_j(std::abs(mode.k), mode.alpha * (m * dd) / R);
    }
  }
  const Eigen::MatrixXd g_re = g.real();
  const Eigen::MatrixXd g_im = g.imag();

  ImageGrid out(grid);
  for (int jy = 0; jy < grid.ny; ++jy) {
    for (int ix = 0; ix < grid.nx; ++ix) {
      const Vec2 p(grid.x(ix), grid.y(jy));
      const double d = p.norm();
      if (d > R) continue;
      const double phi = std::atan2(p.y(), p.x());
      const Complex e = std::exp(Complex(0.0, phi));
      Complex ek = std::exp(Complex(0.0, -k_max * phi));
      Complex acc(0.0, 0.0);
      for (int r = 0; r < 2 * k_max + 1; ++r) {
        acc += ek * Complex(lerp_uniform(g_re.col(r), 0.0, dd, d),
                            lerp_uniform(g_im.col(r), 0.0, dd, d));
        ek *= e;
      }
      out.values(jy, ix) = acc.real();
    }
  }
  return out;
}

Sinogram m3_to_sinogram(const MeasurementData& data, int n_offsets,
                        double s_max) {
  if (data.layout.mode != Mode::m3) {
    throw std::invalid_argument("m3_to_sinogram: data mode must be m3");
  }
  const int n_a = data.layout.n_sensors;
  const double dt = data.layout.dt();
  Sinogram sino(n_a, n_offsets, s_max);
  for (int j = 0; j < n_a; ++j) {
    const Direction theta = data.layout.sensor_direction(j);
    const double h = data.layout.domain.support_value(theta);
    const Eigen::VectorXd row = data.values.row(j);
    for (int i = 0; i < n_offsets; ++i) {
      const double s = sino.offset(i);
      if (s >= h) continue;
      sino.values(i, j) =
          lerp_uniform_anchored(row, 0.5 * dt, dt, h - s, 0.0);
    }
  }
  return sino;
}

ImageGrid recon_m3(const MeasurementData& data, const GridSpec& grid,
                   int n_offsets, double s_max) {
  if (s_max <= 0.0) s_max = circumradius(data.layout.domain);
  const Sinogram sino = m3_to_sinogram(data, n_offsets, s_max);
  ImageGrid out = radon_inverse(sino, grid);
  out.values *= 2.0;
  return out;
}

Sinogram m4_recover_radon(const MeasurementData& data, int n_offsets,
                          double s_max, int n_quad) {
  if (data.layout.mode != Mode::m4) {
    throw std::invalid_argument("m4_recover_radon: data mode must be m4");
  }
  const int n_a = data.layout.n_sensors;
  const double dt = data.layout.dt();
  Sinogram sino(n_a, n_offsets, s_max);
  for (int j = 0; j < n_a; ++j) {
    const Direction theta = data.layout.sensor_direction(j);
    const double h = data.layout.domain.support_value(theta);
    const Eigen::VectorXd row = data.values.row(j);
    for (int i = 0; i < n_offsets; ++i) {
      const double s = sino.offset(i);
      if (s >= h) continue;
      const double rho = h - s;
      const double integral = integrate_trapezoid(
          [&](double alpha) {
            return lerp_uniform_anchored(row, 0.5 * dt, dt,
                                         rho * std::sin(alpha), 0.0);
          },
          0.0, 0.5 * kPi, n_quad);
      sino.values(i, j) = 4.0 * rho * integral;
    }
  }
  return sino;
}

ImageGrid recon_m4(const MeasurementData& data, const GridSpec& grid,
                   int n_offsets, double s_max, int n_quad) {
  if (s_max <= 0.0) s_max = circumradius(data.layout.domain);
  const Sinogram radon = m4_recover_radon(data, n_offsets, s_max, n_quad);
  return radon_inverse(radon, grid);
}

}  // namespace spat
