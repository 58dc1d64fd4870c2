#pragma once

#include <Eigen/Dense>

#include <vector>

#include "spat/forward.hpp"
#include "spat/geometry.hpp"
#include "spat/grid.hpp"
#include "spat/specfun.hpp"
#include "spat/transforms.hpp"

namespace spat {

/// Truncation knobs of the series inversions.  omega runs on the midpoint
/// grid omega_l = (l + 1/2) omega_max / n_omega (which keeps omega = 0 and
/// its trivial Bessel/Mathieu denominators out of the sums).
struct SpectralTruncation {
  int n_angular = 32;      // K: |k| <= K (disk), series index k <= K (ellipse)
  double omega_max = 0.0;  // required > 0
  int n_omega = 256;
  double k_max = 24.0;     // half-space: k in [-k_max, k_max]
  int n_k = 257;           // half-space: nodes on the k grid

  static SpectralTruncation defaults_for(const ConvexDomain& domain);
};

/// Fourier-cosine transform of m1 data; the row meaning depends on the
/// domain: integer k = row - K for the disk, Mathieu series index k = row
/// for the ellipse, continuous k = -k_max + row * dk for the half-space.
struct SpectralData {
  ConvexDomain domain = ConvexDomain::disk(1.0);
  SpectralTruncation trunc;
  Eigen::MatrixXcd coeffs;

  double domega() const { return trunc.omega_max / trunc.n_omega; }
  double omega(int l) const { return (l + 0.5) * domega(); }
  double dk() const { return 2.0 * trunc.k_max / (trunc.n_k - 1); }
  double k_value(int row) const { return -trunc.k_max + row * dk(); }
};

/// Per-run bookkeeping of the resonance guard and complex residuals.
struct SeriesDiagnostics {
  long terms_total = 0;
  long terms_dropped = 0;
  double max_imag_fraction = 0.0;  // |imag| peak relative to |real| peak
};

SpectralData spectral_transform_m1(const MeasurementData& data,
                                   const SpectralTruncation& trunc);

ImageGrid recon_m1_halfspace(const SpectralData& spec, const GridSpec& grid);
ImageGrid recon_m1_disk_series(const SpectralData& spec, const GridSpec& grid,
                               SeriesDiagnostics* diag = nullptr);
ImageGrid recon_m1_ellipse_series(const SpectralData& spec,
                                  const GridSpec& grid,
                                  SeriesDiagnostics* diag = nullptr);

/// M2[f](xi; t) = 2 int_0^t m2(xi; s) ds, cumulative trapezoid per sensor;
/// the radii inherit the half-step time grid.
SphericalMeanData spherical_means_from_m2(const MeasurementData& data);

/// Circular means from m1 data via the Abel-type time integral, on n_r
/// half-step radii up to r_max (default: t_max).
SphericalMeanData spherical_means_from_m1(const MeasurementData& data, int n_r,
                                          double r_max = 0.0, int n_quad = 512);

enum class FhrVariant { lap, inv };

/// Finch-Haltmeier-Rakesh inversion of circular means measured on a circle:
/// log-kernel backprojection with either the outer Laplacian ("lap") or the
/// inner d_r r d_r data derivative ("inv").
ImageGrid recon_fhr(const SphericalMeanData& means, FhrVariant variant,
                    const GridSpec& grid);

/// Dirichlet eigenfunction of the disk: u(d, phi) = N J_|k|(alpha d / R)
/// e^{i k phi} with J_|k|(alpha) = 0 and ||u||_2 = 1.
struct DiskEigenmode {
  int k = 0;       // angular index, any sign
  int j = 1;       // radial index, 1-based
  double alpha = 0.0;
  double lambda = 0.0;      // (alpha / R)^2
  double norm_const = 0.0;  // 1 / (sqrt(pi) R |J_{|k|+1}(alpha)|)
};

/// All modes with alpha = sqrt(lambda) R <= alpha_max, both signs of k,
/// sorted by lambda.
std::vector<DiskEigenmode> disk_eigenmodes(double R, double alpha_max);

/// Eigenfunction-series inversion of circular means on the disk with the
/// free-space Green's function G_lambda(r) = -(1/4) Y_0(sqrt(lambda) r).
ImageGrid recon_kunyansky_disk(const SphericalMeanData& means,
                               const std::vector<DiskEigenmode>& modes,
                               const GridSpec& grid);

/// Offsets s = <zeta(theta), theta> - t resampled onto a uniform grid;
/// zero for s >= <zeta(theta), theta>.
Sinogram m3_to_sinogram(const MeasurementData& data, int n_offsets,
                        double s_max);

/// f = 2 R^{-1}[m3 resampled]; s_max defaults to the domain circumradius.
ImageGrid recon_m3(const MeasurementData& data, const GridSpec& grid,
                   int n_offsets = 1024, double s_max = 0.0);

/// Radon data recovered from m4 by the Abel transform of the rescaled
/// measurements: F(<zeta,theta> - rho) = 4 rho int_0^{pi/2} m4(rho sin a) da.
Sinogram m4_recover_radon(const MeasurementData& data, int n_offsets,
                          double s_max, int n_quad = 512);

ImageGrid recon_m4(const MeasurementData& data, const GridSpec& grid,
                   int n_offsets = 1024, double s_max = 0.0, int n_quad = 512);

}  // namespace spat
