#pragma once

#include <Eigen/Dense>

#include <vector>

namespace spat {

/// Bessel function J_n(x), n >= 0, x >= 0.  Ascending series for small x,
/// Miller backward recurrence with even-order normalization otherwise.
/// Relative accuracy ~1e-10 for x up to 1e3 (absolute near zeros).
double bessel_j(int n, double x);

/// J_0 .. J_nmax at a single argument from one backward-recurrence pass.
Eigen::VectorXd bessel_j_all(int nmax, double x);

/// Bessel function of the second kind Y_0(x), x > 0; series for small x,
/// amplitude/phase asymptotics for large x.  Accuracy ~1e-8.
double bessel_y0(double x);

/// The j-th positive zero of J_n (j >= 1), by scan and bisection.
double bessel_j_zero(int n, int j);

/// All positive zeros of J_n up to x_max, ascending.
std::vector<double> bessel_j_zeros_upto(int n, double x_max);

enum class MathieuParity { even, odd };

/// One periodic Mathieu eigenfunction: ce_n(.; q) for even parity or
/// se_n(.; q) for odd parity, under the pi-normalization
/// int_0^{2pi} u(s)^2 ds = pi.
///
/// The Fourier table stores u(s) = sum_i coeffs[i] * cos(m_i s) (even) or
/// sum_i coeffs[i] * sin(m_i s) (odd) with harmonics m_i = harmonic0 + 2 i.
struct MathieuMode {
  MathieuParity parity = MathieuParity::even;
  int order = 0;
  double q = 0.0;
  double char_value = 0.0;  // a_n(q) or b_n(q)
  int harmonic0 = 0;        // first harmonic: 0 or 2 (even order), 1 (odd)
  Eigen::VectorXd coeffs;
};

/// Characteristic value a_n(q) (even parity) or b_n(q) (odd parity, n >= 1),
/// from the symmetric tridiagonal Fourier-recurrence matrix truncated at
/// N = max(25, ceil(1.5 sqrt(q)) + 20) terms.  min_truncation raises N
/// (used by convergence checks that double the matrix).
double mathieu_char(MathieuParity parity, int n, double q,
                    int min_truncation = 0);

/// Full mode: characteristic value plus normalized Fourier coefficients.
/// The dominant coefficient is made positive so evaluations are
/// reproducible across runs and platforms.
MathieuMode mathieu_mode(MathieuParity parity, int n, double q,
                         int min_truncation = 0);

/// ce_n(s; q) or se_n(s; q).
double mathieu_angular(const MathieuMode& mode, double s);

/// Radial (modified) Mathieu function: ce_n(i r; q) for even parity or
/// -i se_n(i r; q) for odd parity, both real, via cos->cosh / sin->sinh.
/// Throws std::range_error when cosh of the top harmonic would overflow.
double mathieu_radial(const MathieuMode& mode, double r);

/// All four symmetry classes at a fixed q, each ℓ2-orthonormal; used by the
/// elliptic-coordinate series where every point of the omega grid needs the
/// whole family.  Column j of a class holds the coefficients of order-index
/// j within that class.
class MathieuBasis {
 public:
  explicit MathieuBasis(double q);

  double q() const { return q_; }
  int truncation() const { return trunc_; }

  /// Mode for the series index k of the elliptic expansion:
  /// k even -> ce_{k/2}, k odd -> se_{(k+1)/2}... see phi_mode().
  MathieuMode ce(int n) const;  // even parity, order n >= 0
  MathieuMode se(int n) const;  // odd parity, order n >= 1

  /// The angular basis element Phi_k: Phi_{2k} = ce_k, Phi_{2k+1} = se_{k+1}.
  MathieuMode phi_mode(int k) const;

 private:
  double q_ = 0.0;
  int trunc_ = 0;
  // [0] cos even harmonics (0,2,..), [1] cos odd (1,3,..),
  // [2] sin odd (1,3,..), [3] sin even (2,4,..)
  Eigen::MatrixXd coeffs_[4];
  Eigen::VectorXd values_[4];
};

}  // namespace spat
