#include "spat/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace spat {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// Ascending series J_n(x) = sum_m (-1)^m (x/2)^{n+2m} / (m! (n+m)!).
// Safe for any n; underflows cleanly to 0 when (x/2)^n/n! is below range.
double bessel_j_series(int n, double x) {
  const double half = 0.5 * x;
  double term = 1.0;
  for (int k = 1; k <= n; ++k) term *= half / k;
  if (term == 0.0) return 0.0;
  const double z = -half * half;
  double sum = term;
  for (int m = 1; m <= 64; ++m) {
    term *= z / (m * static_cast<double>(n + m));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// Miller's backward recurrence with the normalization
// J_0 + 2 sum_{k>=1} J_{2k} = 1.  Fills orders 0..nmax.
void bessel_j_miller(int nmax, double x, Eigen::VectorXd& out) {
  const int big = std::max(nmax, static_cast<int>(std::ceil(x)));
  int start = big + 16 +
              static_cast<int>(9.0 * std::cbrt(static_cast<double>(big)));
  if (start % 2 != 0) ++start;

  double fkp1 = 0.0;
  double fk = 1e-30;
  double norm = 0.0;  // accumulates f_0 + 2 sum f_{2m}
  for (int k = start; k >= 1; --k) {
    const double fkm1 = (2.0 * k / x) * fk - fkp1;
    fkp1 = fk;
    fk = fkm1;
    if (k - 1 <= nmax) out[k - 1] = fk;
    if ((k - 1) % 2 == 0) norm += (k == 1) ? fk : 2.0 * fk;
    if (std::abs(fk) > 1e280) {
      fk *= 1e-280;
      fkp1 *= 1e-280;
      norm *= 1e-280;
      for (int i = k - 1; i <= nmax; ++i) {
        if (i >= 0) out[i] *= 1e-280;
      }
    }
  }
  for (int i = 0; i <= nmax; ++i) out[i] /= norm;
}

}  // namespace

double bessel_j(int n, double x) {
  if (n < 0) throw std::invalid_argument("bessel_j: order must be >= 0");
  if (!(x >= 0.0)) throw std::invalid_argument("bessel_j: x must be >= 0");
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  if (x < 9.0) return bessel_j_series(n, x);
  Eigen::VectorXd all(n + 1);
  bessel_j_miller(n, x, all);
  return all[n];
}

Eigen::VectorXd bessel_j_all(int nmax, double x) {
  if (nmax < 0) throw std::invalid_argument("bessel_j_all: nmax must be >= 0");
  if (!(x >= 0.0)) throw std::invalid_argument("bessel_j_all: x must be >= 0");
  Eigen::VectorXd out(nmax + 1);
  if (x == 0.0) {
    out.setZero();
    out[0] = 1.0;
    return out;
  }
  if (x < 9.0) {
    for (int n = 0; n <= nmax; ++n) out[n] = bessel_j_series(n, x);
    return out;
  }
  bessel_j_miller(nmax, x, out);
  return out;
}

double bessel_y0(double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_y0: x must be > 0");
  if (x <= 9.0) {
    // Y0 = (2/pi) [ (ln(x/2) + gamma) J0(x)
    //              + sum_{k>=1} (-1)^{k+1} H_k (x^2/4)^k / (k!)^2 ].
    const double z = 0.25 * x * x;
    double u = 1.0;    // (x^2/4)^k / (k!)^2
    double hk = 0.0;   // harmonic number
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 60; ++k) {
      u *= z / (k * static_cast<double>(k));
      hk += 1.0 / k;
      const double term = sign * hk * u;
      sum += term;
      sign = -sign;
      if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-30) && k > 4) break;
    }
    return (2.0 / kPi) *
           ((std::log(0.5 * x) + kEulerGamma) * bessel_j(0, x) + sum);
  }
  // Amplitude/phase asymptotics: Y0 = sqrt(2/(pi x)) (P sin chi + Q cos chi),
  // chi = x - pi/4, with c_m = prod (2j-1)^2 / (m! (8x)^m),
  // P = 1 - c2 + c4 - ..., Q = -c1 + c3 - ...
  double c = 1.0;
  double p = 1.0, q = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int m = 1; m <= 40; ++m) {
    const double f = (2.0 * m - 1.0);
    c *= f * f / (m * 8.0 * x);
    if (c > prev) break;  // asymptotic series started diverging
    prev = c;
    const double signed_c = ((m / 2) % 2 == 0) ? c : -c;
    if (m % 2 == 0) {
      p += signed_c;  // m even: contributes (-1)^{m/2} c_m to P
    } else {
      q -= signed_c;  // m odd: contributes -(-1)^{(m-1)/2} c_m to Q
    }
    if (c < 1e-17) break;
  }
  const double chi = x - 0.25 * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (p * std::sin(chi) + q * std::cos(chi));
}

std::vector<double> bessel_j_zeros_upto(int n, double x_max) {
  if (n < 0) throw std::invalid_argument("bessel_j_zeros_upto: order >= 0");
  std::vector<double> zeros;
  // First zero of J_n is above n; scan for sign changes with a step well
  // below the asymptotic zero spacing pi.
  const double step = 0.5;
  double x0 = std::max(0.1, 0.8 * n);
  double f0 = bessel_j(n, x0);
  while (x0 < x_max) {
    const double x1 = x0 + step;
    const double f1 = bessel_j(n, x1);
    if ((f0 < 0.0) != (f1 < 0.0)) {
      double lo = x0, hi = x1, flo = f0;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = bessel_j(n, mid);
        if ((flo < 0.0) != (fm < 0.0)) {
          hi = mid;
        } else {
          lo = mid;
          flo = fm;
        }
        if (hi - lo < 1e-14) break;
      }
      const double z = 0.5 * (lo + hi);
      if (z <= x_max) zeros.push_back(z);
    }
    x0 = x1;
    f0 = f1;
  }
  return zeros;
}

double bessel_j_zero(int n, int j) {
  if (j < 1) throw std::invalid_argument("bessel_j_zero: j must be >= 1");
  // McMahon-style upper estimate for the scan range, with margin.
  double x_max = (j + 0.5 * n + 1.0) * kPi + 2.0 * n + 10.0;
  for (;;) {
    const auto zeros = bessel_j_zeros_upto(n, x_max);
    if (static_cast<int>(zeros.size()) >= j) return zeros[j - 1];
    x_max *= 1.5;
  }
}

// ---------------------------------------------------------------------------
// Mathieu functions.
//
// 2pi-periodic solutions of u'' + (a - 2 q cos 2s) u = 0 split into four
// Fourier symmetry classes.  Each class gives a symmetric tridiagonal
// eigenproblem for the characteristic values; the eigenvectors are the
// Fourier coefficients.  The cos(0 s) coefficient of the even-even class is
// rescaled by sqrt(2) to symmetrize, which also makes the unit eigenvector
// match the pi-normalization directly.
// ---------------------------------------------------------------------------

namespace {

enum ClassId {
  kCosEven = 0,  // ce_{2k}:    cos 0, cos 2s, cos 4s, ...
  kCosOdd = 1,   // ce_{2k+1}:  cos s, cos 3s, ...
  kSinOdd = 2,   // se_{2k+1}:  sin s, sin 3s, ...
  kSinEven = 3,  // se_{2k+2}:  sin 2s, sin 4s, ...
};

int mathieu_truncation(double q) {
  return std::max(25, static_cast<int>(std::ceil(1.5 * std::sqrt(q))) + 20);
}

void class_of(MathieuParity parity, int order, ClassId& cls, int& index) {
  if (parity == MathieuParity::even) {
    if (order < 0) throw std::invalid_argument("mathieu: even order >= 0");
    cls = (order % 2 == 0) ? kCosEven : kCosOdd;
    index = order / 2;
  } else {
    if (order < 1) throw std::invalid_argument("mathieu: odd parity needs n >= 1");
    cls = (order % 2 == 1) ? kSinOdd : kSinEven;
    index = (order % 2 == 1) ? (order - 1) / 2 : order / 2 - 1;
  }
}

int first_harmonic(ClassId cls) {
  switch (cls) {
    case kCosEven: return 0;
    case kCosOdd: return 1;
    case kSinOdd: return 1;
    case kSinEven: return 2;
  }
  return 0;
}

// Tridiagonal (diag, sub) of one symmetry class truncated to N terms.
void class_matrix(ClassId cls, double q, int N, Eigen::VectorXd& diag,
                  Eigen::VectorXd& sub) {
  diag.resize(N);
  sub.resize(N - 1);
  const int m0 = first_harmonic(cls);
  for (int i = 0; i < N; ++i) {
    const double m = m0 + 2.0 * i;
    diag[i] = m * m;
  }
  sub.setConstant(q);
  switch (cls) {
    case kCosEven:
      sub[0] = std::sqrt(2.0) * q;
      break;
    case kCosOdd:
      diag[0] += q;
      break;
    case kSinOdd:
      diag[0] -= q;
      break;
    case kSinEven:
      break;
  }
}

void solve_class(ClassId cls, double q, int N, Eigen::VectorXd& values,
                 Eigen::MatrixXd* vectors) {
  Eigen::VectorXd diag, sub;
  class_matrix(cls, q, N, diag, sub);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub,
                            vectors ? Eigen::ComputeEigenvectors
                                    : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("mathieu: tridiagonal eigensolver failed");
  }
  values = es.eigenvalues();
  if (vectors) *vectors = es.eigenvectors();
}

// Undo the sqrt(2) symmetrization and fix the dominant-coefficient sign.
Eigen::VectorXd extract_coeffs(ClassId cls, const Eigen::VectorXd& evec) {
  Eigen::VectorXd c = evec;
  if (cls == kCosEven) c[0] /= std::sqrt(2.0);
  Eigen::Index imax = 0;
  c.cwiseAbs().maxCoeff(&imax);
  if (c[imax] < 0.0) c = -c;
  return c;
}

}  // namespace

double mathieu_char(MathieuParity parity, int n, double q,
                    int min_truncation) {
  if (!(q >= 0.0)) throw std::invalid_argument("mathieu_char: q must be >= 0");
  ClassId cls;
  int index;
  class_of(parity, n, cls, index);
  const int N =
      std::max({mathieu_truncation(q), index + 10, min_truncation});
  Eigen::VectorXd values;
  solve_class(cls, q, N, values, nullptr);
  return values[index];
}

MathieuMode mathieu_mode(MathieuParity parity, int n, double q,
                         int min_truncation) {
  if (!(q >= 0.0)) throw std::invalid_argument("mathieu_mode: q must be >= 0");
  ClassId cls;
  int index;
  class_of(parity, n, cls, index);
  const int N =
      std::max({mathieu_truncation(q), index + 10, min_truncation});
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
  solve_class(cls, q, N, values, &vectors);
  MathieuMode mode;
  mode.parity = parity;
  mode.order = n;
  mode.q = q;
  mode.char_value = values[index];
  mode.harmonic0 = first_harmonic(cls);
  mode.coeffs = extract_coeffs(cls, vectors.col(index));
  return mode;
}

double mathieu_angular(const MathieuMode& mode, double s) {
  double sum = 0.0;
  const bool even = mode.parity == MathieuParity::even;
  for (Eigen::Index i = 0; i < mode.coeffs.size(); ++i) {
    const double m = mode.harmonic0 + 2.0 * i;
    sum += mode.coeffs[i] * (even ? std::cos(m * s) : std::sin(m * s));
  }
  return sum;
}

double mathieu_radial(const MathieuMode& mode, double r) {
  if (!(r >= 0.0)) throw std::invalid_argument("mathieu_radial: r must be >= 0");
  const double top =
      mode.harmonic0 + 2.0 * static_cast<double>(mode.coeffs.size() - 1);
  if (top * r > 700.0) {
    throw std::range_error("mathieu_radial: cosh overflow for this r");
  }
  double sum = 0.0;
  const bool even = mode.parity == MathieuParity::even;
  for (Eigen::Index i = 0; i < mode.coeffs.size(); ++i) {
    const double m = mode.harmonic0 + 2.0 * i;
    sum += mode.coeffs[i] * (even ? std::cosh(m * r) : std::sinh(m * r));
  }
  return sum;
}

MathieuBasis::MathieuBasis(double q) : q_(q) {
  if (!(q >= 0.0)) throw std::invalid_argument("MathieuBasis: q must be >= 0");
  trunc_ = mathieu_truncation(q);
  for (int cls = 0; cls < 4; ++cls) {
    Eigen::MatrixXd vectors;
    solve_class(static_cast<ClassId>(cls), q, trunc_, values_[cls], &vectors);
    coeffs_[cls].resize(trunc_, trunc_);
    for (int j = 0; j < trunc_; ++j) {
      coeffs_[cls].col(j) =
          extract_coeffs(static_cast<ClassId>(cls), vectors.col(j));
    }
  }
}

MathieuMode MathieuBasis::ce(int n) const {
  ClassId cls;
  int index;
  class_of(MathieuParity::even, n, cls, index);
  if (index >= trunc_) throw std::invalid_argument("MathieuBasis: order too large");
  MathieuMode mode;
  mode.parity = MathieuParity::even;
  mode.order = n;
  mode.q = q_;
  mode.char_value = values_[cls][index];
  mode.harmonic0 = first_harmonic(cls);
  mode.coeffs = coeffs_[cls].col(index);
  return mode;
}

MathieuMode MathieuBasis::se(int n) const {
  ClassId cls;
  int index;
  class_of(MathieuParity::odd, n, cls, index);
  if (index >= trunc_) throw std::invalid_argument("MathieuBasis: order too large");
  MathieuMode mode;
  mode.parity = MathieuParity::odd;
  mode.order = n;
  mode.q = q_;
  mode.char_value = values_[cls][index];
  mode.harmonic0 = first_harmonic(cls);
  mode.coeffs = coeffs_[cls].col(index);
  return mode;
}

MathieuMode MathieuBasis::phi_mode(int k) const {
  if (k < 0) throw std::invalid_argument("MathieuBasis: k must be >= 0");
  return (k % 2 == 0) ? ce(k / 2) : se((k + 1) / 2);
}

}  // namespace spat
