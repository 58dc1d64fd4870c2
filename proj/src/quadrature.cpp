#include "spat/quadrature.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace spat {

GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  GaussLegendre g;
  g.nodes.resize(n);
  g.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    g.nodes[i] = -x;
    g.nodes[n - 1 - i] = x;
    g.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    g.weights[n - 1 - i] = g.weights[i];
  }
  return g;
}

namespace {
const GaussLegendre& cached_gl(int n) {
  static std::map<int, GaussLegendre> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, gauss_legendre(n)).first;
  return it->second;
}
}  // namespace

double integrate_gl(const std::function<double(double)>& f, double a, double b,
                    int panels, int nodes_per_panel) {
  if (panels < 1) throw std::invalid_argument("integrate_gl: panels >= 1");
  const GaussLegendre& g = cached_gl(nodes_per_panel);
  const double width = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * width;
    double sum = 0.0;
    for (int i = 0; i < nodes_per_panel; ++i) {
      sum += g.weights[i] * f(mid + 0.5 * width * g.nodes[i]);
    }
    total += 0.5 * width * sum;
  }
  return total;
}

double integrate_trapezoid(const std::function<double(double)>& f, double a,
                           double b, int n) {
  if (n < 1) throw std::invalid_argument("integrate_trapezoid: n >= 1");
  const double h = (b - a) / n;
  double sum = 0.5 * (f(a) + f(b));
  for (int i = 1; i < n; ++i) sum += f(a + i * h);
  return sum * h;
}

double derivative5(const std::function<double(double)>& f, double x,
                   double h) {
  return (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) /
         (12.0 * h);
}

double lerp_uniform(const Eigen::Ref<const Eigen::VectorXd>& samples,
                    double first, double step, double x) {
  const Eigen::Index n = samples.size();
  if (n == 0) return 0.0;
  const double u = (x - first) / step;
  if (u < 0.0 || u > static_cast<double>(n - 1)) return 0.0;
  const auto i = static_cast<Eigen::Index>(u);
  if (i >= n - 1) return samples[n - 1];
  const double w = u - static_cast<double>(i);
  return (1.0 - w) * samples[i] + w * samples[i + 1];
}

double lerp_uniform_anchored(const Eigen::Ref<const Eigen::VectorXd>& samples,
                             double first, double step, double x,
                             double zero_left) {
  if (x < first) {
    if (samples.size() == 0 || x <= zero_left) return 0.0;
    return samples[0] * (x - zero_left) / (first - zero_left);
  }
  return lerp_uniform(samples, first, step, x);
}

}  // namespace spat
