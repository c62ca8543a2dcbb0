#include "hsr/special.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "hsr/error.hpp"

namespace hsr {

double bessel_j(double nu, double x) {
  require(nu >= -0.5, "Bessel order must be >= -1/2");
  require(x >= 0.0, "Bessel argument must be non-negative");
  if (x == 0.0) {
    if (nu == 0.0) return 1.0;
    // J_{-1/2}(x) ~ x^{-1/2}; the Hankel kernel multiplies by sqrt(x) first.
    if (nu < 0.0) return std::numeric_limits<double>::infinity();
    return 0.0;
  }
  // libstdc++ rejects negative orders.
  if (nu == -0.5) return std::sqrt(2.0 / (std::numbers::pi * x)) * std::cos(x);
  return std::cyl_bessel_j(nu, x);
}

double legendre_p(unsigned n, double x) {
  if (n == 0) return 1.0;
  double p0 = 1.0;
  double p1 = x;
  for (unsigned k = 1; k < n; ++k) {
    const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double chebyshev_t(unsigned n, double x) {
  if (n == 0) return 1.0;
  double t0 = 1.0;
  double t1 = x;
  for (unsigned k = 1; k < n; ++k) {
    const double t2 = 2.0 * x * t1 - t0;
    t0 = t1;
    t1 = t2;
  }
  return t1;
}

double normalized_legendre_series(std::span<const double> coeffs, double x) {
  // Clenshaw for sum a_k P_k with P_{k+1} = (2k+1)/(k+1) x P_k - k/(k+1) P_{k-1}.
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    const double kd = static_cast<double>(k);
    const double a = coeffs[k] * std::sqrt(kd + 0.5);
    const double alpha = (2.0 * kd + 1.0) * x / (kd + 1.0);
    const double beta = -(kd + 1.0) / (kd + 2.0);
    const double b0 = a + alpha * b1 + beta * b2;
    b2 = b1;
    b1 = b0;
  }
  return b1;
}

double normalized_legendre_series_derivative_at_zero(std::span<const double> coeffs) {
  // P_k'(0) = k P_{k-1}(0) for odd k; zero for even k.
  double acc = 0.0;
  double p_prev = 1.0;  // P_{k-1}(0) for k = 1
  for (std::size_t k = 1; k < coeffs.size(); k += 2) {
    const double kd = static_cast<double>(k);
    acc += coeffs[k] * std::sqrt(kd + 0.5) * kd * p_prev;
    // P_{k+1}(0) = -k/(k+1) P_{k-1}(0)
    p_prev *= -kd / (kd + 1.0);
  }
  return acc;
}

QuadratureRule gauss_legendre(std::size_t n, double a, double b) {
  require(n >= 1, "Gauss-Legendre rule needs at least one node");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  const double nd = static_cast<double>(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (nd + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 1; k < n; ++k) {
        const double kd = static_cast<double>(k);
        const double p2 = ((2.0 * kd + 1.0) * x * p1 - kd * p0) / (kd + 1.0);
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = nd * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute derivative at the converged node for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t k = 1; k < n; ++k) {
      const double kd = static_cast<double>(k);
      const double p2 = ((2.0 * kd + 1.0) * x * p1 - kd * p0) / (kd + 1.0);
      p0 = p1;
      p1 = p2;
    }
    dp = nd * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = mid - half * x;
    rule.nodes[n - 1 - i] = mid + half * x;
    rule.weights[i] = half * w;
    rule.weights[n - 1 - i] = half * w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = mid;
  return rule;
}

template <class T>
std::vector<T> derivative_uniform(std::span<const T> f, double h) {
  const std::size_t n = f.size();
  require(n >= 3, "finite differences need at least 3 samples");
  std::vector<T> d(n);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
  d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
  return d;
}

template <class T>
std::vector<T> second_derivative_uniform(std::span<const T> f, double h) {
  const std::size_t n = f.size();
  require(n >= 4, "second differences need at least 4 samples");
  std::vector<T> d(n);
  const double h2 = h * h;
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / h2;
  d[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2;
  d[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / h2;
  return d;
}

template std::vector<double> derivative_uniform(std::span<const double>, double);
template std::vector<std::complex<double>> derivative_uniform(
    std::span<const std::complex<double>>, double);
template std::vector<double> second_derivative_uniform(std::span<const double>, double);
template std::vector<std::complex<double>> second_derivative_uniform(
    std::span<const std::complex<double>>, double);

}  // namespace hsr
