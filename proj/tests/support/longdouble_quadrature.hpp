#pragma once

// Extended-precision helpers shared by tests that need quadrature of F_c psi_j
// well below double rounding.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "hsr/pswf.hpp"

namespace hsr::testing {

struct LongRule {
  std::vector<long double> nodes;
  std::vector<long double> weights;
};

inline LongRule gauss_legendre_long(std::size_t n) {
  LongRule rule{std::vector<long double>(n), std::vector<long double>(n)};
  const long double pi = std::numbers::pi_v<long double>;
  for (std::size_t i = 0; i < n; ++i) {
    long double x = std::cos(pi * (static_cast<long double>(i) + 0.75L) /
                             (static_cast<long double>(n) + 0.5L));
    long double dp = 0.0L;
    for (int it = 0; it < 100; ++it) {
      long double p0 = 1.0L, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0L);
      const long double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-19L) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0L / ((1.0L - x * x) * dp * dp);
  }
  return rule;
}

/// psi_j(x) from the stored double coefficients, summed in long double.
inline long double psi_long(const PSWFBasis& b, std::size_t j, long double x) {
  const auto& c = b.legendre_coeffs[j];
  long double p0 = 1.0L, p1 = x, acc = c[0] * std::sqrt(0.5L);
  if (c.size() > 1) acc += c[1] * std::sqrt(1.5L) * p1;
  for (std::size_t k = 2; k < c.size(); ++k) {
    const long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
    p0 = p1;
    p1 = p2;
    acc += c[k] * std::sqrt(k + 0.5L) * p2;
  }
  return acc;
}

/// Eigen-relation check for psi_j: returns the relative L2 residual
/// ||F_c psi_j - mu_j psi_j|| / ||mu_j psi_j|| and the Rayleigh quotient
/// <F_c psi_j, psi_j> as an independent estimate of mu_j.
struct EigenCheck {
  double relative_residual = 0.0;
  std::complex<double> rayleigh;
};

inline EigenCheck eigen_relation(const PSWFBasis& b, std::size_t j, const LongRule& rule) {
  const std::size_t n = rule.nodes.size();
  std::vector<long double> psi(n);
  for (std::size_t k = 0; k < n; ++k) psi[k] = psi_long(b, j, rule.nodes[k]);
  const std::complex<long double> mu(b.mu[j].real(), b.mu[j].imag());
  const long double c = b.c;
  long double num = 0.0L, den = 0.0L;
  std::complex<long double> rq{};
  for (std::size_t i = 0; i < n; ++i) {
    std::complex<long double> fx{};
    for (std::size_t k = 0; k < n; ++k) {
      const long double arg = c * rule.nodes[i] * rule.nodes[k];
      fx += rule.weights[k] * psi[k] * std::complex<long double>(std::cos(arg), std::sin(arg));
    }
    num += rule.weights[i] * std::norm(fx - mu * psi[i]);
    den += rule.weights[i] * std::norm(mu * psi[i]);
    rq += rule.weights[i] * fx * psi[i];
  }
  return {static_cast<double>(std::sqrt(num / den)),
          {static_cast<double>(rq.real()), static_cast<double>(rq.imag())}};
}

}  // namespace hsr::testing
