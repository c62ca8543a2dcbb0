#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hsr {

/// Bessel function of the first kind J_nu(x) for nu >= -1/2, x >= 0.
double bessel_j(double nu, double x);

/// Legendre polynomial P_n(x) by three-term recurrence; any real x.
double legendre_p(unsigned n, double x);

/// Chebyshev polynomial T_n(x) by three-term recurrence; any real x.
double chebyshev_t(unsigned n, double x);

/// Sum of a_k * sqrt(k + 1/2) * P_k(x), i.e. an expansion in L2[-1,1]-normalized
/// Legendre polynomials, evaluated with the Clenshaw recurrence.
double normalized_legendre_series(std::span<const double> coeffs, double x);

/// Derivative at x = 0 of the same expansion.
double normalized_legendre_series_derivative_at_zero(std::span<const double> coeffs);

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule mapped to [a, b].
QuadratureRule gauss_legendre(std::size_t n, double a = -1.0, double b = 1.0);

/// Second-order finite-difference derivative of uniformly spaced samples:
/// central stencil inside, one-sided three-point stencil at both ends.
template <class T>
std::vector<T> derivative_uniform(std::span<const T> f, double h);

template <class T>
std::vector<T> second_derivative_uniform(std::span<const T> f, double h);

}  // namespace hsr
