#pragma once

#include <cstddef>
#include <vector>

#include "hsr/grid.hpp"
#include "hsr/pswf.hpp"

namespace hsr {

/// Size of the uniform quadrature grid used for every integral against psi_j.
inline constexpr std::size_t kDefaultOversampleN = 1024;

/// Piecewise-linear resampling of f onto `target_n` uniform nodes of the same
/// interval.
SampledFunction1D oversample_linear(const SampledFunction1D& f, std::size_t target_n);

/// F_c[f](x) = int_{-1}^{1} exp(i c x y) f(y) dy at the nodes of f. f must live
/// on [-1, 1]; it is linearly oversampled to max(n, oversample_n) points and
/// integrated by the trapezoid rule with Gregory end corrections (O(h^6) for
/// smooth f).
SampledFunction1D apply_fc(const PSWFBasis& basis, const SampledFunction1D& f,
                           std::size_t oversample_n = kDefaultOversampleN);

/// A function on [-1, 1] held as complex coefficients in normalized Legendre
/// polynomials; evaluates at arbitrary points with two Clenshaw sweeps.
class LegendreExpansion {
 public:
  LegendreExpansion() = default;
  LegendreExpansion(std::vector<double> re, std::vector<double> im);

  cdouble operator()(double x) const;
  std::size_t degree_bound() const noexcept { return re_.size(); }

 private:
  std::vector<double> re_;
  std::vector<double> im_;
};

/// Projection machinery for the truncated inverse
///
///   F^{-1}_{m,c}[g] = sum_{j <= m} mu_j^{-1} psi_j <psi_j, g>.
///
/// Inner products use the trapezoid rule on a uniform oversampled grid. The
/// coefficients are those of the orthogonal projection in that discrete inner
/// product (trapezoid Gram matrix of psi_0..psi_m solved exactly), so data
/// lying in span{psi_0..psi_m} is reproduced to rounding even though the
/// trapezoid rule alone only integrates psi_i psi_j to O(h^2).
class TruncatedInverse {
 public:
  TruncatedInverse(const PSWFBasis& basis, std::size_t max_m,
                   std::size_t oversample_n = kDefaultOversampleN);

  std::size_t max_m() const noexcept { return max_m_; }
  std::size_t quadrature_size() const noexcept { return nodes_.size(); }

  /// Trapezoid moments <psi_j, g>, j = 0..max_m. g must live on [-1, 1].
  std::vector<cdouble> moments(const SampledFunction1D& g) const;

  /// Coefficients c_j = a_j / mu_j (j = 0..m) of F^{-1}_{m,c}[g], where a solves
  /// the Gram system for psi_0..psi_m.
  std::vector<cdouble> inverse_coefficients(std::span<const cdouble> moments,
                                            std::size_t m) const;

  /// sum_j coeffs_j psi_j as a single Legendre expansion.
  LegendreExpansion expansion(std::span<const cdouble> coeffs) const;

 private:
  std::vector<std::vector<double>> coeffs_;  // [j][k], Legendre coefficients
  std::vector<cdouble> mu_;
  std::size_t max_m_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<std::vector<double>> psi_;  // [j][node]
  std::vector<double> gram_;              // (max_m+1)^2, row-major
};

/// F^{-1}_{m,c}[g] sampled on the grid of g.
SampledFunction1D invert_fc_truncated(const PSWFBasis& basis, const SampledFunction1D& g,
                                      std::size_t m,
                                      std::size_t oversample_n = kDefaultOversampleN);

}  // namespace hsr
