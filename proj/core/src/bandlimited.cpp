#include "hsr/bandlimited.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <string>

#include "hsr/error.hpp"
#include "hsr/special.hpp"

namespace hsr {
namespace {

void require_unit_interval(const UniformGrid& g, const char* what) {
  if (g.a() != -1.0 || g.b() != 1.0)
    fail_validation(std::string(what) + " must be sampled on [-1, 1]");
}

// At least 8 quadrature nodes per period 2 pi / c of exp(i c x y).
void require_resolution(double c, std::size_t quad_n) {
  const double h = 2.0 / static_cast<double>(quad_n - 1);
  const double per_period = (2.0 * std::numbers::pi / c) / h;
  if (per_period < 8.0)
    fail_validation("quadrature grid too coarse for c = " + std::to_string(c) + " (" +
                    std::to_string(per_period) + " samples per oscillation)");
}

// Trapezoid weights with Gregory end corrections through fourth differences;
// exact for polynomials up to degree 5.
std::vector<double> gregory_weights(const UniformGrid& g) {
  static constexpr double kEnd[] = {95.0 / 288.0, 317.0 / 240.0, 23.0 / 30.0, 793.0 / 720.0,
                                    157.0 / 160.0};
  const std::size_t n = g.size();
  if (n < 2 * std::size(kEnd)) return g.trapezoid_weights();
  std::vector<double> w(n, g.step());
  for (std::size_t i = 0; i < std::size(kEnd); ++i) {
    w[i] = kEnd[i] * g.step();
    w[n - 1 - i] = kEnd[i] * g.step();
  }
  return w;
}

}  // namespace

SampledFunction1D oversample_linear(const SampledFunction1D& f, std::size_t target_n) {
  if (target_n < f.size())
    fail_validation("oversampling target " + std::to_string(target_n) +
                    " is smaller than the source size " + std::to_string(f.size()));
  const UniformGrid fine(f.grid().a(), f.grid().b(), target_n);
  return SampledFunction1D::from_function(fine, [&](double x) { return f.interpolate(x); });
}

SampledFunction1D apply_fc(const PSWFBasis& basis, const SampledFunction1D& f,
                           std::size_t oversample_n) {
  require_unit_interval(f.grid(), "F_c input");
  const std::size_t quad_n = std::max(oversample_n, f.size());
  require_resolution(basis.c, quad_n);
  const SampledFunction1D fine = oversample_linear(f, quad_n);
  const auto y = fine.grid().nodes();
  const auto w = gregory_weights(fine.grid());

  SampledFunction1D out(f.grid());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double x = f.grid().node(i);
    cdouble acc{};
    for (std::size_t k = 0; k < quad_n; ++k)
      acc += w[k] * std::polar(1.0, basis.c * x * y[k]) * fine[k];
    out[i] = acc;
  }
  return out;
}

LegendreExpansion::LegendreExpansion(std::vector<double> re, std::vector<double> im)
    : re_(std::move(re)), im_(std::move(im)) {
  require(re_.size() == im_.size(), "Legendre expansion parts differ in length");
}

cdouble LegendreExpansion::operator()(double x) const {
  return {normalized_legendre_series(re_, x), normalized_legendre_series(im_, x)};
}

TruncatedInverse::TruncatedInverse(const PSWFBasis& basis, std::size_t max_m,
                                   std::size_t oversample_n)
    : max_m_(max_m) {
  const std::size_t usable = basis.usable_max_index();
  if (max_m > usable)
    fail_validation("truncation index " + std::to_string(max_m) +
                    " exceeds the usable PSWF index " + std::to_string(usable));
  require_resolution(basis.c, oversample_n);

  const UniformGrid grid(-1.0, 1.0, oversample_n);
  nodes_ = grid.nodes();
  weights_ = grid.trapezoid_weights();
  coeffs_.assign(basis.legendre_coeffs.begin(),
                 basis.legendre_coeffs.begin() + static_cast<std::ptrdiff_t>(max_m + 1));
  mu_.assign(basis.mu.begin(), basis.mu.begin() + static_cast<std::ptrdiff_t>(max_m + 1));

  psi_.resize(max_m + 1);
  for (std::size_t j = 0; j <= max_m; ++j) psi_[j] = eval_psi(basis, j, nodes_);

  const std::size_t d = max_m + 1;
  gram_.assign(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      if ((i + j) % 2 == 1) continue;  // opposite parity: exactly zero on a symmetric grid
      double acc = 0.0;
      for (std::size_t k = 0; k < nodes_.size(); ++k)
        acc += weights_[k] * psi_[i][k] * psi_[j][k];
      gram_[i * d + j] = acc;
      gram_[j * d + i] = acc;
    }
}

std::vector<cdouble> TruncatedInverse::moments(const SampledFunction1D& g) const {
  require_unit_interval(g.grid(), "F_c^{-1} input");
  const std::size_t quad_n = nodes_.size();
  if (g.size() > quad_n)
    fail_validation("input has more samples than the quadrature grid");
  const SampledFunction1D fine = oversample_linear(g, quad_n);
  std::vector<cdouble> out(max_m_ + 1);
  for (std::size_t j = 0; j <= max_m_; ++j) {
    cdouble acc{};
    for (std::size_t k = 0; k < quad_n; ++k) acc += weights_[k] * psi_[j][k] * fine[k];
    out[j] = acc;
  }
  return out;
}

std::vector<cdouble> TruncatedInverse::inverse_coefficients(std::span<const cdouble> moments,
                                                            std::size_t m) const {
  if (m > max_m_)
    fail_validation("truncation index " + std::to_string(m) + " exceeds prepared range " +
                    std::to_string(max_m_));
  require(moments.size() >= m + 1, "not enough moments for the truncation index");
  const auto d = static_cast<Eigen::Index>(m + 1);
  const std::size_t stride = max_m_ + 1;
  Eigen::MatrixXd gram(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      gram(i, j) = gram_[static_cast<std::size_t>(i) * stride + static_cast<std::size_t>(j)];
  Eigen::VectorXcd rhs(d);
  for (Eigen::Index j = 0; j < d; ++j) rhs[j] = moments[static_cast<std::size_t>(j)];
  const Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success) fail_numerical("PSWF Gram matrix is not positive definite");
  const Eigen::VectorXcd a = llt.solve(rhs);

  std::vector<cdouble> out(m + 1);
  for (std::size_t j = 0; j <= m; ++j) out[j] = a[static_cast<Eigen::Index>(j)] / mu_[j];
  return out;
}

LegendreExpansion TruncatedInverse::expansion(std::span<const cdouble> coeffs) const {
  require(coeffs.size() <= coeffs_.size(), "more coefficients than prepared PSWFs");
  const std::size_t dim = coeffs_.front().size();
  std::vector<double> re(dim, 0.0), im(dim, 0.0);
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    for (std::size_t k = 0; k < dim; ++k) {
      re[k] += coeffs[j].real() * coeffs_[j][k];
      im[k] += coeffs[j].imag() * coeffs_[j][k];
    }
  return LegendreExpansion(std::move(re), std::move(im));
}

SampledFunction1D invert_fc_truncated(const PSWFBasis& basis, const SampledFunction1D& g,
                                      std::size_t m, std::size_t oversample_n) {
  require_unit_interval(g.grid(), "F_c^{-1} input");
  const TruncatedInverse inverse(basis, m, std::max(oversample_n, g.size()));
  const auto coeffs = inverse.inverse_coefficients(inverse.moments(g), m);
  const LegendreExpansion result = inverse.expansion(coeffs);
  return SampledFunction1D::from_function(g.grid(), [&](double y) { return result(y); });
}

}  // namespace hsr
