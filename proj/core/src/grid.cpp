#include "hsr/grid.hpp"

#include <cmath>

#include "hsr/error.hpp"

namespace hsr {

UniformGrid::UniformGrid(double a, double b, std::size_t n) : a_(a), b_(b), n_(n) {
  require(n >= 2, "uniform grid needs at least 2 nodes");
  require(std::isfinite(a) && std::isfinite(b), "grid endpoints must be finite");
  require(a < b, "grid endpoints must satisfy a < b");
}

std::vector<double> UniformGrid::nodes() const {
  std::vector<double> x(n_);
  for (std::size_t k = 0; k < n_; ++k) x[k] = node(k);
  return x;
}

std::vector<double> UniformGrid::trapezoid_weights() const {
  std::vector<double> w(n_, step());
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

UniformGrid UniformGrid::refined(std::size_t factor) const {
  require(factor >= 1, "refinement factor must be positive");
  return UniformGrid(a_, b_, (n_ - 1) * factor + 1);
}

SampledFunction1D::SampledFunction1D(UniformGrid grid, std::vector<cdouble> values)
    : grid_(grid), values_(std::move(values)) {
  require(values_.size() == grid_.size(),
          "sample count does not match grid size");
}

SampledFunction1D::SampledFunction1D(UniformGrid grid)
    : grid_(grid), values_(grid.size(), cdouble{}) {}

cdouble SampledFunction1D::interpolate(double x) const noexcept {
  const double a = grid_.a();
  const double h = grid_.step();
  if (x <= a) return values_.front();
  if (x >= grid_.b()) return values_.back();
  const double u = (x - a) / h;
  auto k = static_cast<std::size_t>(u);
  if (k + 1 >= values_.size()) k = values_.size() - 2;
  const double t = u - static_cast<double>(k);
  return (1.0 - t) * values_[k] + t * values_[k + 1];
}

double SampledFunction1D::l2_norm() const { return hsr::l2_norm(grid_, values_); }

bool SampledFunction1D::is_real() const noexcept {
  for (const auto& v : values_)
    if (v.imag() != 0.0) return false;
  return true;
}

double l2_norm(const UniformGrid& grid, std::span<const cdouble> values) {
  const auto w = grid.trapezoid_weights();
  double acc = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) acc += w[k] * std::norm(values[k]);
  return std::sqrt(acc);
}

double relative_l2_error(const SampledFunction1D& approx,
                         const SampledFunction1D& reference, double lo,
                         double hi) {
  const auto& g = approx.grid();
  const double h = g.step();
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double x = g.node(k);
    if (x < lo - 1e-12 || x > hi + 1e-12) continue;
    double w = h;
    if (x - h < lo - 1e-12 || x + h > hi + 1e-12) w *= 0.5;
    const cdouble ref = reference.interpolate(x);
    num += w * std::norm(approx[k] - ref);
    den += w * std::norm(ref);
  }
  require(den > 0.0, "reference has zero norm on the comparison window");
  return std::sqrt(num / den);
}

}  // namespace hsr
