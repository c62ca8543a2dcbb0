#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace hsr {

using cdouble = std::complex<double>;

/// Uniform grid a + k (b - a) / (n - 1), k = 0..n-1. Both endpoints are nodes.
class UniformGrid {
 public:
  UniformGrid(double a, double b, std::size_t n);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  std::size_t size() const noexcept { return n_; }
  double step() const noexcept { return (b_ - a_) / static_cast<double>(n_ - 1); }

  double node(std::size_t k) const noexcept {
    // Pin the last node to b exactly.
    if (k + 1 == n_) return b_;
    return a_ + static_cast<double>(k) * step();
  }

  std::vector<double> nodes() const;

  /// Composite trapezoid weights for this grid.
  std::vector<double> trapezoid_weights() const;

  /// Grid with `factor` sub-intervals per original interval; original nodes are kept.
  UniformGrid refined(std::size_t factor) const;

  bool operator==(const UniformGrid&) const = default;

 private:
  double a_;
  double b_;
  std::size_t n_;
};

/// Complex samples of a function on a uniform grid.
class SampledFunction1D {
 public:
  SampledFunction1D(UniformGrid grid, std::vector<cdouble> values);

  /// Zero function on `grid`.
  explicit SampledFunction1D(UniformGrid grid);

  template <class F>
  static SampledFunction1D from_function(const UniformGrid& grid, F&& f) {
    std::vector<cdouble> v(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) v[k] = f(grid.node(k));
    return SampledFunction1D(grid, std::move(v));
  }

  const UniformGrid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const cdouble> values() const noexcept { return values_; }
  std::span<cdouble> values() noexcept { return values_; }
  const cdouble& operator[](std::size_t k) const noexcept { return values_[k]; }
  cdouble& operator[](std::size_t k) noexcept { return values_[k]; }

  /// Piecewise-linear interpolation; constant continuation outside [a, b].
  cdouble interpolate(double x) const noexcept;

  /// Trapezoid approximation of the L2 norm over [a, b].
  double l2_norm() const;

  bool is_real() const noexcept;

 private:
  UniformGrid grid_;
  std::vector<cdouble> values_;
};

/// Trapezoid-weighted L2 norm of `values` on `grid`.
double l2_norm(const UniformGrid& grid, std::span<const cdouble> values);

/// Relative L2 distance of two sampled functions on the sub-interval [lo, hi]
/// (nodes of `a` inside the window, trapezoid weights). `b` is interpolated.
double relative_l2_error(const SampledFunction1D& approx,
                         const SampledFunction1D& reference, double lo,
                         double hi);

}  // namespace hsr
