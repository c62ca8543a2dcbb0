#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hsr/grid.hpp"

namespace hsr {

/// Order nu of the Hankel transform, restricted to nu in {-1/2, 0, 1/2, 1, ...}
/// and stored as the integer 2 nu.
class HankelOrder {
 public:
  explicit HankelOrder(int two_nu);
  /// Parses a numeric nu; 2 nu must be an integer >= -1.
  static HankelOrder from_nu(double nu);

  int two_nu() const noexcept { return two_nu_; }
  double nu() const noexcept { return 0.5 * two_nu_; }
  bool is_integer() const noexcept { return two_nu_ % 2 == 0; }
  bool is_half_integer() const noexcept { return two_nu_ % 2 != 0; }
  /// nu for integer orders.
  int integer_nu() const;
  /// n = nu - 1/2 for half-integer orders >= 1/2.
  int half_integer_n() const;
  /// (-1)^nu for integer nu, (-1)^n for half-integer nu.
  int parity_sign() const;

  bool operator==(const HankelOrder&) const = default;

 private:
  int two_nu_;
};

/// Hankel data h = H_nu[f] sampled on [0, r] for f supported in [0, sigma].
struct HankelDataset {
  HankelOrder order{0};
  double r = 0.0;
  double sigma = 0.0;
  SampledFunction1D h{UniformGrid(0.0, 1.0, 2)};
  double noise_level = 0.0;
  std::uint64_t seed = 0;

  double c() const noexcept { return r * sigma; }
  /// Throws on r <= 0, sigma <= 0, or a data grid other than [0, r].
  void validate() const;
};

/// J_nu(z) sqrt(z), finite at z = 0 for nu >= -1/2.
double hankel_kernel(double nu, double z);

/// Trapezoid rule for int_a^b f(s) J_nu(t s) sqrt(t s) ds at each t.
std::vector<cdouble> hankel_forward(HankelOrder order, const SampledFunction1D& f,
                                    std::span<const double> ts);

/// Dense trapezoid-weighted kernel matrix from a source grid to fixed target
/// points; reuse it when the same transform is applied many times.
class HankelMatrix {
 public:
  HankelMatrix(HankelOrder order, const UniformGrid& source, std::span<const double> targets);

  std::vector<cdouble> apply(std::span<const cdouble> values) const;
  const UniformGrid& source() const noexcept { return source_; }
  std::size_t rows() const noexcept { return rows_; }

 private:
  UniformGrid source_;
  std::size_t rows_;
  std::vector<double> kernel_;  // rows_ x source_.size(), weights folded in
};

/// f_naive = H_nu[h extended by zero beyond r], sampled on `out_grid`.
SampledFunction1D naive_inverse(const HankelDataset& data, const UniformGrid& out_grid);

/// Mirror grid of the data: x_k = t_k / r for t_k in the data grid, extended
/// to [-1, 0) by reflection (2N - 1 nodes).
UniformGrid symmetric_grid(const HankelDataset& data);

/// h_{r,nu} on [-1, 1]:
///   integer nu:      h(r|x|) / sqrt(r|x|), times (-1)^nu for x < 0
///   half-integer nu: h(r|x|) / (r|x|),     times (-1)^n  for x < 0
/// Data are interpolated linearly in t. Between 0 and the first positive data
/// node the function is continued by the parity-respecting polynomial
/// through the three nearest positive nodes (even: 1, x^2, x^4; odd: x, x^3, x^5).
SampledFunction1D symmetrize(const HankelDataset& data, const UniformGrid& x_grid);

/// Band-limited transform int_0^1 f(y) J_nu(c x y) sqrt(c x y) dy by trapezoid
/// rule; f must be sampled on [0, 1].
std::vector<cdouble> hankel_bandlimited_forward(HankelOrder order, const SampledFunction1D& f,
                                                double c, std::span<const double> xs);

/// Hankel data of `f` on N uniform points of [0, r], noiseless.
HankelDataset make_dataset(HankelOrder order, const SampledFunction1D& f, double r,
                           std::size_t n_samples);

}  // namespace hsr
