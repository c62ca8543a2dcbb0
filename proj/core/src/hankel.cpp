#include "hsr/hankel.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "hsr/error.hpp"
#include "hsr/parallel.hpp"
#include "hsr/special.hpp"

namespace hsr {

HankelOrder::HankelOrder(int two_nu) : two_nu_(two_nu) {
  if (two_nu < -1) fail_validation("Hankel order must satisfy nu >= -1/2");
}

HankelOrder HankelOrder::from_nu(double nu) {
  const double twice = 2.0 * nu;
  const double rounded = std::round(twice);
  if (!std::isfinite(nu) || std::abs(twice - rounded) > 1e-12)
    fail_validation("Hankel order must be an integer or half-integer, got " + std::to_string(nu));
  return HankelOrder(static_cast<int>(rounded));
}

int HankelOrder::integer_nu() const {
  if (!is_integer()) fail_validation("order is not an integer");
  return two_nu_ / 2;
}

int HankelOrder::half_integer_n() const {
  if (!is_half_integer() || two_nu_ < 1)
    fail_validation("order is not a half-integer >= 1/2");
  return (two_nu_ - 1) / 2;
}

int HankelOrder::parity_sign() const {
  const int k = is_integer() ? integer_nu() : half_integer_n();
  return (k % 2 == 0) ? 1 : -1;
}

void HankelDataset::validate() const {
  if (!(r > 0.0) || !std::isfinite(r)) fail_validation("band limit r must be positive");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) fail_validation("support radius sigma must be positive");
  const auto& g = h.grid();
  if (g.a() != 0.0 || std::abs(g.b() - r) > 1e-12 * r)
    fail_validation("Hankel data must be sampled on [0, r]");
}

double hankel_kernel(double nu, double z) {
  if (z == 0.0) return nu == -0.5 ? std::sqrt(2.0 / std::numbers::pi) : 0.0;
  return bessel_j(nu, z) * std::sqrt(z);
}

std::vector<cdouble> hankel_forward(HankelOrder order, const SampledFunction1D& f,
                                    std::span<const double> ts) {
  if (f.grid().a() < 0.0) fail_validation("Hankel input must be sampled on a subset of [0, inf)");
  for (double t : ts)
    if (t < 0.0 || !std::isfinite(t)) fail_validation("Hankel evaluation point must be >= 0");
  const double nu = order.nu();
  const auto s = f.grid().nodes();
  const auto w = f.grid().trapezoid_weights();
  std::vector<cdouble> out(ts.size());
  parallel_for(ts.size(), [&](std::size_t i) {
    cdouble acc{};
    for (std::size_t k = 0; k < s.size(); ++k)
      if (f[k] != cdouble{}) acc += w[k] * hankel_kernel(nu, ts[i] * s[k]) * f[k];
    out[i] = acc;
  });
  return out;
}

HankelMatrix::HankelMatrix(HankelOrder order, const UniformGrid& source,
                           std::span<const double> targets)
    : source_(source), rows_(targets.size()) {
  if (source.a() < 0.0) fail_validation("Hankel input must be sampled on a subset of [0, inf)");
  const double nu = order.nu();
  const auto s = source.nodes();
  const auto w = source.trapezoid_weights();
  const std::size_t cols = s.size();
  kernel_.resize(rows_ * cols);
  parallel_for(rows_, [&](std::size_t i) {
    if (targets[i] < 0.0) fail_validation("Hankel evaluation point must be >= 0");
    for (std::size_t k = 0; k < cols; ++k)
      kernel_[i * cols + k] = w[k] * hankel_kernel(nu, targets[i] * s[k]);
  });
}

std::vector<cdouble> HankelMatrix::apply(std::span<const cdouble> values) const {
  const std::size_t cols = source_.size();
  require(values.size() == cols, "Hankel matrix applied to a vector of the wrong size");
  std::vector<cdouble> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    const double* row = &kernel_[i * cols];
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < cols; ++k) {
      re += row[k] * values[k].real();
      im += row[k] * values[k].imag();
    }
    out[i] = {re, im};
  }
  return out;
}

SampledFunction1D naive_inverse(const HankelDataset& data, const UniformGrid& out_grid) {
  data.validate();
  // H_nu is its own inverse; integrate the zero-extended data over [0, r].
  const auto s = out_grid.nodes();
  return SampledFunction1D(out_grid, hankel_forward(data.order, data.h, s));
}

UniformGrid symmetric_grid(const HankelDataset& data) {
  return UniformGrid(-1.0, 1.0, 2 * data.h.size() - 1);
}

namespace {

// Solves the 3x3 system sum_j basis_j(x_i) a_j = y_i with basis x^p, x^{p+2}, x^{p+4}.
std::array<cdouble, 3> parity_fit(std::span<const double> x, std::span<const cdouble> y,
                                  int p) {
  double m[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = std::pow(x[static_cast<std::size_t>(i)], p + 2 * j);
  std::array<cdouble, 3> rhs{y[0], y[1], y[2]};
  // Gaussian elimination with partial pivoting.
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (piv != col) {
      for (int j = 0; j < 3; ++j) std::swap(m[col][j], m[piv][j]);
      std::swap(rhs[static_cast<std::size_t>(col)], rhs[static_cast<std::size_t>(piv)]);
    }
    for (int r = col + 1; r < 3; ++r) {
      const double f = m[r][col] / m[col][col];
      for (int j = col; j < 3; ++j) m[r][j] -= f * m[col][j];
      rhs[static_cast<std::size_t>(r)] -= f * rhs[static_cast<std::size_t>(col)];
    }
  }
  std::array<cdouble, 3> a{};
  for (int i = 2; i >= 0; --i) {
    cdouble acc = rhs[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < 3; ++j) acc -= m[i][j] * a[static_cast<std::size_t>(j)];
    a[static_cast<std::size_t>(i)] = acc / m[i][i];
  }
  return a;
}

}  // namespace

SampledFunction1D symmetrize(const HankelDataset& data, const UniformGrid& x_grid) {
  data.validate();
  if (data.order.two_nu() < 0) fail_validation("symmetric extension needs nu >= 0");
  if (x_grid.a() != -1.0 || x_grid.b() != 1.0)
    fail_validation("symmetric extension grid must be [-1, 1]");

  const bool integer = data.order.is_integer();
  const int sign = data.order.parity_sign();
  const double r = data.r;
  const auto& h = data.h;
  const double dt = h.grid().step();

  auto weighted = [&](double t, cdouble value) {
    return integer ? value / std::sqrt(t) : value / t;
  };

  // Three nearest positive nodes in x = t / r.
  if (h.size() < 4 || h.grid().node(3) / r > 0.05)
    fail_validation("need at least 3 data nodes with t / r in (0, 0.05]");
  const double x_first = h.grid().node(1) / r;
  std::array<double, 3> xs{};
  std::array<cdouble, 3> ys{};
  for (std::size_t i = 0; i < 3; ++i) {
    const double t = h.grid().node(i + 1);
    xs[i] = t / r;
    ys[i] = weighted(t, h[i + 1]);
  }
  const int power = (sign == 1) ? 0 : 1;
  const auto fit = parity_fit(xs, ys, power);
  auto near_zero = [&](double ax) {
    cdouble acc{};
    for (int j = 0; j < 3; ++j) acc += fit[static_cast<std::size_t>(j)] * std::pow(ax, power + 2 * j);
    return acc;
  };

  SampledFunction1D out(x_grid);
  for (std::size_t k = 0; k < x_grid.size(); ++k) {
    const double x = x_grid.node(k);
    const double ax = std::abs(x);
    cdouble value;
    if (ax < x_first * (1.0 - 1e-12)) {
      value = near_zero(ax);
    } else {
      const double t = std::min(r * ax, h.grid().b());
      // Exact node hits avoid interpolation round-off.
      const double u = t / dt;
      const double nearest = std::round(u);
      const cdouble ht = std::abs(u - nearest) < 1e-9
                             ? h[static_cast<std::size_t>(nearest)]
                             : h.interpolate(t);
      value = weighted(t, ht);
    }
    out[k] = (x < 0.0 && sign < 0) ? -value : value;
  }
  return out;
}

std::vector<cdouble> hankel_bandlimited_forward(HankelOrder order, const SampledFunction1D& f,
                                                double c, std::span<const double> xs) {
  if (!(c > 0.0)) fail_validation("bandwidth c must be positive");
  if (f.grid().a() != 0.0 || f.grid().b() != 1.0)
    fail_validation("band-limited Hankel input must be sampled on [0, 1]");
  std::vector<double> ts(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] < 0.0 || xs[i] > 1.0) fail_validation("evaluation point outside [0, 1]");
    ts[i] = c * xs[i];
  }
  return hankel_forward(order, f, ts);
}

HankelDataset make_dataset(HankelOrder order, const SampledFunction1D& f, double r,
                           std::size_t n_samples) {
  HankelDataset data;
  data.order = order;
  data.r = r;
  data.sigma = f.grid().b();
  const UniformGrid tgrid(0.0, r, n_samples);
  data.h = SampledFunction1D(tgrid, hankel_forward(order, f, tgrid.nodes()));
  data.validate();
  return data;
}

}  // namespace hsr
