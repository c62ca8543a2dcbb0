#include "hsr/radon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hsr/error.hpp"
#include "hsr/parallel.hpp"
#include "hsr/special.hpp"

namespace hsr {
namespace {

void check_harmonic(int n, const CormackOptions& options, bool three_d) {
  if (three_d && n < 0) fail_validation("3D Cormack degree must be non-negative");
  if (std::abs(n) > options.max_harmonic)
    fail_validation("harmonic " + std::to_string(n) + " exceeds the Cormack stability cap " +
                    std::to_string(options.max_harmonic) + "; use the FBP route");
}

void check_output_grid(const UniformGrid& out_s) {
  if (!(out_s.a() > 0.0)) fail_validation("Cormack output grid must exclude s = 0");
  if (out_s.b() > 1.0 + 1e-12) fail_validation("Cormack output grid must lie in (0, 1]");
}

void check_target_points(std::span<const double> t_grid) {
  for (double t : t_grid)
    if (!(t > 0.0)) fail_validation("Cormack evaluation points must be positive");
}

RadialFunction profile_function(const RadialProfile& p) {
  return [&p](double x) { return p.at(x); };
}

// Evaluates kernel(x) on a `refine`-times finer copy of out_s, differentiates
// `order` times with second-order stencils, and samples back at out_s. Two
// extra fine nodes are added on each side where they stay inside (0, 1], so
// the stencils are central at every output node except at s = 1 or near 0.
template <class Kernel>
std::vector<cdouble> differentiate_on_refined(const UniformGrid& out_s, std::size_t refine,
                                              int order, Kernel&& kernel) {
  const UniformGrid fine = out_s.refined(std::max<std::size_t>(refine, 1));
  const double h = fine.step();
  constexpr std::size_t pad = 2;
  const std::size_t left = fine.a() - pad * h > 0.0 ? pad : 0;
  const std::size_t right = fine.b() + pad * h <= 1.0 ? pad : 0;
  const std::size_t total = fine.size() + left + right;
  std::vector<cdouble> k(total);
  parallel_for(total, [&](std::size_t i) {
    const double x = fine.a() + (static_cast<double>(i) - static_cast<double>(left)) * h;
    const bool inside = i >= left && i - left < fine.size();
    k[i] = kernel(inside ? fine.node(i - left) : x);
  });
  const auto d = order == 1 ? derivative_uniform<cdouble>(k, h)
                            : second_derivative_uniform<cdouble>(k, h);
  std::vector<cdouble> out(out_s.size());
  const std::size_t stride = (fine.size() - 1) / (out_s.size() - 1);
  for (std::size_t i = 0; i < out_s.size(); ++i) out[i] = d[left + i * stride];
  return out;
}

}  // namespace

RadialProfile::RadialProfile(int harmonic_, std::vector<double> s_, std::vector<cdouble> values_)
    : harmonic(harmonic_), s(std::move(s_)), values(std::move(values_)) {
  require(s.size() == values.size(), "radial profile grid and values differ in length");
  require(!s.empty(), "radial profile is empty");
  require(s.front() > 0.0, "radial profile grid must be strictly positive");
  for (std::size_t i = 1; i < s.size(); ++i)
    require(s[i] > s[i - 1], "radial profile grid must be strictly increasing");
}

cdouble RadialProfile::at(double x) const {
  if (x > s.back()) return {};
  if (x <= s.front()) return values.front();
  const std::size_t n = s.size();
  const auto i = static_cast<std::size_t>(std::upper_bound(s.begin(), s.end(), x) - s.begin());
  if (n < 4) {
    const double t = (x - s[i - 1]) / (s[i] - s[i - 1]);
    return (1.0 - t) * values[i - 1] + t * values[i];
  }
  // Cubic Lagrange through the four nearest nodes: the kernel integrals feed
  // second differences, which amplify the kinks of a piecewise-linear fit.
  const std::size_t first = std::min(i >= 2 ? i - 2 : 0, n - 4);
  cdouble acc{};
  for (std::size_t a = first; a < first + 4; ++a) {
    double l = 1.0;
    for (std::size_t b = first; b < first + 4; ++b)
      if (b != a) l *= (x - s[b]) / (s[a] - s[b]);
    acc += l * values[a];
  }
  return acc;
}

RadialProfile cormack2d_invert(int n, const RadialFunction& w_n, const UniformGrid& out_s,
                               const CormackOptions& options) {
  check_harmonic(n, options, false);
  check_output_grid(out_s);
  const QuadratureRule unit = gauss_legendre(options.gauss_nodes, 0.0, 1.0);
  const double an = std::abs(n);

  auto kernel = [&](double x) -> cdouble {
    if (x >= 1.0) return {};
    const double upper = std::acosh(1.0 / x);
    cdouble acc{};
    for (std::size_t q = 0; q < unit.nodes.size(); ++q) {
      const double u = upper * unit.nodes[q];
      const double ch = std::cosh(u);
      acc += unit.weights[q] * (std::cosh(an * u) / ch) * w_n(x * ch);
    }
    return upper * acc;
  };
  const auto d = differentiate_on_refined(out_s, options.refine, 1, kernel);
  std::vector<cdouble> v(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) v[i] = -d[i] / std::numbers::pi;
  return RadialProfile(n, out_s.nodes(), std::move(v));
}

RadialProfile cormack2d_invert(int n, const RadialProfile& w_n, const UniformGrid& out_s,
                               const CormackOptions& options) {
  return cormack2d_invert(n, profile_function(w_n), out_s, options);
}

RadialProfile cormack2d_forward(int n, const RadialFunction& v_n, std::span<const double> t_grid,
                                const CormackOptions& options) {
  check_harmonic(n, options, false);
  check_target_points(t_grid);
  const QuadratureRule unit = gauss_legendre(options.gauss_nodes, 0.0, 1.0);
  const unsigned an = static_cast<unsigned>(std::abs(n));
  std::vector<cdouble> w(t_grid.size());
  parallel_for(t_grid.size(), [&](std::size_t i) {
    const double t = t_grid[i];
    if (t >= 1.0) return;
    const double upper = std::acosh(1.0 / t);
    cdouble acc{};
    for (std::size_t q = 0; q < unit.nodes.size(); ++q) {
      const double u = upper * unit.nodes[q];
      const double ch = std::cosh(u);
      acc += unit.weights[q] * v_n(t * ch) * chebyshev_t(an, 1.0 / ch) * t * ch;
    }
    w[i] = 2.0 * upper * acc;
  });
  return RadialProfile(n, {t_grid.begin(), t_grid.end()}, std::move(w));
}

RadialProfile cormack3d_invert(int n, const RadialFunction& w_n, const UniformGrid& out_s,
                               const CormackOptions& options) {
  check_harmonic(n, options, true);
  check_output_grid(out_s);
  const QuadratureRule unit = gauss_legendre(options.gauss_nodes, 0.0, 1.0);
  const auto un = static_cast<unsigned>(n);

  auto kernel = [&](double x) -> cdouble {
    if (x >= 1.0) return {};
    const double len = 1.0 - x;
    cdouble acc{};
    for (std::size_t q = 0; q < unit.nodes.size(); ++q) {
      const double t = x + len * unit.nodes[q];
      acc += unit.weights[q] * (x * legendre_p(un, t / x) / (t * t)) * w_n(t);
    }
    return len * acc;
  };
  const auto d = differentiate_on_refined(out_s, options.refine, 2, kernel);
  std::vector<cdouble> v(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) v[i] = d[i] / (2.0 * std::numbers::pi);
  return RadialProfile(n, out_s.nodes(), std::move(v));
}

RadialProfile cormack3d_invert(int n, const RadialProfile& w_n, const UniformGrid& out_s,
                               const CormackOptions& options) {
  return cormack3d_invert(n, profile_function(w_n), out_s, options);
}

RadialProfile cormack3d_forward(int n, const RadialFunction& v_n, std::span<const double> t_grid,
                                const CormackOptions& options) {
  check_harmonic(n, options, true);
  check_target_points(t_grid);
  const QuadratureRule unit = gauss_legendre(options.gauss_nodes, 0.0, 1.0);
  const auto un = static_cast<unsigned>(n);
  std::vector<cdouble> w(t_grid.size());
  parallel_for(t_grid.size(), [&](std::size_t i) {
    const double t = t_grid[i];
    if (t >= 1.0) return;
    const double len = 1.0 - t;
    cdouble acc{};
    for (std::size_t q = 0; q < unit.nodes.size(); ++q) {
      const double s = t + len * unit.nodes[q];
      acc += unit.weights[q] * legendre_p(un, t / s) * v_n(s) * s;
    }
    w[i] = 2.0 * std::numbers::pi * len * acc;
  });
  return RadialProfile(n, {t_grid.begin(), t_grid.end()}, std::move(w));
}

}  // namespace hsr
