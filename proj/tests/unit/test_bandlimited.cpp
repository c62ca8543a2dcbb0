#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "hsr/bandlimited.hpp"
#include "hsr/error.hpp"
#include "hsr/pswf.hpp"
#include "hsr/special.hpp"

namespace hsr {
namespace {

const PSWFBasis& basis10() {
  static const PSWFBasis b = build_usable_basis(10.0);
  return b;
}

const UniformGrid kGrid(-1.0, 1.0, 1024);

SampledFunction1D psi_samples(std::size_t j, cdouble scale = 1.0) {
  return SampledFunction1D::from_function(
      kGrid, [&](double x) { return scale * eval_psi(basis10(), j, x); });
}

double rel_l2(const SampledFunction1D& a, const SampledFunction1D& b) {
  std::vector<cdouble> d(a.size());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = a[k] - b[k];
  const double nb = b.l2_norm();
  return l2_norm(a.grid(), d) / (nb > 0.0 ? nb : 1.0);
}

double abs_l2(const SampledFunction1D& a) { return a.l2_norm(); }

// F_c f at x by 400-point Gauss-Legendre quadrature; accurate to rounding for
// smooth f and c = 10.
cdouble fc_exact(double c, double x, double (*f)(double)) {
  static const QuadratureRule rule = gauss_legendre(400);
  cdouble acc{};
  for (std::size_t k = 0; k < rule.nodes.size(); ++k)
    acc += rule.weights[k] * std::polar(1.0, c * x * rule.nodes[k]) * f(rule.nodes[k]);
  return acc;
}

double smooth_even(double y) { return 1.0 / (1.0 + y * y); }
double smooth_mixed(double y) { return std::exp(-y) * std::cos(3.0 * y); }

TEST(ApplyFc, ActsOnLowestPswfAsEigenvalue) {
  const auto out = apply_fc(basis10(), psi_samples(0));
  EXPECT_LE(rel_l2(out, psi_samples(0, basis10().mu[0])), 1e-6);
}

TEST(ApplyFc, ZeroMapsToZero) {
  const auto out = apply_fc(basis10(), SampledFunction1D(kGrid));
  for (std::size_t k = 0; k < out.size(); ++k) EXPECT_EQ(out[k], cdouble{});
}

TEST(ApplyFc, ConstantGivesSinc) {
  const UniformGrid g(-1.0, 1.0, 201);
  const auto one = SampledFunction1D::from_function(g, [](double) { return cdouble{1.0}; });
  const auto out = apply_fc(basis10(), one);
  EXPECT_NEAR(out[100].real(), 2.0, 1e-12);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double x = g.node(k);
    const double expected = x == 0.0 ? 2.0 : 2.0 * std::sin(10.0 * x) / (10.0 * x);
    EXPECT_NEAR(out[k].real(), expected, 1e-5) << x;
    EXPECT_NEAR(out[k].imag(), 0.0, 1e-12);
  }
}

TEST(ApplyFc, RejectsWrongInterval) {
  const SampledFunction1D f(UniformGrid(0.0, 1.0, 16));
  EXPECT_THROW(apply_fc(basis10(), f), Error);
}

TEST(TruncatedInverse, SingleModeIsRecovered) {
  const auto g = psi_samples(3, basis10().mu[3]);
  for (std::size_t m : {3u, 5u, 10u}) {
    const auto out = invert_fc_truncated(basis10(), g, m);
    EXPECT_LE(rel_l2(out, psi_samples(3)), 1e-6) << m;
  }
  const auto below = invert_fc_truncated(basis10(), g, 2);
  EXPECT_LE(abs_l2(below), 1e-6);
}

TEST(TruncatedInverse, IdentityOnTheSpan) {
  // Above m = 16 rounding in F_c psi_j, amplified by 1 / mu_m, exceeds 1e-6.
  for (std::size_t m : {4u, 10u, 16u}) {
    for (std::size_t j = 0; j <= m; ++j) {
      const auto g = apply_fc(basis10(), psi_samples(j));
      const auto out = invert_fc_truncated(basis10(), g, m);
      EXPECT_LE(rel_l2(out, psi_samples(j)), 1e-6) << "j = " << j << ", m = " << m;
    }
  }
}

TEST(TruncatedInverse, ReproducesProjectionOfSmoothFunction) {
  const auto& b = basis10();
  const QuadratureRule rule = gauss_legendre(200);
  for (auto f : {smooth_even, smooth_mixed}) {
    const auto g =
        SampledFunction1D::from_function(kGrid, [&](double x) { return fc_exact(10.0, x, f); });
    const auto truth = SampledFunction1D::from_function(kGrid, [&](double y) { return f(y); });
    double previous = 1e300;
    for (std::size_t m = 0; m <= 16; ++m) {
      // Oracle: Gauss-Legendre projection of f onto psi_0..psi_m.
      std::vector<double> coef(m + 1);
      for (std::size_t j = 0; j <= m; ++j)
        for (std::size_t k = 0; k < rule.nodes.size(); ++k)
          coef[j] += rule.weights[k] * eval_psi(b, j, rule.nodes[k]) * f(rule.nodes[k]);
      const auto projection = SampledFunction1D::from_function(kGrid, [&](double y) {
        double s = 0.0;
        for (std::size_t j = 0; j <= m; ++j) s += coef[j] * eval_psi(b, j, y);
        return cdouble{s};
      });
      const auto out = invert_fc_truncated(b, g, m);
      // The trapezoid inner product is not exactly orthogonal on the tail of g.
      EXPECT_LE(rel_l2(out, projection), 1e-5) << "m = " << m;
      const double err = rel_l2(out, truth);
      EXPECT_LE(err, previous + 1e-9) << "m = " << m;
      previous = err;
    }
  }
}

TEST(TruncatedInverse, DataResidualIsNonIncreasing) {
  const auto& b = basis10();
  const auto f = SampledFunction1D::from_function(kGrid, [](double y) { return smooth_mixed(y); });
  const auto g = apply_fc(b, f);
  double previous = 1e300;
  for (std::size_t m = 0; m <= b.usable_max_index(); ++m) {
    const auto back = apply_fc(b, invert_fc_truncated(b, g, m));
    const double res = rel_l2(back, g) * g.l2_norm();
    EXPECT_LE(res, previous + 1e-9) << "m = " << m;
    previous = res;
  }
}

TEST(TruncatedInverse, Linearity) {
  const auto& b = basis10();
  const auto g1 = apply_fc(b, SampledFunction1D::from_function(
                                  kGrid, [](double y) { return cdouble{smooth_even(y)}; }));
  const auto g2 = SampledFunction1D::from_function(
      kGrid, [](double x) { return cdouble{std::sin(4.0 * x), x * x}; });
  const cdouble alpha{0.7, -1.3}, beta{2.5, 0.0};
  std::vector<cdouble> mix(kGrid.size());
  for (std::size_t k = 0; k < mix.size(); ++k) mix[k] = alpha * g1[k] + beta * g2[k];
  // Rounding grows like 1 / mu_m; m = 12 keeps it near 1e-13.
  for (std::size_t m : {0u, 4u, 12u}) {
    const auto lhs = invert_fc_truncated(b, SampledFunction1D(kGrid, mix), m);
    const auto a1 = invert_fc_truncated(b, g1, m);
    const auto a2 = invert_fc_truncated(b, g2, m);
    std::vector<cdouble> rhs(mix.size());
    for (std::size_t k = 0; k < rhs.size(); ++k) rhs[k] = alpha * a1[k] + beta * a2[k];
    EXPECT_LE(rel_l2(lhs, SampledFunction1D(kGrid, rhs)), 1e-12) << m;
  }
}

TEST(TruncatedInverse, RejectsOutOfRangeIndexAndCoarseGrid) {
  const auto& b = basis10();
  const auto g = psi_samples(0);
  EXPECT_THROW(TruncatedInverse(b, b.size()), Error);
  const TruncatedInverse inv(b, 5);
  EXPECT_THROW(inv.inverse_coefficients(inv.moments(g), 6), Error);
  const PSWFBasis wide = build_basis(400.0, 2);
  EXPECT_THROW(TruncatedInverse(wide, 1, 256), Error);
}

TEST(TruncatedInverse, ExpansionMatchesSampledResult) {
  const auto& b = basis10();
  const auto g = apply_fc(b, SampledFunction1D::from_function(
                                 kGrid, [](double y) { return cdouble{smooth_mixed(y)}; }));
  const TruncatedInverse inv(b, 12);
  const auto e = inv.expansion(inv.inverse_coefficients(inv.moments(g), 12));
  const auto sampled = invert_fc_truncated(b, g, 12);
  for (std::size_t k = 0; k < kGrid.size(); k += 37)
    EXPECT_LT(std::abs(e(kGrid.node(k)) - sampled[k]), 1e-12);
}

TEST(OversampleLinear, Examples) {
  const auto constant = SampledFunction1D::from_function(UniformGrid(-1.0, 1.0, 7),
                                                         [](double) { return cdouble{3.5}; });
  for (std::size_t n : {7u, 8u, 1024u}) {
    const auto out = oversample_linear(constant, n);
    for (std::size_t k = 0; k < n; ++k) EXPECT_DOUBLE_EQ(out[k].real(), 3.5);
  }

  const SampledFunction1D two(UniformGrid(0.0, 1.0, 2), {0.0, 1.0});
  const auto three = oversample_linear(two, 3);
  EXPECT_EQ(three[0], cdouble(0.0));
  EXPECT_EQ(three[1], cdouble(0.5));
  EXPECT_EQ(three[2], cdouble(1.0));

  EXPECT_THROW(oversample_linear(constant, 6), Error);
}

TEST(OversampleLinear, SineWithinInterpolationBound) {
  const double omega = 15.0;
  const UniformGrid g(-1.0, 1.0, 256);
  const auto f = SampledFunction1D::from_function(g, [&](double x) { return std::sin(omega * x); });
  const auto fine = oversample_linear(f, 1024);
  // |f - Lf| <= h^2 max|f''| / 8 for piecewise-linear interpolation.
  const double bound = g.step() * g.step() * omega * omega / 8.0;
  double worst = 0.0;
  for (std::size_t k = 0; k < fine.size(); ++k)
    worst = std::max(worst, std::abs(fine[k].real() - std::sin(omega * fine.grid().node(k))));
  EXPECT_LE(worst, bound);
  EXPECT_GT(worst, 0.1 * bound);

  // Exact at the original nodes when the target grid nests them.
  const auto nested = oversample_linear(f, 4 * (g.size() - 1) + 1);
  for (std::size_t k = 0; k < g.size(); ++k) EXPECT_NEAR(nested[4 * k].real(), f[k].real(), 1e-14);
}

}  // namespace
}  // namespace hsr
