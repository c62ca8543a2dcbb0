#include "hsr/pswf.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hsr/error.hpp"
#include "hsr/special.hpp"

namespace hsr {
namespace {

constexpr double kTailTolerance = 1e-14;

// Matrix of the prolate operator -(d/dx)(1 - x^2)(d/dx) + c^2 x^2 in the
// normalized Legendre basis, restricted to degrees k = parity, parity + 2, ...
struct ParityBlock {
  std::vector<std::size_t> degrees;
  Eigen::VectorXd diag;
  Eigen::VectorXd offdiag;
};

ParityBlock prolate_block(double c, std::size_t dimension, std::size_t parity) {
  ParityBlock block;
  for (std::size_t k = parity; k < dimension; k += 2) block.degrees.push_back(k);
  const auto n = static_cast<Eigen::Index>(block.degrees.size());
  block.diag.resize(n);
  block.offdiag.resize(std::max<Eigen::Index>(n - 1, 0));
  const double c2 = c * c;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double k = static_cast<double>(block.degrees[static_cast<std::size_t>(i)]);
    block.diag[i] = k * (k + 1.0) +
                    c2 * (2.0 * k * (k + 1.0) - 1.0) / ((2.0 * k + 3.0) * (2.0 * k - 1.0));
    if (i + 1 < n) {
      block.offdiag[i] = c2 * (k + 1.0) * (k + 2.0) /
                         ((2.0 * k + 3.0) * std::sqrt((2.0 * k + 1.0) * (2.0 * k + 5.0)));
    }
  }
  return block;
}

double psi_at_one(std::span<const double> coeffs) {
  double acc = 0.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    acc += coeffs[k] * std::sqrt(static_cast<double>(k) + 0.5);
  return acc;
}

std::complex<double> i_pow(std::size_t j) {
  switch (j % 4) {
    case 0:
      return {1.0, 0.0};
    case 1:
      return {0.0, 1.0};
    case 2:
      return {-1.0, 0.0};
    default:
      return {0.0, -1.0};
  }
}

}  // namespace

std::size_t PSWFBasis::usable_max_index() const {
  if (mu.empty()) return 0;
  const double floor = kUsableMuFloor * std::abs(mu.front());
  std::size_t m = 0;
  for (std::size_t j = 0; j < mu.size(); ++j) {
    if (std::abs(mu[j]) < floor) break;
    m = j;
  }
  return m;
}

PSWFBasis build_basis(double c, std::size_t max_index) {
  if (!(c > 0.0) || !std::isfinite(c)) fail_validation("PSWF bandwidth c must be positive");

  std::size_t dimension = 2 * max_index + static_cast<std::size_t>(std::ceil(c)) + 40;
  for (int attempt = 0; attempt < 32; ++attempt, dimension += dimension / 2) {
    PSWFBasis basis;
    basis.c = c;
    basis.max_index = max_index;
    basis.legendre_coeffs.assign(max_index + 1, std::vector<double>(dimension, 0.0));
    basis.chi.assign(max_index + 1, 0.0);

    for (std::size_t parity = 0; parity < 2; ++parity) {
      if (parity > max_index) break;
      const ParityBlock block = prolate_block(c, dimension, parity);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
      solver.computeFromTridiagonal(block.diag, block.offdiag, Eigen::ComputeEigenvectors);
      if (solver.info() != Eigen::Success)
        fail_numerical("prolate eigen-solver did not converge (parity " +
                       std::to_string(parity) + ")");
      for (std::size_t j = parity; j <= max_index; j += 2) {
        const auto col = static_cast<Eigen::Index>((j - parity) / 2);
        if (col >= solver.eigenvalues().size())
          fail_numerical("Galerkin block too small for index " + std::to_string(j));
        const double chi = solver.eigenvalues()[col];
        const Eigen::VectorXd v = solver.eigenvectors().col(col);
        auto& coeffs = basis.legendre_coeffs[j];
        for (std::size_t i = 0; i < block.degrees.size(); ++i)
          coeffs[block.degrees[i]] = v[static_cast<Eigen::Index>(i)];
        if (psi_at_one(coeffs) < 0.0)
          for (auto& b : coeffs) b = -b;
        basis.chi[j] = chi;
      }
    }

    // Trailing coefficient of the highest function decides the truncation.
    const auto& top = basis.legendre_coeffs[max_index];
    const std::size_t last = (max_index % 2 == dimension % 2) ? dimension - 2 : dimension - 1;
    if (std::abs(top[last]) > kTailTolerance) continue;

    basis.mu.resize(max_index + 1);
    for (std::size_t j = 0; j <= max_index; ++j) basis.mu[j] = compute_mu(basis, j);
    return basis;
  }
  fail_numerical("Galerkin dimension did not converge for index " + std::to_string(max_index));
}

PSWFBasis build_usable_basis(double c) {
  std::size_t max_index = static_cast<std::size_t>(std::ceil(2.0 * c / std::numbers::pi)) + 24;
  for (;;) {
    PSWFBasis basis = build_basis(c, max_index);
    if (basis.usable_max_index() < max_index) return basis;
    max_index += 16;
  }
}

double eval_psi(const PSWFBasis& basis, std::size_t j, double x) {
  if (j >= basis.size()) fail_validation("PSWF index " + std::to_string(j) + " out of range");
  if (!(std::abs(x) <= 1.0)) fail_validation("PSWF evaluation point outside [-1, 1]");
  return normalized_legendre_series(basis.legendre_coeffs[j], x);
}

std::vector<double> eval_psi(const PSWFBasis& basis, std::size_t j,
                             std::span<const double> xs) {
  if (j >= basis.size()) fail_validation("PSWF index " + std::to_string(j) + " out of range");
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(std::abs(xs[i]) <= 1.0)) fail_validation("PSWF evaluation point outside [-1, 1]");
    out[i] = normalized_legendre_series(basis.legendre_coeffs[j], xs[i]);
  }
  return out;
}

std::complex<double> compute_mu(const PSWFBasis& basis, std::size_t j) {
  if (j >= basis.legendre_coeffs.size())
    fail_validation("PSWF index " + std::to_string(j) + " out of range");
  const auto& beta = basis.legendre_coeffs[j];
  double magnitude_signed = 0.0;
  if (j % 2 == 0) {
    const double at_zero = normalized_legendre_series(beta, 0.0);
    if (std::abs(at_zero) < 1e-12)
      fail_numerical("psi_" + std::to_string(j) + "(0) vanishes; cannot recover mu");
    // integral of sqrt(1/2) P_0 over [-1, 1] is sqrt(2)
    magnitude_signed = std::sqrt(2.0) * beta[0] / at_zero;
  } else {
    const double slope = normalized_legendre_series_derivative_at_zero(beta);
    if (std::abs(slope) < 1e-12)
      fail_numerical("psi_" + std::to_string(j) + "'(0) vanishes; cannot recover mu");
    // integral of y sqrt(3/2) P_1(y) over [-1, 1] is sqrt(3/2) * 2/3
    magnitude_signed = basis.c * std::sqrt(1.5) * (2.0 / 3.0) * beta[1] / slope;
  }
  // The identity yields mu_j = i^j |mu_j| up to the sign carried here; a sign
  // flip would mean the eigenvector ordering is broken.
  const double expected_sign = (j % 4 == 0 || j % 4 == 1) ? 1.0 : -1.0;
  if (magnitude_signed * expected_sign <= 0.0)
    fail_numerical("eigenvalue phase of psi_" + std::to_string(j) + " is not i^j");
  return i_pow(j) * std::abs(magnitude_signed);
}

std::complex<double> mu_by_quadrature(const PSWFBasis& basis, std::size_t j,
                                      std::size_t nodes) {
  if (j >= basis.size()) fail_validation("PSWF index " + std::to_string(j) + " out of range");
  const QuadratureRule rule = gauss_legendre(nodes);
  std::vector<double> psi(nodes);
  for (std::size_t i = 0; i < nodes; ++i) psi[i] = eval_psi(basis, j, rule.nodes[i]);
  std::size_t peak = 0;
  for (std::size_t i = 1; i < nodes; ++i)
    if (std::abs(psi[i]) > std::abs(psi[peak])) peak = i;
  const double x = rule.nodes[peak];
  std::complex<double> acc{};
  for (std::size_t i = 0; i < nodes; ++i)
    acc += rule.weights[i] * std::polar(psi[i], basis.c * x * rule.nodes[i]);
  return acc / psi[peak];
}

}  // namespace hsr
