#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace hsr {

/// Prolate spheroidal wave functions psi_j of bandwidth c on [-1, 1] together
/// with the eigenvalues mu_j of the finite Fourier operator
///
///   F_c[f](x) = integral_{-1}^{1} exp(i c x y) f(y) dy,   F_c psi_j = mu_j psi_j.
///
/// Each psi_j is stored as coefficients in L2-normalized Legendre polynomials
/// sqrt(k + 1/2) P_k. Coefficients of the wrong parity are exactly zero and
/// psi_j(1) > 0. The basis is immutable once built.
struct PSWFBasis {
  double c = 0.0;
  std::size_t max_index = 0;
  std::vector<std::vector<double>> legendre_coeffs;  ///< [j][k]
  std::vector<double> chi;                           ///< prolate operator eigenvalues
  std::vector<std::complex<double>> mu;              ///< F_c eigenvalues, phase i^j

  std::size_t size() const noexcept { return legendre_coeffs.size(); }
  std::size_t galerkin_dimension() const noexcept {
    return legendre_coeffs.empty() ? 0 : legendre_coeffs.front().size();
  }

  /// Largest j with |mu_j| >= 1e-14 |mu_0|. Downstream truncation indices are
  /// clamped to this value.
  std::size_t usable_max_index() const;
};

/// Relative eigenvalue floor defining `usable_max_index`.
inline constexpr double kUsableMuFloor = 1e-14;

/// Legendre-Galerkin construction. The Galerkin dimension starts at
/// 2 max_index + ceil(c) + 40 and grows until the trailing coefficient of
/// psi_{max_index} is below 1e-14.
PSWFBasis build_basis(double c, std::size_t max_index);

/// Basis large enough to contain every usable index for bandwidth c.
PSWFBasis build_usable_basis(double c);

double eval_psi(const PSWFBasis& basis, std::size_t j, double x);
std::vector<double> eval_psi(const PSWFBasis& basis, std::size_t j,
                             std::span<const double> xs);

/// Eigenvalue mu_j of F_c from the coefficients of psi_j, using
/// integral psi_j = mu_j psi_j(0) (even j) and
/// i c integral y psi_j(y) dy = mu_j psi_j'(0) (odd j).
/// Only `basis.c` and `basis.legendre_coeffs[j]` are read.
std::complex<double> compute_mu(const PSWFBasis& basis, std::size_t j);

/// Independent route: mu_j from Gauss-Legendre quadrature of F_c psi_j at the
/// point where |psi_j| is largest. Loses relative accuracy once |mu_j| nears
/// machine epsilon; used for cross-checks.
std::complex<double> mu_by_quadrature(const PSWFBasis& basis, std::size_t j,
                                      std::size_t nodes = 256);

}  // namespace hsr
