#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "hsr/grid.hpp"
#include "hsr/hankel.hpp"

namespace hsr {

/// Radial factor v_n(s) or w_n(t) of one angular harmonic, on a strictly
/// positive increasing grid.
struct RadialProfile {
  int harmonic = 0;
  std::vector<double> s;
  std::vector<cdouble> values;

  RadialProfile() = default;
  RadialProfile(int harmonic, std::vector<double> s, std::vector<cdouble> values);

  /// Cubic interpolation through the four nearest nodes (linear below four
  /// nodes); zero beyond the last node, constant below the first.
  cdouble at(double x) const;
};

using RadialFunction = std::function<cdouble(double)>;

struct CormackOptions {
  std::size_t gauss_nodes = 64;  ///< per kernel integral
  std::size_t refine = 4;        ///< outer finite differences on a refined grid
  int max_harmonic = 8;          ///< instability grows exponentially with |n|
};

/// 2D Cormack inversion for harmonic n of a function supported in the unit disk:
///   v_n(s) = -(1/pi) d/ds int_s^1 s T_|n|(t/s) w_n(t) / (t sqrt(t^2 - s^2)) dt.
/// With t = s cosh u the kernel integral becomes
///   int_0^{arccosh(1/s)} cosh(|n| u) / cosh(u) w_n(s cosh u) du.
/// `out_s` must be a uniform grid inside (0, 1].
RadialProfile cormack2d_invert(int n, const RadialFunction& w_n, const UniformGrid& out_s,
                               const CormackOptions& options = {});
RadialProfile cormack2d_invert(int n, const RadialProfile& w_n, const UniformGrid& out_s,
                               const CormackOptions& options = {});

/// Forward companion: w_n(t) = 2 int_t^1 v_n(s) T_|n|(t/s) s / sqrt(s^2 - t^2) ds,
/// with s = t cosh u.
RadialProfile cormack2d_forward(int n, const RadialFunction& v_n, std::span<const double> t_grid,
                                const CormackOptions& options = {});

/// 3D Cormack-type inversion for degree n (order k = 0):
///   v_n(s) = (1/(2 pi)) d^2/ds^2 int_s^1 s P_n(t/s) w_n(t) / t^2 dt.
RadialProfile cormack3d_invert(int n, const RadialFunction& w_n, const UniformGrid& out_s,
                               const CormackOptions& options = {});
RadialProfile cormack3d_invert(int n, const RadialProfile& w_n, const UniformGrid& out_s,
                               const CormackOptions& options = {});

/// Forward companion (Funk-Hecke): w_n(t) = 2 pi int_t^1 P_n(t/s) v_n(s) s ds.
RadialProfile cormack3d_forward(int n, const RadialFunction& v_n, std::span<const double> t_grid,
                                const CormackOptions& options = {});

/// Radon data w(y, theta) on a uniform radial grid of [-1, 1] and uniform angles
/// theta_a = 2 pi a / n_angles. Values are row-major by angle.
struct Sinogram2D {
  UniformGrid y_grid{-1.0, 1.0, 2};
  std::vector<double> thetas;
  std::vector<cdouble> values;

  Sinogram2D() = default;
  Sinogram2D(UniformGrid y_grid, std::size_t n_angles);

  std::size_t n_angles() const noexcept { return thetas.size(); }
  cdouble& at(std::size_t angle, std::size_t k) { return values[angle * y_grid.size() + k]; }
  const cdouble& at(std::size_t angle, std::size_t k) const {
    return values[angle * y_grid.size() + k];
  }

  /// Separated sinogram radial(y) * exp(i n theta).
  static Sinogram2D separated(const UniformGrid& y_grid, std::size_t n_angles, int n,
                              const RadialFunction& radial);
};

/// Square complex image sampled on an n x n uniform grid of [-1, 1]^2.
/// Pixel (i, j) is at (x_i, y_j); storage is row-major in j.
struct Image2D {
  UniformGrid axis{-1.0, 1.0, 2};
  std::vector<cdouble> pixels;

  explicit Image2D(std::size_t n);
  std::size_t size() const noexcept { return axis.size(); }
  cdouble& at(std::size_t i, std::size_t j) { return pixels[j * axis.size() + i]; }
  const cdouble& at(std::size_t i, std::size_t j) const { return pixels[j * axis.size() + i]; }
  /// Bilinear interpolation; zero outside the square.
  cdouble sample(double x, double y) const;
};

struct FbpOptions {
  std::size_t padding = 4;  ///< zero-padding factor before the FFT
};

inline constexpr std::size_t kMinFbpAngles = 64;
inline constexpr std::size_t kMinFbpRadial = 16;

/// Filtered back projection with the band-limited ramp |rho| (hard cutoff at
/// the radial Nyquist frequency; spatial Ram-Lak kernel) and linear
/// interpolation in the back projection.
Image2D fbp2d(const Sinogram2D& sino, std::size_t grid_n, const FbpOptions& options = {});

/// (1/(2 pi)) int_{-pi}^{pi} v(s cos phi, s sin phi) exp(-i nu phi) dphi * sqrt(s)
/// by the trapezoid rule over `n_angles` angles and bilinear interpolation.
RadialProfile angular_project(const Image2D& image, HankelOrder order,
                              std::span<const double> s_grid, std::size_t n_angles = 256);

}  // namespace hsr
