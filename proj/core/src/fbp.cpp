#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "hsr/error.hpp"
#include "hsr/parallel.hpp"
#include "hsr/radon.hpp"

namespace hsr {
namespace {

// The FFTW planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class FftPair {
 public:
  explicit FftPair(std::size_t n) : n_(n) {
    buf_ = fftw_alloc_complex(n);
    if (buf_ == nullptr) fail_numerical("FFT buffer allocation failed");
    std::lock_guard lock(planner_mutex());
    const int len = static_cast<int>(n);
    fwd_ = fftw_plan_dft_1d(len, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
    inv_ = fftw_plan_dft_1d(len, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~FftPair() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(inv_);
    fftw_free(buf_);
  }
  FftPair(const FftPair&) = delete;
  FftPair& operator=(const FftPair&) = delete;

  cdouble* data() { return reinterpret_cast<cdouble*>(buf_); }
  std::size_t size() const { return n_; }
  void forward() { fftw_execute(fwd_); }
  void inverse() { fftw_execute(inv_); }

 private:
  std::size_t n_;
  fftw_complex* buf_ = nullptr;
  fftw_plan fwd_ = nullptr;
  fftw_plan inv_ = nullptr;
};

// Spatial Ram-Lak kernel sampled at k * delta.
double ram_lak(long k, double delta) {
  if (k == 0) return 1.0 / (4.0 * delta * delta);
  if (k % 2 == 0) return 0.0;
  const double kk = static_cast<double>(k);
  return -1.0 / (std::numbers::pi * std::numbers::pi * kk * kk * delta * delta);
}

}  // namespace

Sinogram2D::Sinogram2D(UniformGrid y_grid_, std::size_t n_angles)
    : y_grid(y_grid_), thetas(n_angles), values(n_angles * y_grid_.size()) {
  require(n_angles > 0, "sinogram needs at least one angle");
  for (std::size_t a = 0; a < n_angles; ++a)
    thetas[a] = 2.0 * std::numbers::pi * static_cast<double>(a) / static_cast<double>(n_angles);
}

Sinogram2D Sinogram2D::separated(const UniformGrid& y_grid, std::size_t n_angles, int n,
                                 const RadialFunction& radial) {
  Sinogram2D sino(y_grid, n_angles);
  std::vector<cdouble> r(y_grid.size());
  for (std::size_t k = 0; k < y_grid.size(); ++k) r[k] = radial(y_grid.node(k));
  for (std::size_t a = 0; a < n_angles; ++a) {
    const cdouble phase = std::polar(1.0, static_cast<double>(n) * sino.thetas[a]);
    for (std::size_t k = 0; k < y_grid.size(); ++k) sino.at(a, k) = r[k] * phase;
  }
  return sino;
}

Image2D::Image2D(std::size_t n) : axis(-1.0, 1.0, n), pixels(n * n) {}

cdouble Image2D::sample(double x, double y) const {
  const double h = axis.step();
  const double u = (x + 1.0) / h;
  const double w = (y + 1.0) / h;
  const double last = static_cast<double>(size() - 1);
  if (!(u >= 0.0 && u <= last && w >= 0.0 && w <= last)) return {};
  const auto i = std::min(static_cast<std::size_t>(u), size() - 2);
  const auto j = std::min(static_cast<std::size_t>(w), size() - 2);
  const double fu = u - static_cast<double>(i);
  const double fw = w - static_cast<double>(j);
  return (1.0 - fw) * ((1.0 - fu) * at(i, j) + fu * at(i + 1, j)) +
         fw * ((1.0 - fu) * at(i, j + 1) + fu * at(i + 1, j + 1));
}

Image2D fbp2d(const Sinogram2D& sino, std::size_t grid_n, const FbpOptions& options) {
  const std::size_t n_rad = sino.y_grid.size();
  const std::size_t n_ang = sino.n_angles();
  if (n_ang < kMinFbpAngles)
    fail_validation("FBP needs at least " + std::to_string(kMinFbpAngles) + " angles");
  if (n_rad < kMinFbpRadial)
    fail_validation("FBP needs at least " + std::to_string(kMinFbpRadial) + " radial samples");
  if (std::abs(sino.y_grid.a() + 1.0) > 1e-12 || std::abs(sino.y_grid.b() - 1.0) > 1e-12)
    fail_validation("FBP sinogram radial grid must span [-1, 1]");
  if (sino.values.size() != n_ang * n_rad) fail_validation("sinogram value count mismatch");
  for (std::size_t a = 0; a < n_ang; ++a) {
    const double expect = 2.0 * std::numbers::pi * static_cast<double>(a) / static_cast<double>(n_ang);
    if (std::abs(sino.thetas[a] - expect) > 1e-9)
      fail_validation("FBP requires uniformly spaced angles on [0, 2 pi)");
  }
  if (grid_n < 2) fail_validation("FBP image grid needs at least 2 points per axis");

  const double delta = sino.y_grid.step();
  const std::size_t len = std::max<std::size_t>(options.padding, 2) * n_rad;

  std::vector<cdouble> kernel_hat(len);
  {
    FftPair fft(len);
    cdouble* buf = fft.data();
    const long half = static_cast<long>(len / 2);
    for (std::size_t i = 0; i < len; ++i) {
      long k = static_cast<long>(i);
      if (k >= half) k -= static_cast<long>(len);
      buf[i] = ram_lak(k, delta);
    }
    fft.forward();
    std::copy(buf, buf + len, kernel_hat.begin());
  }

  // Filtered projections, circularly indexed: slot i holds t = -1 + i delta
  // (i wrapped modulo len).
  std::vector<cdouble> filtered(n_ang * len);
  const double scale = delta / static_cast<double>(len);
  parallel_for(n_ang, [&](std::size_t a) {
    FftPair fft(len);
    cdouble* buf = fft.data();
    std::fill(buf, buf + len, cdouble{});
    for (std::size_t k = 0; k < n_rad; ++k) buf[k] = sino.at(a, k);
    fft.forward();
    for (std::size_t i = 0; i < len; ++i) buf[i] *= kernel_hat[i];
    fft.inverse();
    for (std::size_t i = 0; i < len; ++i) filtered[a * len + i] = scale * buf[i];
  });

  std::vector<double> cos_t(n_ang), sin_t(n_ang);
  for (std::size_t a = 0; a < n_ang; ++a) {
    cos_t[a] = std::cos(sino.thetas[a]);
    sin_t[a] = std::sin(sino.thetas[a]);
  }

  Image2D image(grid_n);
  const double weight = std::numbers::pi / static_cast<double>(n_ang);
  const long llen = static_cast<long>(len);
  parallel_for(grid_n, [&](std::size_t j) {
    const double y = image.axis.node(j);
    for (std::size_t i = 0; i < grid_n; ++i) {
      const double x = image.axis.node(i);
      cdouble acc{};
      for (std::size_t a = 0; a < n_ang; ++a) {
        const double u = (x * cos_t[a] + y * sin_t[a] + 1.0) / delta;
        const double fl = std::floor(u);
        const double fr = u - fl;
        long i0 = static_cast<long>(fl) % llen;
        if (i0 < 0) i0 += llen;
        const long i1 = (i0 + 1) % llen;
        const cdouble* q = &filtered[a * len];
        acc += (1.0 - fr) * q[i0] + fr * q[i1];
      }
      image.at(i, j) = weight * acc;
    }
  });
  return image;
}

RadialProfile angular_project(const Image2D& image, HankelOrder order,
                              std::span<const double> s_grid, std::size_t n_angles) {
  if (!order.is_integer()) fail_validation("angular projection requires an integer order");
  if (n_angles < 8) fail_validation("angular projection needs at least 8 angles");
  const int nu = order.integer_nu();
  std::vector<cdouble> phase(n_angles);
  std::vector<double> cs(n_angles), sn(n_angles);
  for (std::size_t k = 0; k < n_angles; ++k) {
    const double phi = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_angles);
    phase[k] = std::polar(1.0, -static_cast<double>(nu) * phi);
    cs[k] = std::cos(phi);
    sn[k] = std::sin(phi);
  }
  std::vector<cdouble> out(s_grid.size());
  for (std::size_t i = 0; i < s_grid.size(); ++i) {
    const double s = s_grid[i];
    if (!(s > 0.0) || s > 1.0 + 1e-12) fail_validation("angular projection radii must lie in (0, 1]");
    cdouble acc{};
    for (std::size_t k = 0; k < n_angles; ++k) acc += image.sample(s * cs[k], s * sn[k]) * phase[k];
    out[i] = acc / static_cast<double>(n_angles) * std::sqrt(s);
  }
  return RadialProfile(nu, {s_grid.begin(), s_grid.end()}, std::move(out));
}

}  // namespace hsr
