#include "hsr/reconstruct.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include "hsr/error.hpp"
#include "hsr/pswf_cache.hpp"

namespace hsr {
namespace {

cdouble i_pow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

double weighted_norm(std::span<const double> w, std::span<const cdouble> v) {
  double acc = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) acc += w[k] * std::norm(v[k]);
  return std::sqrt(acc);
}

double relative_residual(const HankelDataset& data, std::span<const cdouble> predicted) {
  const auto w = data.h.grid().trapezoid_weights();
  const double h_norm = weighted_norm(w, data.h.values());
  if (!(h_norm > 0.0)) fail_validation("residual undefined for zero data");
  std::vector<cdouble> diff(predicted.size());
  for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = predicted[k] - data.h[k];
  return weighted_norm(w, diff) / h_norm;
}

void check_out_grid(const UniformGrid& g, double sigma) {
  if (g.a() != 0.0 || std::abs(g.b() - sigma) > 1e-12 * sigma)
    fail_validation("reconstruction grid must be [0, sigma]");
  if (g.size() < 3) fail_validation("reconstruction grid needs at least 3 nodes");
}

double cutoff_weight(double y, double fraction) {
  const double a = std::abs(y);
  const double start = 1.0 - fraction;
  if (a <= start) return 1.0;
  if (a >= 1.0) return 0.0;
  return 0.5 * (1.0 + std::cos(std::numbers::pi * (a - start) / fraction));
}

std::shared_ptr<const PSWFBasis> make_basis(double c, const std::string& cache_dir) {
  if (cache_dir.empty()) return std::make_shared<PSWFBasis>(build_usable_basis(c));
  const auto max_index = static_cast<std::size_t>(std::ceil(2.0 * c / std::numbers::pi)) + 24;
  PSWFBasis basis = load_or_build_basis(cache_dir, c, max_index);
  if (basis.usable_max_index() == basis.max_index) basis = build_usable_basis(c);
  return std::make_shared<PSWFBasis>(std::move(basis));
}

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

}  // namespace

std::string to_string(Method method) {
  switch (method) {
    case Method::naive: return "naive";
    case Method::pswf_cormack: return "pswf-cormack";
    case Method::pswf_fbp: return "pswf-fbp";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  if (name == "naive") return Method::naive;
  if (name == "pswf-cormack" || name == "pswf_cormack") return Method::pswf_cormack;
  if (name == "pswf-fbp" || name == "pswf_fbp") return Method::pswf_fbp;
  fail_validation("unknown method '" + name + "'");
}

double residual(HankelOrder order, const SampledFunction1D& f_rec, const HankelDataset& data) {
  data.validate();
  const auto ts = data.h.grid().nodes();
  return relative_residual(data, hankel_forward(order, f_rec, ts));
}

double correlation(const SampledFunction1D& f, const std::function<double(double)>& g) {
  const auto w = f.grid().trapezoid_weights();
  double fg = 0.0, ff = 0.0, gg = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double a = f[k].real();
    const double b = g(f.grid().node(k));
    fg += w[k] * a * b;
    ff += w[k] * a * a;
    gg += w[k] * b * b;
  }
  if (ff == 0.0 || gg == 0.0) return 0.0;
  return fg / std::sqrt(ff * gg);
}

ReconstructionContext::ReconstructionContext(HankelDataset data, UniformGrid out_grid,
                                             PipelineOptions options)
    : data_(std::move(data)),
      out_grid_(out_grid),
      fine_grid_(out_grid.refined(std::max<std::size_t>(options.residual_refine, 1))),
      options_(std::move(options)) {
  data_.validate();
  check_out_grid(out_grid_, data_.sigma);
  basis_ = make_basis(data_.c(), options_.basis_cache_dir);
  m_max_ = basis_->usable_max_index();
  inverse_ = std::make_unique<TruncatedInverse>(*basis_, m_max_, options_.oversample_n);

  if (options_.smooth_cutoff &&
      !(options_.smooth_cutoff_fraction > 0.0 && options_.smooth_cutoff_fraction <= 1.0))
    fail_validation("smooth cut-off fraction must lie in (0, 1]");
  const UniformGrid x_grid(-1.0, 1.0, inverse_->quadrature_size());
  moments_ = inverse_->moments(symmetrize(data_, x_grid));

  const auto ts = data_.h.grid().nodes();
  forward_ = std::make_unique<HankelMatrix>(data_.order, fine_grid_, ts);
}

void ReconstructionContext::check_m(std::size_t m) const {
  if (m > m_max_)
    fail_validation("m = " + std::to_string(m) + " exceeds m_max = " + std::to_string(m_max_) +
                    " for c = " + std::to_string(data_.c()));
}

LegendreExpansion ReconstructionContext::inverted_data(std::size_t m) const {
  check_m(m);
  return inverse_->expansion(inverse_->inverse_coefficients(moments_, m));
}

RadialFunction ReconstructionContext::inverted_radial(std::size_t m) const {
  auto inv = std::make_shared<const LegendreExpansion>(inverted_data(m));
  if (!options_.smooth_cutoff)
    return [inv](double y) { return std::abs(y) > 1.0 ? cdouble{} : (*inv)(y); };
  const double fraction = options_.smooth_cutoff_fraction;
  return [inv, fraction](double y) { return cutoff_weight(y, fraction) * (*inv)(y); };
}

SampledFunction1D ReconstructionContext::theorem_on(const UniformGrid& grid, std::size_t m) const {
  const HankelOrder order = data_.order;
  if (order.two_nu() < 0) fail_validation("the PSWF routes require nu >= 0");
  const RadialFunction radial = inverted_radial(m);

  const double sigma = data_.sigma;
  const std::size_t n = grid.size();
  const UniformGrid x_grid(grid.node(1) / sigma, 1.0, n - 1);
  SampledFunction1D f(grid);
  if (order.is_integer()) {
    const int nu = order.integer_nu();
    const RadialProfile v = cormack2d_invert(nu, radial, x_grid, options_.cormack);
    const cdouble pref = 2.0 * std::numbers::pi * i_pow(nu) / (sigma * sigma);
    for (std::size_t k = 1; k < n; ++k)
      f[k] = pref * std::sqrt(grid.node(k)) * v.values[k - 1];
  } else {
    const int hn = order.half_integer_n();
    const RadialProfile v = cormack3d_invert(hn, radial, x_grid, options_.cormack);
    const cdouble pref =
        std::pow(2.0 * std::numbers::pi, 1.5) * i_pow(hn) / (sigma * sigma * sigma);
    for (std::size_t k = 1; k < n; ++k) f[k] = pref * grid.node(k) * v.values[k - 1];
  }
  return f;
}

SampledFunction1D ReconstructionContext::fbp_on(const UniformGrid& grid, std::size_t m) const {
  const HankelOrder order = data_.order;
  if (!order.is_integer() || order.two_nu() < 0)
    fail_validation("the FBP route is for integer nu >= 0 only; use pswf-cormack for half-integer nu");
  const int nu = order.integer_nu();
  const RadialFunction inv = inverted_radial(m);
  const double sigma = data_.sigma;
  const cdouble pref = 2.0 * std::numbers::pi * i_pow(nu) / (sigma * sigma);

  const std::size_t n_rad = std::max(2 * data_.h.size() - 1, kMinFbpRadial);
  const UniformGrid y_grid(-1.0, 1.0, n_rad);
  const Sinogram2D sino = Sinogram2D::separated(y_grid, options_.fbp_angles, nu,
                                                [&](double y) { return pref * inv(y); });
  const Image2D image = fbp2d(sino, options_.grid_n, options_.fbp);

  const std::size_t n = grid.size();
  std::vector<double> xs(n - 1);
  for (std::size_t k = 1; k < n; ++k) xs[k - 1] = std::min(grid.node(k) / sigma, 1.0);
  const RadialProfile p = angular_project(image, order, xs, options_.project_angles);
  SampledFunction1D f(grid);
  const double scale = std::sqrt(sigma);
  for (std::size_t k = 1; k < n; ++k) f[k] = scale * p.values[k - 1];
  return f;
}

SampledFunction1D ReconstructionContext::coarsen(const SampledFunction1D& fine) const {
  const std::size_t stride = (fine_grid_.size() - 1) / (out_grid_.size() - 1);
  SampledFunction1D out(out_grid_);
  for (std::size_t k = 0; k < out_grid_.size(); ++k) out[k] = fine[k * stride];
  return out;
}

SampledFunction1D ReconstructionContext::reconstruct_theorem(std::size_t m) const {
  return theorem_on(out_grid_, m);
}

SampledFunction1D ReconstructionContext::reconstruct_fbp(std::size_t m) const {
  return fbp_on(out_grid_, m);
}

SampledFunction1D ReconstructionContext::reconstruct(Method method, std::size_t m) const {
  switch (method) {
    case Method::naive: return naive();
    case Method::pswf_cormack: return reconstruct_theorem(m);
    case Method::pswf_fbp: return reconstruct_fbp(m);
  }
  fail_validation("unknown method");
}

SampledFunction1D ReconstructionContext::reconstruct_fine(Method method, std::size_t m) const {
  switch (method) {
    case Method::naive: return naive_inverse(data_, fine_grid_);
    case Method::pswf_cormack: return theorem_on(fine_grid_, m);
    case Method::pswf_fbp: return fbp_on(fine_grid_, m);
  }
  fail_validation("unknown method");
}

SampledFunction1D ReconstructionContext::naive() const { return naive_inverse(data_, out_grid_); }

double ReconstructionContext::residual_of(Method method, std::size_t m) const {
  return relative_residual(data_, forward_->apply(reconstruct_fine(method, m).values()));
}

double ReconstructionContext::residual(const SampledFunction1D& f_rec) const {
  if (!(f_rec.grid() == fine_grid_)) return hsr::residual(data_.order, f_rec, data_);
  return relative_residual(data_, forward_->apply(f_rec.values()));
}

SampledFunction1D reconstruct_theorem(const HankelDataset& data, std::size_t m,
                                      const UniformGrid& out_grid,
                                      const PipelineOptions& options) {
  return ReconstructionContext(data, out_grid, options).reconstruct_theorem(m);
}

SampledFunction1D reconstruct_fbp(const HankelDataset& data, std::size_t m,
                                  const UniformGrid& out_grid, const PipelineOptions& options) {
  if (!data.order.is_integer())
    fail_validation("the FBP route is for integer nu only; use pswf-cormack for half-integer nu");
  return ReconstructionContext(data, out_grid, options).reconstruct_fbp(m);
}

SweepResult select_m(const ReconstructionContext& ctx, Method method, std::size_t m_lo,
                     std::size_t m_hi) {
  if (method == Method::naive) fail_validation("m selection needs a PSWF method");
  if (m_lo > m_hi) fail_validation("empty m range");
  if (m_hi > ctx.m_max())
    fail_validation("m range exceeds m_max = " + std::to_string(ctx.m_max()));
  SweepResult out;
  for (std::size_t m = m_lo; m <= m_hi; ++m) {
    const double e = ctx.residual_of(method, m);
    if (!std::isfinite(e)) fail_numerical("non-finite residual at m = " + std::to_string(m));
    out.ms.push_back(m);
    out.residuals.push_back(e);
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < out.residuals.size(); ++i)
    if (out.residuals[i] < out.residuals[best]) best = i;
  out.m_star = out.ms[best];
  return out;
}

SweepResult select_m(const ReconstructionContext& ctx, Method method) {
  return select_m(ctx, method, 0, ctx.m_max());
}

ReconstructionReport run_reconstruction(const HankelDataset& data,
                                        const ReconstructionRequest& request) {
  data.validate();
  if (request.method == Method::pswf_fbp && !data.order.is_integer())
    fail_validation("the FBP route is for integer nu only; use pswf-cormack for half-integer nu");
  if (request.method != Method::naive && data.order.two_nu() < 0)
    fail_validation("the PSWF routes require nu >= 0");

  ReconstructionReport rep;
  rep.method = request.method;
  rep.order = data.order;
  rep.r = data.r;
  rep.sigma = data.sigma;
  rep.seed = data.seed;
  rep.noise_level = data.noise_level;
  const std::size_t out_n = request.out_n == 0 ? data.h.size() : request.out_n;
  const UniformGrid out_grid(0.0, data.sigma, out_n);

  auto t0 = Clock::now();
  const ReconstructionContext ctx(data, out_grid, request.options);
  rep.runtime_ms["setup"] = elapsed_ms(t0);

  // Zero data has no relative residual; the reconstruction itself is still zero.
  const bool zero_data = std::all_of(data.h.values().begin(), data.h.values().end(),
                                     [](cdouble z) { return z == cdouble{}; });
  const double undefined = std::numeric_limits<double>::quiet_NaN();
  if (zero_data && request.method != Method::naive && !request.m)
    fail_validation("cannot select m for zero data");

  t0 = Clock::now();
  const SampledFunction1D naive_fine = ctx.reconstruct_fine(Method::naive, 0);
  rep.err_naive = zero_data ? undefined : ctx.residual(naive_fine);
  rep.f_naive = ctx.coarsen(naive_fine);
  rep.runtime_ms["naive"] = elapsed_ms(t0);

  if (request.method == Method::naive) {
    rep.f_rec = rep.f_naive;
    rep.err_rec = rep.err_naive;
    return rep;
  }

  std::size_t m = 0;
  if (request.m) {
    m = *request.m;
  } else {
    rep.auto_m = true;
    t0 = Clock::now();
    const SweepResult sweep = select_m(ctx, request.method, request.m_lo.value_or(0),
                                       request.m_hi.value_or(ctx.m_max()));
    rep.runtime_ms["sweep"] = elapsed_ms(t0);
    rep.curve_m = sweep.ms;
    rep.residual_curve = sweep.residuals;
    m = sweep.m_star;
  }
  t0 = Clock::now();
  const SampledFunction1D fine = ctx.reconstruct_fine(request.method, m);
  rep.err_rec = zero_data ? undefined : ctx.residual(fine);
  rep.f_rec = ctx.coarsen(fine);
  rep.runtime_ms["reconstruct"] = elapsed_ms(t0);
  rep.m_selected = m;
  return rep;
}

}  // namespace hsr
