#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hsr/bandlimited.hpp"
#include "hsr/grid.hpp"
#include "hsr/hankel.hpp"
#include "hsr/pswf.hpp"
#include "hsr/radon.hpp"

namespace hsr {

enum class Method { naive, pswf_cormack, pswf_fbp };

std::string to_string(Method method);
/// Accepts "naive", "pswf-cormack"/"pswf_cormack", "pswf-fbp"/"pswf_fbp".
Method parse_method(const std::string& name);

struct PipelineOptions {
  std::size_t oversample_n = kDefaultOversampleN;
  CormackOptions cormack;
  FbpOptions fbp;
  std::size_t fbp_angles = 256;   ///< sinogram angles
  std::size_t grid_n = 512;       ///< FBP image resolution per axis
  std::size_t project_angles = 256;
  /// Gibbs mitigation: multiply the inverted data by a raised cosine over
  /// the outer `smooth_cutoff_fraction` of |y| <= 1 before the Radon step.
  bool smooth_cutoff = false;
  double smooth_cutoff_fraction = 0.1;
  /// Residuals are evaluated from reconstructions on the output grid refined
  /// by this factor; reports keep the output nodes.
  std::size_t residual_refine = 1;
  /// Directory for the PSWF basis cache; empty disables caching.
  std::string basis_cache_dir;
};

/// Relative data-space residual ||H_nu[f_rec] - h|| / ||h|| on the data grid
/// (trapezoid weights). f_rec must live on [0, sigma].
double residual(HankelOrder order, const SampledFunction1D& f_rec, const HankelDataset& data);

/// Normalized trapezoid inner product of Re f with g over the grid of f.
double correlation(const SampledFunction1D& f, const std::function<double(double)>& g);

/// Shared state for repeated reconstructions from one dataset: PSWF basis,
/// truncated inverse, symmetrized data and its moments, and the forward
/// matrix used for residuals. Immutable after construction.
class ReconstructionContext {
 public:
  /// `out_grid` must be [0, sigma] with at least 3 nodes.
  ReconstructionContext(HankelDataset data, UniformGrid out_grid, PipelineOptions options = {});

  const HankelDataset& data() const noexcept { return data_; }
  const UniformGrid& out_grid() const noexcept { return out_grid_; }
  const PSWFBasis& basis() const noexcept { return *basis_; }
  const PipelineOptions& options() const noexcept { return options_; }
  /// Largest admissible truncation index for this bandwidth.
  std::size_t m_max() const noexcept { return m_max_; }

  /// F^{-1}_{m,c}[h_{r,nu}] as a function on [-1, 1].
  LegendreExpansion inverted_data(std::size_t m) const;
  /// inverted_data(m) as a function on |y| <= 1, zero outside, with the
  /// smooth cut-off applied when enabled.
  RadialFunction inverted_radial(std::size_t m) const;

  /// Reconstructions sampled on the output grid.
  SampledFunction1D reconstruct_theorem(std::size_t m) const;
  SampledFunction1D reconstruct_fbp(std::size_t m) const;
  SampledFunction1D reconstruct(Method method, std::size_t m) const;
  SampledFunction1D naive() const;

  /// Reconstruction on the refined grid, as used for residuals.
  SampledFunction1D reconstruct_fine(Method method, std::size_t m) const;
  const UniformGrid& fine_grid() const noexcept { return fine_grid_; }
  /// Restriction of a refined-grid function to the output nodes.
  SampledFunction1D coarsen(const SampledFunction1D& fine) const;

  /// Residual of the method at m, evaluated from the refined reconstruction.
  double residual_of(Method method, std::size_t m) const;
  /// Residual of an arbitrary reconstruction on [0, sigma].
  double residual(const SampledFunction1D& f_rec) const;

 private:
  void check_m(std::size_t m) const;
  SampledFunction1D theorem_on(const UniformGrid& grid, std::size_t m) const;
  SampledFunction1D fbp_on(const UniformGrid& grid, std::size_t m) const;

  HankelDataset data_;
  UniformGrid out_grid_;
  UniformGrid fine_grid_;
  PipelineOptions options_;
  std::shared_ptr<const PSWFBasis> basis_;
  std::size_t m_max_ = 0;
  std::unique_ptr<TruncatedInverse> inverse_;
  std::vector<cdouble> moments_;
  std::unique_ptr<HankelMatrix> forward_;
};

/// Free-function forms; each builds a context internally.
SampledFunction1D reconstruct_theorem(const HankelDataset& data, std::size_t m,
                                      const UniformGrid& out_grid,
                                      const PipelineOptions& options = {});
SampledFunction1D reconstruct_fbp(const HankelDataset& data, std::size_t m,
                                  const UniformGrid& out_grid,
                                  const PipelineOptions& options = {});

struct SweepResult {
  std::size_t m_star = 0;
  std::vector<std::size_t> ms;
  std::vector<double> residuals;
};

/// Residual for every m in [m_lo, m_hi]; the minimizer (smallest m on ties).
SweepResult select_m(const ReconstructionContext& ctx, Method method, std::size_t m_lo,
                     std::size_t m_hi);
/// Full default range 0..m_max.
SweepResult select_m(const ReconstructionContext& ctx, Method method);

struct ReconstructionReport {
  Method method = Method::naive;
  HankelOrder order{0};
  double r = 0.0;
  double sigma = 0.0;
  bool auto_m = false;
  std::optional<std::size_t> m_selected;
  std::vector<std::size_t> curve_m;
  std::vector<double> residual_curve;
  SampledFunction1D f_rec{UniformGrid(0.0, 1.0, 2)};
  SampledFunction1D f_naive{UniformGrid(0.0, 1.0, 2)};
  /// Relative residuals; NaN when the data are identically zero.
  double err_rec = 0.0;
  double err_naive = 0.0;
  std::map<std::string, double> runtime_ms;
  std::uint64_t seed = 0;
  double noise_level = 0.0;
};

struct ReconstructionRequest {
  Method method = Method::pswf_cormack;
  std::optional<std::size_t> m;  ///< empty selects m by residual minimization
  std::optional<std::size_t> m_lo;
  std::optional<std::size_t> m_hi;
  std::size_t out_n = 0;  ///< output grid size; 0 uses the data size
  PipelineOptions options;
};

ReconstructionReport run_reconstruction(const HankelDataset& data,
                                        const ReconstructionRequest& request);

}  // namespace hsr
