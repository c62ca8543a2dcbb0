#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "hsr/hankel.hpp"
#include "hsr/phantom.hpp"
#include "hsr/reconstruct.hpp"

namespace hsr {

/// Output paths; empty entries are not written.
struct ExperimentOutputs {
  std::string data_csv;      ///< h on [0, r], `t,re,im`
  std::string sidecar_json;  ///< seed, noise level and geometry of the data
  std::string result_csv;    ///< reconstruction, `s,re,im`
  std::string report_json;
  std::string curve_csv;     ///< `m,residual,naive`
  std::string plot_svg;
};

/// One experiment: phantom, forward simulation with noise, reconstruction.
struct ExperimentConfig {
  double nu = 0.0;
  double sigma = 1.0;
  double r = 10.0;
  std::size_t n_samples = 256;
  PhantomSpec phantom;
  /// Phantom resolution used for the forward simulation.
  std::size_t phantom_n = 4096;
  double noise_level = 0.0;
  std::uint64_t seed = 1;
  Method method = Method::pswf_cormack;
  std::optional<std::size_t> m;  ///< empty means "auto"
  std::optional<std::size_t> m_lo;
  std::optional<std::size_t> m_hi;
  std::size_t grid_n = 512;
  std::size_t fbp_angles = 256;
  bool smooth_cutoff = false;
  double smooth_cutoff_fraction = 0.1;
  std::string basis_cache_dir;
  ExperimentOutputs outputs;

  /// Throws a validation error on inconsistent settings.
  void validate() const;
  PipelineOptions pipeline_options() const;
};

/// Parses the JSON form. Unknown keys are rejected.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::filesystem::path& file);
std::string config_to_json(const ExperimentConfig& config);

std::string phantom_to_json(const PhantomSpec& spec);
/// Accepts a kind name ("two-step") or an object {kind, intervals, omega, samples}.
PhantomSpec phantom_from_json(const std::string& json_text);

/// Phantom sampled on [0, sigma] with `phantom_n` nodes.
SampledFunction1D experiment_phantom(const ExperimentConfig& config);
/// Noisy Hankel data of the configured phantom.
HankelDataset simulate(const ExperimentConfig& config);

struct ExperimentResult {
  HankelDataset data;
  ReconstructionReport report;
};

/// simulate + run_reconstruction, then writes every configured output.
ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace hsr
