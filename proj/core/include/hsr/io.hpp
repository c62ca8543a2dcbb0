#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hsr/grid.hpp"
#include "hsr/radon.hpp"
#include "hsr/reconstruct.hpp"

namespace hsr {

inline constexpr int kSchemaVersion = 1;

/// Shortest text that parses back to the same double (17 significant digits).
std::string format_double(double x);

/// CSV with header `<axis>,re,im`, one row per grid node.
void write_function_csv(const std::filesystem::path& file, const SampledFunction1D& f,
                        const std::string& axis);
/// Reads a `<axis>,re,im` CSV; the abscissae must form a uniform grid.
SampledFunction1D read_function_csv(const std::filesystem::path& file);

/// CSV `m,residual,naive`.
void write_residual_curve_csv(const std::filesystem::path& file, const std::vector<std::size_t>& ms,
                              const std::vector<double>& residuals, double naive_residual);

/// CSV `y,theta,re,im`, row-major by angle.
void write_sinogram_csv(const std::filesystem::path& file, const Sinogram2D& sino);
Sinogram2D read_sinogram_csv(const std::filesystem::path& file);

/// Metadata stored next to forward data; enough to regenerate it.
struct DataSidecar {
  double nu = 0.0;
  double r = 0.0;
  double sigma = 0.0;
  std::size_t n_samples = 0;
  std::size_t phantom_n = 0;  ///< forward-simulation resolution; 0 if unknown
  double noise_level = 0.0;
  std::uint64_t seed = 0;
  std::string phantom_json;  ///< phantom description as a JSON object
};

void write_sidecar(const std::filesystem::path& file, const DataSidecar& meta);
DataSidecar read_sidecar(const std::filesystem::path& file);

/// Report as JSON text. With `real_phantom` the reconstructions are reported
/// by their real parts only.
std::string report_to_json(const ReconstructionReport& report, bool real_phantom);

/// {<axis>: [...], re: [...], im: [...]} as JSON text.
std::string function_to_json(const SampledFunction1D& f, const std::string& axis);

/// Line plot of the preimage (dotted, optional), PSWF reconstruction (bold)
/// and naive reconstruction (dashed), real parts.
void write_plot_svg(const std::filesystem::path& file, const std::optional<SampledFunction1D>& truth,
                    const SampledFunction1D& f_rec, const SampledFunction1D& f_naive,
                    const std::string& title);

void write_text_file(const std::filesystem::path& file, const std::string& text);
std::string read_text_file(const std::filesystem::path& file);

}  // namespace hsr
