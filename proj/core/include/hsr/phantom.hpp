#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hsr/grid.hpp"

namespace hsr {

/// Declarative test function f on [0, sigma].
struct PhantomSpec {
  enum class Kind { two_step, harmonic, custom };

  Kind kind = Kind::two_step;
  /// Closed intervals of the indicator (two_step).
  std::vector<std::pair<double, double>> intervals{{0.15, 0.3}, {0.5, 0.75}};
  /// Frequency of sin(omega s) (harmonic).
  double omega = 15.0;
  /// Values on a uniform grid of [0, sigma] (custom); resampled linearly.
  std::vector<double> samples;

  static PhantomSpec two_step(std::vector<std::pair<double, double>> intervals = {{0.15, 0.3},
                                                                                 {0.5, 0.75}});
  static PhantomSpec harmonic(double omega);
  static PhantomSpec custom(std::vector<double> samples);

  /// Throws a validation error unless intervals lie in [0, sigma], are ordered
  /// and disjoint, omega > 0, and custom samples number at least 2.
  void validate(double sigma) const;

  /// Value at s; zero outside [0, sigma].
  double value(double s, double sigma) const;
};

std::string to_string(PhantomSpec::Kind kind);
/// Accepts "two-step"/"two_step", "harmonic", "custom".
PhantomSpec::Kind parse_phantom_kind(const std::string& name);

/// Samples the phantom on `grid`, which must be [0, sigma].
SampledFunction1D make_phantom(const PhantomSpec& spec, const UniformGrid& grid);

/// h + eta with i.i.d. centred Gaussian eta (complex if h has an imaginary
/// part) rescaled so that the Euclidean norm of eta is exactly level times that
/// of h. Deterministic for a given seed.
SampledFunction1D add_noise(const SampledFunction1D& h, double level, std::uint64_t seed);

}  // namespace hsr
