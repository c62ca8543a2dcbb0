#include "hsr/phantom.hpp"

#include <cmath>
#include <random>

#include "hsr/error.hpp"

namespace hsr {

PhantomSpec PhantomSpec::two_step(std::vector<std::pair<double, double>> intervals) {
  PhantomSpec p;
  p.kind = Kind::two_step;
  p.intervals = std::move(intervals);
  return p;
}

PhantomSpec PhantomSpec::harmonic(double omega) {
  PhantomSpec p;
  p.kind = Kind::harmonic;
  p.omega = omega;
  return p;
}

PhantomSpec PhantomSpec::custom(std::vector<double> samples) {
  PhantomSpec p;
  p.kind = Kind::custom;
  p.samples = std::move(samples);
  return p;
}

void PhantomSpec::validate(double sigma) const {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) fail_validation("sigma must be positive");
  switch (kind) {
    case Kind::two_step: {
      if (intervals.empty()) fail_validation("two-step phantom needs at least one interval");
      double prev_hi = -1.0;
      for (const auto& [lo, hi] : intervals) {
        if (!(lo < hi)) fail_validation("phantom interval must satisfy lo < hi");
        if (lo < 0.0 || hi > sigma) fail_validation("phantom interval must lie in [0, sigma]");
        if (lo <= prev_hi) fail_validation("phantom intervals must be ordered and disjoint");
        prev_hi = hi;
      }
      break;
    }
    case Kind::harmonic:
      if (!(omega > 0.0) || !std::isfinite(omega)) fail_validation("harmonic omega must be positive");
      break;
    case Kind::custom:
      if (samples.size() < 2) fail_validation("custom phantom needs at least 2 samples");
      for (double v : samples)
        if (!std::isfinite(v)) fail_validation("custom phantom samples must be finite");
      break;
  }
}

double PhantomSpec::value(double s, double sigma) const {
  if (s < 0.0 || s > sigma) return 0.0;
  switch (kind) {
    case Kind::two_step:
      for (const auto& [lo, hi] : intervals)
        if (s >= lo && s <= hi) return 1.0;
      return 0.0;
    case Kind::harmonic:
      return std::sin(omega * s);
    case Kind::custom: {
      const SampledFunction1D f(UniformGrid(0.0, sigma, samples.size()),
                                std::vector<cdouble>(samples.begin(), samples.end()));
      return f.interpolate(s).real();
    }
  }
  return 0.0;
}

std::string to_string(PhantomSpec::Kind kind) {
  switch (kind) {
    case PhantomSpec::Kind::two_step: return "two-step";
    case PhantomSpec::Kind::harmonic: return "harmonic";
    case PhantomSpec::Kind::custom: return "custom";
  }
  return "unknown";
}

PhantomSpec::Kind parse_phantom_kind(const std::string& name) {
  if (name == "two-step" || name == "two_step") return PhantomSpec::Kind::two_step;
  if (name == "harmonic") return PhantomSpec::Kind::harmonic;
  if (name == "custom") return PhantomSpec::Kind::custom;
  fail_validation("unknown phantom kind '" + name + "'");
}

SampledFunction1D make_phantom(const PhantomSpec& spec, const UniformGrid& grid) {
  if (grid.a() != 0.0) fail_validation("phantom grid must start at 0");
  const double sigma = grid.b();
  spec.validate(sigma);
  if (spec.kind == PhantomSpec::Kind::custom) {
    const SampledFunction1D src(UniformGrid(0.0, sigma, spec.samples.size()),
                                std::vector<cdouble>(spec.samples.begin(), spec.samples.end()));
    return SampledFunction1D::from_function(grid, [&](double s) { return src.interpolate(s); });
  }
  return SampledFunction1D::from_function(grid,
                                          [&](double s) { return cdouble(spec.value(s, sigma)); });
}

SampledFunction1D add_noise(const SampledFunction1D& h, double level, std::uint64_t seed) {
  if (!(level >= 0.0) || !std::isfinite(level)) fail_validation("noise level must be >= 0");
  SampledFunction1D out = h;
  if (level == 0.0) return out;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const bool real = h.is_real();
  std::vector<cdouble> eta(h.size());
  for (auto& e : eta) {
    const double re = normal(rng);
    const double im = real ? 0.0 : normal(rng);
    e = {re, im};
  }
  double h_norm = 0.0, eta_norm = 0.0;
  for (std::size_t k = 0; k < h.size(); ++k) {
    h_norm += std::norm(h[k]);
    eta_norm += std::norm(eta[k]);
  }
  h_norm = std::sqrt(h_norm);
  eta_norm = std::sqrt(eta_norm);
  if (h_norm == 0.0 || eta_norm == 0.0) return out;
  const double scale = level * h_norm / eta_norm;
  for (std::size_t k = 0; k < h.size(); ++k) out[k] += scale * eta[k];
  return out;
}

}  // namespace hsr
