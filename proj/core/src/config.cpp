#include "hsr/config.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

#include "hsr/error.hpp"
#include "hsr/io.hpp"

namespace hsr {
namespace {

using nlohmann::json;

PhantomSpec phantom_from(const json& j) {
  if (j.is_string()) {
    PhantomSpec p;
    p.kind = parse_phantom_kind(j.get<std::string>());
    return p;
  }
  if (!j.is_object()) fail_validation("phantom must be a name or an object");
  PhantomSpec p;
  p.kind = parse_phantom_kind(j.at("kind").get<std::string>());
  if (j.contains("intervals")) {
    p.intervals.clear();
    for (const auto& iv : j["intervals"]) {
      if (!iv.is_array() || iv.size() != 2) fail_validation("phantom interval must be [lo, hi]");
      p.intervals.emplace_back(iv[0].get<double>(), iv[1].get<double>());
    }
  }
  if (j.contains("omega")) p.omega = j["omega"].get<double>();
  if (j.contains("samples")) p.samples = j["samples"].get<std::vector<double>>();
  return p;
}

json phantom_json(const PhantomSpec& p) {
  json j;
  j["kind"] = to_string(p.kind);
  switch (p.kind) {
    case PhantomSpec::Kind::two_step: {
      json ivs = json::array();
      for (const auto& [lo, hi] : p.intervals) ivs.push_back({lo, hi});
      j["intervals"] = ivs;
      break;
    }
    case PhantomSpec::Kind::harmonic: j["omega"] = p.omega; break;
    case PhantomSpec::Kind::custom: j["samples"] = p.samples; break;
  }
  return j;
}

std::optional<std::size_t> opt_index(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  if (!j[key].is_number_unsigned()) fail_validation(std::string(key) + " must be a non-negative integer");
  return j[key].get<std::size_t>();
}

}  // namespace

void ExperimentConfig::validate() const {
  HankelOrder::from_nu(nu);
  if (!(sigma > 0.0) || !std::isfinite(sigma)) fail_validation("sigma must be positive");
  if (!(r > 0.0) || !std::isfinite(r)) fail_validation("r must be positive");
  if (n_samples < 8) fail_validation("n_samples must be at least 8");
  if (phantom_n < 2) fail_validation("phantom_n must be at least 2");
  if (!(noise_level >= 0.0) || !std::isfinite(noise_level)) fail_validation("noise_level must be >= 0");
  phantom.validate(sigma);
  const HankelOrder order = HankelOrder::from_nu(nu);
  if (method == Method::pswf_fbp && !order.is_integer())
    fail_validation("the FBP route is for integer nu only; use pswf-cormack for half-integer nu");
  if (method != Method::naive && order.two_nu() < 0)
    fail_validation("the PSWF routes require nu >= 0");
  if (m_lo && m_hi && *m_lo > *m_hi) fail_validation("empty m range");
  if (grid_n < 16) fail_validation("grid_n must be at least 16");
  if (fbp_angles < kMinFbpAngles) fail_validation("fbp_angles must be at least 64");
  if (!(smooth_cutoff_fraction > 0.0 && smooth_cutoff_fraction <= 1.0))
    fail_validation("smooth_cutoff_fraction must be in (0, 1]");
}

PipelineOptions ExperimentConfig::pipeline_options() const {
  PipelineOptions o;
  o.grid_n = grid_n;
  o.fbp_angles = fbp_angles;
  o.smooth_cutoff = smooth_cutoff;
  o.smooth_cutoff_fraction = smooth_cutoff_fraction;
  o.basis_cache_dir = basis_cache_dir;
  return o;
}

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    fail_validation(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail_validation("config must be a JSON object");
  static const std::set<std::string> known = {
      "nu",     "sigma",  "r",    "n_samples", "phantom", "phantom_n",   "noise_level",
      "seed",   "method", "m",    "m_lo",      "m_hi",    "grid_n",      "fbp_angles",
      "smooth_cutoff", "smooth_cutoff_fraction", "basis_cache_dir", "outputs"};
  for (const auto& [key, _] : j.items())
    if (!known.contains(key)) fail_validation("unknown config key '" + key + "'");

  ExperimentConfig c;
  try {
    c.nu = j.value("nu", c.nu);
    c.sigma = j.value("sigma", c.sigma);
    c.r = j.value("r", c.r);
    c.n_samples = j.value("n_samples", c.n_samples);
    if (j.contains("phantom")) c.phantom = phantom_from(j["phantom"]);
    c.phantom_n = j.value("phantom_n", c.phantom_n);
    c.noise_level = j.value("noise_level", c.noise_level);
    c.seed = j.value("seed", c.seed);
    if (j.contains("method")) c.method = parse_method(j["method"].get<std::string>());
    if (j.contains("m")) {
      const auto& m = j["m"];
      if (m.is_string()) {
        if (m.get<std::string>() != "auto") fail_validation("m must be an integer or \"auto\"");
      } else {
        c.m = opt_index(j, "m");
      }
    }
    c.m_lo = opt_index(j, "m_lo");
    c.m_hi = opt_index(j, "m_hi");
    c.grid_n = j.value("grid_n", c.grid_n);
    c.fbp_angles = j.value("fbp_angles", c.fbp_angles);
    c.smooth_cutoff = j.value("smooth_cutoff", c.smooth_cutoff);
    c.smooth_cutoff_fraction = j.value("smooth_cutoff_fraction", c.smooth_cutoff_fraction);
    c.basis_cache_dir = j.value("basis_cache_dir", c.basis_cache_dir);
    if (j.contains("outputs")) {
      const auto& o = j["outputs"];
      c.outputs.data_csv = o.value("data_csv", "");
      c.outputs.sidecar_json = o.value("sidecar_json", "");
      c.outputs.result_csv = o.value("result_csv", "");
      c.outputs.report_json = o.value("report_json", "");
      c.outputs.curve_csv = o.value("curve_csv", "");
      c.outputs.plot_svg = o.value("plot_svg", "");
    }
  } catch (const json::exception& e) {
    fail_validation(std::string("bad config value: ") + e.what());
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& file) {
  return parse_config(read_text_file(file));
}

std::string config_to_json(const ExperimentConfig& c) {
  json j;
  j["nu"] = c.nu;
  j["sigma"] = c.sigma;
  j["r"] = c.r;
  j["n_samples"] = c.n_samples;
  j["phantom"] = phantom_json(c.phantom);
  j["phantom_n"] = c.phantom_n;
  j["noise_level"] = c.noise_level;
  j["seed"] = c.seed;
  j["method"] = to_string(c.method);
  j["m"] = c.m ? json(*c.m) : json("auto");
  if (c.m_lo) j["m_lo"] = *c.m_lo;
  if (c.m_hi) j["m_hi"] = *c.m_hi;
  j["grid_n"] = c.grid_n;
  j["fbp_angles"] = c.fbp_angles;
  j["smooth_cutoff"] = c.smooth_cutoff;
  j["smooth_cutoff_fraction"] = c.smooth_cutoff_fraction;
  if (!c.basis_cache_dir.empty()) j["basis_cache_dir"] = c.basis_cache_dir;
  json o = json::object();
  auto put = [&o](const char* key, const std::string& v) {
    if (!v.empty()) o[key] = v;
  };
  put("data_csv", c.outputs.data_csv);
  put("sidecar_json", c.outputs.sidecar_json);
  put("result_csv", c.outputs.result_csv);
  put("report_json", c.outputs.report_json);
  put("curve_csv", c.outputs.curve_csv);
  put("plot_svg", c.outputs.plot_svg);
  j["outputs"] = o;
  return j.dump(2) + "\n";
}

std::string phantom_to_json(const PhantomSpec& spec) { return phantom_json(spec).dump(); }

PhantomSpec phantom_from_json(const std::string& json_text) {
  try {
    return phantom_from(json::parse(json_text));
  } catch (const json::exception& e) {
    fail_validation(std::string("bad phantom description: ") + e.what());
  }
}

SampledFunction1D experiment_phantom(const ExperimentConfig& config) {
  return make_phantom(config.phantom, UniformGrid(0.0, config.sigma, config.phantom_n));
}

HankelDataset simulate(const ExperimentConfig& config) {
  config.validate();
  const HankelOrder order = HankelOrder::from_nu(config.nu);
  HankelDataset data = make_dataset(order, experiment_phantom(config), config.r, config.n_samples);
  data.sigma = config.sigma;
  data.h = add_noise(data.h, config.noise_level, config.seed);
  data.noise_level = config.noise_level;
  data.seed = config.seed;
  return data;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  ExperimentResult out;
  out.data = simulate(config);
  ReconstructionRequest req;
  req.method = config.method;
  req.m = config.m;
  req.m_lo = config.m_lo;
  req.m_hi = config.m_hi;
  req.options = config.pipeline_options();
  out.report = run_reconstruction(out.data, req);

  const auto& o = config.outputs;
  if (!o.data_csv.empty()) write_function_csv(o.data_csv, out.data.h, "t");
  if (!o.sidecar_json.empty()) {
    DataSidecar meta{config.nu,          config.r,    config.sigma,
                     config.n_samples,   config.phantom_n, config.noise_level,
                     config.seed,        phantom_to_json(config.phantom)};
    write_sidecar(o.sidecar_json, meta);
  }
  if (!o.result_csv.empty()) write_function_csv(o.result_csv, out.report.f_rec, "s");
  if (!o.report_json.empty()) write_text_file(o.report_json, report_to_json(out.report, true));
  if (!o.curve_csv.empty())
    write_residual_curve_csv(o.curve_csv, out.report.curve_m, out.report.residual_curve,
                             out.report.err_naive);
  if (!o.plot_svg.empty()) {
    const UniformGrid& g = out.report.f_rec.grid();
    const SampledFunction1D truth = make_phantom(config.phantom, g);
    write_plot_svg(o.plot_svg, truth, out.report.f_rec, out.report.f_naive,
                   "nu = " + format_double(config.nu) + ", " + to_string(config.method));
  }
  return out;
}

}  // namespace hsr
