#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "hsr/config.hpp"
#include "hsr/error.hpp"
#include "hsr/hankel.hpp"
#include "hsr/io.hpp"
#include "hsr/phantom.hpp"
#include "hsr/pswf.hpp"
#include "hsr/radon.hpp"
#include "hsr/reconstruct.hpp"
#include "hsr/special.hpp"

namespace hsr::cli {
namespace {

namespace fs = std::filesystem;

struct PhantomFlags {
  std::string kind = "two-step";
  std::string intervals;
  double omega = 15.0;
  std::string samples_csv;
};

struct GeometryFlags {
  std::optional<double> nu;
  std::optional<double> r;
  std::optional<double> sigma;
};

struct ReconFlags {
  std::string data;
  std::string sidecar;
  GeometryFlags geom;
  std::string method = "pswf-cormack";
  std::string m = "auto";
  std::optional<std::size_t> m_lo;
  std::optional<std::size_t> m_hi;
  std::size_t grid_n = 512;
  std::size_t angles = 256;
  std::size_t out_n = 0;
  bool smooth_cutoff = false;
  double cutoff_fraction = 0.1;
  std::string cache_dir;
  std::string out;
  std::string report;
  std::string plot;
  std::string format = "csv";
};

std::vector<std::pair<double, double>> parse_intervals(const std::string& text) {
  std::vector<std::pair<double, double>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) fail_validation("interval '" + item + "' must look like lo:hi");
    try {
      out.emplace_back(std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1)));
    } catch (const std::exception&) {
      fail_validation("interval '" + item + "' is not numeric");
    }
  }
  return out;
}

PhantomSpec phantom_from_flags(const PhantomFlags& f, double sigma) {
  PhantomSpec p;
  p.kind = parse_phantom_kind(f.kind);
  if (!f.intervals.empty()) p.intervals = parse_intervals(f.intervals);
  p.omega = f.omega;
  if (p.kind == PhantomSpec::Kind::custom) {
    if (f.samples_csv.empty()) fail_validation("custom phantom needs --samples <csv>");
    const SampledFunction1D s = read_function_csv(f.samples_csv);
    if (s.grid().a() != 0.0 || std::abs(s.grid().b() - sigma) > 1e-12 * sigma)
      fail_validation("custom phantom samples must span [0, sigma]");
    for (std::size_t k = 0; k < s.size(); ++k) p.samples.push_back(s[k].real());
  }
  p.validate(sigma);
  return p;
}

void add_phantom_flags(CLI::App* app, PhantomFlags& f) {
  app->add_option("--phantom", f.kind, "two-step | harmonic | custom")->capture_default_str();
  app->add_option("--intervals", f.intervals, "two-step intervals, e.g. 0.15:0.3,0.5:0.75");
  app->add_option("--omega", f.omega, "harmonic frequency")->capture_default_str();
  app->add_option("--samples", f.samples_csv, "custom phantom CSV (s,re,im) on [0, sigma]");
}

void add_output_format(CLI::App* app, std::string& format) {
  app->add_option("--format", format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

void write_function(const fs::path& file, const SampledFunction1D& f, const std::string& axis,
                    const std::string& format) {
  if (format == "json")
    write_text_file(file, function_to_json(f, axis));
  else
    write_function_csv(file, f, axis);
}

fs::path default_sidecar(const fs::path& data) {
  fs::path p = data;
  p.replace_extension(".meta.json");
  return p;
}

bool same(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); }

// Data plus geometry, reconciled between the CSV grid, the sidecar and flags.
HankelDataset load_dataset(const ReconFlags& f) {
  if (f.data.empty()) fail_validation("--data is required");
  SampledFunction1D h = read_function_csv(f.data);
  const fs::path side = f.sidecar.empty() ? default_sidecar(f.data) : fs::path(f.sidecar);
  std::optional<DataSidecar> meta;
  if (!f.sidecar.empty() || fs::exists(side)) meta = read_sidecar(side);

  auto pick = [&](const std::optional<double>& flag, std::optional<double> stored, const char* name) {
    if (flag && stored && !same(*flag, *stored))
      fail_validation(std::string("inconsistent metadata: --") + name + " disagrees with the sidecar");
    if (flag) return *flag;
    if (stored) return *stored;
    fail_validation(std::string("--") + name + " is required when no sidecar is available");
  };
  HankelDataset data;
  data.order = HankelOrder::from_nu(pick(f.geom.nu, meta ? std::optional(meta->nu) : std::nullopt, "nu"));
  data.r = pick(f.geom.r, meta ? std::optional(meta->r) : std::nullopt, "r");
  data.sigma = pick(f.geom.sigma, meta ? std::optional(meta->sigma) : std::nullopt, "sigma");
  if (h.grid().a() != 0.0 || !same(h.grid().b(), data.r))
    fail_validation("inconsistent metadata: data grid does not span [0, r]");
  data.h = SampledFunction1D(UniformGrid(0.0, data.r, h.size()),
                             std::vector<cdouble>(h.values().begin(), h.values().end()));
  if (meta) {
    data.noise_level = meta->noise_level;
    data.seed = meta->seed;
  }
  data.validate();
  return data;
}

ReconstructionRequest request_from(const ReconFlags& f) {
  ReconstructionRequest req;
  req.method = parse_method(f.method);
  if (f.m != "auto") {
    try {
      std::size_t pos = 0;
      const long v = std::stol(f.m, &pos);
      if (pos != f.m.size() || v < 0) throw std::invalid_argument(f.m);
      req.m = static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      fail_validation("--m must be a non-negative integer or 'auto'");
    }
  }
  req.m_lo = f.m_lo;
  req.m_hi = f.m_hi;
  if (req.m_lo && req.m_hi && *req.m_lo > *req.m_hi) fail_validation("empty m range");
  req.out_n = f.out_n;
  req.options.grid_n = f.grid_n;
  req.options.fbp_angles = f.angles;
  req.options.smooth_cutoff = f.smooth_cutoff;
  req.options.smooth_cutoff_fraction = f.cutoff_fraction;
  req.options.basis_cache_dir = f.cache_dir;
  if (f.angles < kMinFbpAngles) fail_validation("--angles must be at least 64");
  if (f.grid_n < 16) fail_validation("--grid-n must be at least 16");
  if (!(f.cutoff_fraction > 0.0 && f.cutoff_fraction <= 1.0))
    fail_validation("--cutoff-fraction must be in (0, 1]");
  return req;
}

void add_recon_flags(CLI::App* app, ReconFlags& f) {
  app->add_option("--data", f.data, "Hankel data CSV (t,re,im)")->required();
  app->add_option("--sidecar", f.sidecar, "metadata JSON (default: <data>.meta.json)");
  app->add_option("--nu", f.geom.nu, "order nu");
  app->add_option("--r", f.geom.r, "band limit r");
  app->add_option("--sigma", f.geom.sigma, "support radius sigma");
  app->add_option("--method", f.method, "naive | pswf-cormack | pswf-fbp")->capture_default_str();
  app->add_option("--m-lo", f.m_lo, "lowest m of the sweep");
  app->add_option("--m-hi", f.m_hi, "highest m of the sweep (default m_max)");
  app->add_option("--grid-n", f.grid_n, "FBP image resolution")->capture_default_str();
  app->add_option("--angles", f.angles, "FBP sinogram angles")->capture_default_str();
  app->add_option("--out-n", f.out_n, "output grid size (default: data size)");
  app->add_flag("--smooth-cutoff", f.smooth_cutoff,
                "taper the inverted data near the support boundary (Gibbs mitigation)");
  app->add_option("--cutoff-fraction", f.cutoff_fraction, "outer fraction of the support tapered")
      ->capture_default_str();
  app->add_option("--cache-dir", f.cache_dir, "PSWF basis cache directory");
}

int cmd_phantom(const PhantomFlags& pf, double sigma, std::size_t n, const std::string& out,
                const std::string& format, std::ostream& os) {
  if (!(sigma > 0.0)) fail_validation("sigma must be positive");
  if (n < 2) fail_validation("--n must be at least 2");
  const PhantomSpec spec = phantom_from_flags(pf, sigma);
  const SampledFunction1D f = make_phantom(spec, UniformGrid(0.0, sigma, n));
  write_function(out, f, "s", format);
  os << "wrote " << out << " (" << n << " samples)\n";
  return kExitOk;
}

int cmd_forward(ExperimentConfig cfg, const PhantomFlags& pf, const std::string& out,
                const std::string& sidecar, const std::string& format, std::ostream& os) {
  cfg.phantom = phantom_from_flags(pf, cfg.sigma);
  cfg.validate();
  const HankelDataset data = simulate(cfg);
  write_function(out, data.h, "t", format);
  const fs::path side = sidecar.empty() ? default_sidecar(out) : fs::path(sidecar);
  write_sidecar(side, DataSidecar{cfg.nu, cfg.r, cfg.sigma, cfg.n_samples, cfg.phantom_n,
                                  cfg.noise_level, cfg.seed, phantom_to_json(cfg.phantom)});
  os << "wrote " << out << " and " << side.string() << "\n";
  return kExitOk;
}

int cmd_reconstruct(const ReconFlags& f, std::ostream& os) {
  const ReconstructionRequest req = request_from(f);
  const HankelDataset data = load_dataset(f);
  if (req.method == Method::pswf_fbp && !data.order.is_integer())
    fail_validation("the FBP route is for integer nu only; use pswf-cormack for half-integer nu");
  if (f.out.empty()) fail_validation("--out is required");
  const ReconstructionReport rep = run_reconstruction(data, req);
  write_function(f.out, rep.f_rec, "s", f.format);
  if (!f.report.empty()) write_text_file(f.report, report_to_json(rep, false));
  if (!f.plot.empty()) write_plot_svg(f.plot, std::nullopt, rep.f_rec, rep.f_naive, to_string(rep.method));
  os << "method " << to_string(rep.method);
  if (rep.m_selected) os << ", m = " << *rep.m_selected << (rep.auto_m ? " (auto)" : "");
  os << ", residual " << format_double(rep.err_rec) << ", naive " << format_double(rep.err_naive)
     << "\n";
  return kExitOk;
}

int cmd_sweep(const ReconFlags& f, std::ostream& os) {
  const ReconstructionRequest req = request_from(f);
  if (req.method == Method::naive) fail_validation("sweep needs a PSWF method");
  const HankelDataset data = load_dataset(f);
  if (req.method == Method::pswf_fbp && !data.order.is_integer())
    fail_validation("the FBP route is for integer nu only; use pswf-cormack for half-integer nu");
  if (f.out.empty()) fail_validation("--out is required");
  const std::size_t out_n = req.out_n == 0 ? data.h.size() : req.out_n;
  const ReconstructionContext ctx(data, UniformGrid(0.0, data.sigma, out_n), req.options);
  const SweepResult sweep =
      select_m(ctx, req.method, req.m_lo.value_or(0), req.m_hi.value_or(ctx.m_max()));
  const double naive = ctx.residual(ctx.reconstruct_fine(Method::naive, 0));
  write_residual_curve_csv(f.out, sweep.ms, sweep.residuals, naive);
  std::size_t best = 0;
  while (sweep.ms[best] != sweep.m_star) ++best;
  os << "m* = " << sweep.m_star << ", residual " << format_double(sweep.residuals[best])
     << ", naive " << format_double(naive) << "\n";
  return kExitOk;
}

int cmd_run(const std::string& config_path, std::ostream& os) {
  const ExperimentConfig cfg = load_config(config_path);
  const ExperimentResult res = run_experiment(cfg);
  os << "method " << to_string(res.report.method);
  if (res.report.m_selected) os << ", m = " << *res.report.m_selected;
  os << ", residual " << format_double(res.report.err_rec) << ", naive "
     << format_double(res.report.err_naive) << "\n";
  return kExitOk;
}

struct Check {
  std::string name;
  bool ok;
  std::string detail;
};

int cmd_selftest(std::ostream& os) {
  std::vector<Check> checks;

  {
    const PSWFBasis b = build_basis(10.0, 20);
    const QuadratureRule q = gauss_legendre(200, -1.0, 1.0);
    std::vector<std::vector<double>> psi;
    for (std::size_t j = 0; j <= 20; ++j) psi.push_back(eval_psi(b, j, q.nodes));
    double worst = 0.0;
    for (std::size_t i = 0; i <= 20; ++i)
      for (std::size_t j = 0; j <= 20; ++j) {
        double g = 0.0;
        for (std::size_t k = 0; k < q.nodes.size(); ++k) g += q.weights[k] * psi[i][k] * psi[j][k];
        worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
      }
    checks.push_back({"pswf-orthonormality", worst <= 1e-9, "max |G - I| = " + format_double(worst)});
  }
  {
    const UniformGrid s(0.05, 0.95, 91);
    const RadialProfile v = cormack2d_invert(
        0, [](double t) { return cdouble(t < 1.0 ? 2.0 * std::sqrt(1.0 - t * t) : 0.0); }, s);
    double worst = 0.0;
    for (const auto& x : v.values) worst = std::max(worst, std::abs(x - 1.0));
    checks.push_back({"cormack-disk", worst <= 5e-3, "max |v - 1| = " + format_double(worst)});
  }
  {
    const UniformGrid sg(0.0, 1.0, 513);
    const auto f = SampledFunction1D::from_function(
        sg, [](double s) { return cdouble(std::sqrt(s) * std::pow(1.0 - s * s, 3)); });
    const HankelDataset d = make_dataset(HankelOrder(0), f, 80.0, 2048);
    const SampledFunction1D back = naive_inverse(d, UniformGrid(0.0, 1.0, 65));
    double worst = 0.0;
    for (std::size_t k = 0; k < back.size(); ++k)
      worst = std::max(worst, std::abs(back[k] - f.interpolate(back.grid().node(k))));
    checks.push_back({"hankel-self-inverse", worst <= 2e-2, "max error = " + format_double(worst)});
  }

  bool all = true;
  for (const auto& c : checks) {
    os << (c.ok ? "PASS " : "FAIL ") << c.name << "  " << c.detail << "\n";
    all = all && c.ok;
  }
  return all ? kExitOk : kExitNumerical;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::validation: return kExitValidation;
    case ErrorKind::io: return kExitIo;
    case ErrorKind::numerical: return kExitNumerical;
  }
  return kExitNumerical;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Super-resolved inversion of the band-limited Hankel transform", "hankelsr"};
  app.require_subcommand(1);

  PhantomFlags phantom_flags;
  double sigma = 1.0;
  std::size_t n = 256;
  std::string out_path;
  std::string format = "csv";
  std::string sidecar;
  ExperimentConfig fwd;
  ReconFlags recon;
  std::string config_path;

  auto* phantom = app.add_subcommand("phantom", "sample a phantom on [0, sigma]");
  add_phantom_flags(phantom, phantom_flags);
  phantom->add_option("--sigma", sigma, "support radius")->capture_default_str();
  phantom->add_option("--n", n, "number of samples")->capture_default_str();
  phantom->add_option("--out", out_path, "output file")->required();
  add_output_format(phantom, format);

  auto* forward = app.add_subcommand("forward", "simulate Hankel data with noise");
  add_phantom_flags(forward, phantom_flags);
  forward->add_option("--nu", fwd.nu, "order nu (integer or half-integer, >= -1/2)")->capture_default_str();
  forward->add_option("--r", fwd.r, "band limit r")->capture_default_str();
  forward->add_option("--sigma", fwd.sigma, "support radius sigma")->capture_default_str();
  forward->add_option("--n", fwd.n_samples, "number of data samples on [0, r]")->capture_default_str();
  forward->add_option("--phantom-n", fwd.phantom_n, "phantom resolution")->capture_default_str();
  forward->add_option("--noise", fwd.noise_level, "relative noise level")->capture_default_str();
  forward->add_option("--seed", fwd.seed, "noise seed")->capture_default_str();
  forward->add_option("--out", out_path, "output data file")->required();
  forward->add_option("--sidecar", sidecar, "metadata JSON (default: <out>.meta.json)");
  add_output_format(forward, format);

  auto* reconstruct = app.add_subcommand("reconstruct", "reconstruct f from Hankel data");
  add_recon_flags(reconstruct, recon);
  reconstruct->add_option("--m", recon.m, "truncation index or 'auto'")->capture_default_str();
  reconstruct->add_option("--out", recon.out, "reconstruction output file")->required();
  reconstruct->add_option("--report", recon.report, "report JSON");
  reconstruct->add_option("--plot", recon.plot, "SVG plot of f_rec and f_naive");
  add_output_format(reconstruct, recon.format);

  auto* sweep = app.add_subcommand("sweep", "residual curve over m");
  add_recon_flags(sweep, recon);
  sweep->add_option("--out", recon.out, "residual curve CSV (m,residual,naive)")->required();

  auto* run_cmd = app.add_subcommand("run", "run an experiment described by a JSON config");
  run_cmd->add_option("config", config_path, "experiment config JSON")->required();

  auto* selftest = app.add_subcommand("selftest", "quick numerical self-checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    if (phantom->parsed()) return cmd_phantom(phantom_flags, sigma, n, out_path, format, out);
    if (forward->parsed()) return cmd_forward(fwd, phantom_flags, out_path, sidecar, format, out);
    if (reconstruct->parsed()) return cmd_reconstruct(recon, out);
    if (sweep->parsed()) return cmd_sweep(recon, out);
    if (run_cmd->parsed()) return cmd_run(config_path, out);
    if (selftest->parsed()) return cmd_selftest(out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitValidation;
}

}  // namespace hsr::cli
