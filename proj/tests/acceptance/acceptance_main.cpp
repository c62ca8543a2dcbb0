// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "hsr/config.hpp"
#include "hsr/hankel.hpp"
#include "hsr/pswf.hpp"
#include "hsr/radon.hpp"
#include "hsr/reconstruct.hpp"
#include "../support/longdouble_quadrature.hpp"

using namespace hsr;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "[x] ") + what;
    pass = pass && ok;
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// Every auto-m run made by the suite, for the baseline-dominance check.
struct RunRecord {
  std::string label;
  double err_rec;
  double err_naive;
};
std::vector<RunRecord> g_runs;

ReconstructionReport run(const std::string& label, double nu, const PhantomSpec& phantom,
                         double noise, std::uint64_t seed, double* secs = nullptr) {
  ExperimentConfig cfg;
  cfg.nu = nu;
  cfg.phantom = phantom;
  cfg.noise_level = noise;
  cfg.seed = seed;
  const auto t0 = Clock::now();
  ExperimentResult res = run_experiment(cfg);
  if (secs) *secs = seconds_since(t0);
  g_runs.push_back({label, res.report.err_rec, res.report.err_naive});
  return res.report;
}

struct StepStats {
  double gap_min;
  double ring_max;
  bool resolved() const { return gap_min <= 0.35 && ring_max >= 0.6; }
};

StepStats step_stats(const SampledFunction1D& f) {
  StepStats st{1e300, -1e300};
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double s = f.grid().node(k);
    if (s >= 0.35 && s <= 0.45) st.gap_min = std::min(st.gap_min, f[k].real());
    if (s >= 0.55 && s <= 0.7) st.ring_max = std::max(st.ring_max, f[k].real());
  }
  return st;
}

double rel_l2(const std::vector<cdouble>& a, const std::vector<cdouble>& b,
              const std::vector<double>& s, double lo, double hi) {
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] < lo || s[k] > hi) continue;
    num += std::norm(a[k] - b[k]);
    den += std::norm(b[k]);
  }
  return std::sqrt(num / den);
}

Outcome criterion1() {
  Outcome o;
  const auto t0 = Clock::now();
  const PSWFBasis b = build_basis(10.0, 20);
  const auto rule = testing::gauss_legendre_long(160);

  double gram_err = 0.0;
  std::vector<std::vector<long double>> psi(21, std::vector<long double>(rule.nodes.size()));
  for (std::size_t j = 0; j <= 20; ++j)
    for (std::size_t k = 0; k < rule.nodes.size(); ++k)
      psi[j][k] = testing::psi_long(b, j, rule.nodes[k]);
  for (std::size_t i = 0; i <= 20; ++i)
    for (std::size_t j = 0; j <= 20; ++j) {
      long double g = 0.0L;
      for (std::size_t k = 0; k < rule.nodes.size(); ++k) g += rule.weights[k] * psi[i][k] * psi[j][k];
      gram_err = std::max(gram_err, static_cast<double>(std::fabs(g - (i == j ? 1.0L : 0.0L))));
    }

  double eig_err = 0.0, phase_err = 0.0;
  bool decreasing = true;
  for (std::size_t j = 0; j <= 20; ++j) {
    eig_err = std::max(eig_err, testing::eigen_relation(b, j, rule).relative_residual);
    const std::complex<double> ij = std::pow(std::complex<double>(0.0, 1.0), static_cast<int>(j));
    phase_err = std::max(phase_err, std::abs(b.mu[j] / std::abs(b.mu[j]) - ij));
    if (j > 0 && !(std::abs(b.mu[j]) < std::abs(b.mu[j - 1]))) decreasing = false;
  }
  const double secs = seconds_since(t0);
  o.check(gram_err <= 1e-9, "|G-I|max " + fmt(gram_err));
  o.check(eig_err <= 1e-6, "eigen residual " + fmt(eig_err));
  o.check(decreasing, "|mu_j| strictly decreasing");
  o.check(phase_err <= 1e-8, "phase error " + fmt(phase_err));
  o.check(secs <= 5.0, "runtime " + fmt(secs) + " s");
  return o;
}

double profile_error(const RadialProfile& got, const std::function<double(double)>& want,
                     double lo, double hi) {
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < got.s.size(); ++k) {
    const double s = got.s[k];
    if (s < lo || s > hi) continue;
    num += std::norm(got.values[k] - want(s));
    den += want(s) * want(s);
  }
  return std::sqrt(num / den);
}

Outcome criterion2() {
  Outcome o;
  const auto t0 = Clock::now();
  const UniformGrid t_grid(1e-3, 1.0, 2000);
  const auto ts = t_grid.nodes();
  const UniformGrid out(0.05, 0.9, 171);
  double worst2 = 0.0, worst3 = 0.0;
  for (int n = 0; n <= 2; ++n) {
    auto v = [n](double s) { return s > 1.0 ? 0.0 : std::pow(s, n) * std::pow(1.0 - s * s, 3); };
    const RadialFunction vf = [&](double s) { return cdouble(v(s)); };
    const RadialProfile w2 = cormack2d_forward(n, vf, ts);
    worst2 = std::max(worst2, profile_error(cormack2d_invert(n, w2, out), v, 0.05, 0.9));
    const RadialProfile w3 = cormack3d_forward(n, vf, ts);
    worst3 = std::max(worst3, profile_error(cormack3d_invert(n, w3, out), v, 0.05, 0.9));
  }
  const UniformGrid inner(0.05, 0.95, 181);
  auto max_dev = [](const RadialProfile& p) {
    double d = 0.0;
    for (const auto& x : p.values) d = std::max(d, std::abs(x - 1.0));
    return d;
  };
  const double disk = max_dev(cormack2d_invert(
      0, [](double t) { return cdouble(t < 1.0 ? 2.0 * std::sqrt(1.0 - t * t) : 0.0); }, inner));
  const double ball = max_dev(cormack3d_invert(
      0, [](double t) { return cdouble(t < 1.0 ? std::numbers::pi * (1.0 - t * t) : 0.0); }, inner));
  const double secs = seconds_since(t0);
  o.check(worst2 <= 1e-2, "2D round trip " + fmt(worst2));
  o.check(worst3 <= 1e-2, "3D round trip " + fmt(worst3));
  o.check(disk <= 5e-3, "disk " + fmt(disk));
  o.check(ball <= 5e-3, "ball " + fmt(ball));
  o.check(secs <= 10.0, "runtime " + fmt(secs) + " s");
  return o;
}

Outcome criterion3() {
  Outcome o;
  ExperimentConfig cfg;
  const HankelDataset data = simulate(cfg);
  const ReconstructionContext ctx(data, UniformGrid(0.0, 1.0, 256));
  const std::size_t m = select_m(ctx, Method::pswf_cormack).m_star;
  const SampledFunction1D a = ctx.reconstruct_theorem(m);
  const SampledFunction1D b = ctx.reconstruct_fbp(m);
  const auto s = a.grid().nodes();
  const double err = rel_l2({b.values().begin(), b.values().end()},
                            {a.values().begin(), a.values().end()}, s, 0.05, 0.9);
  o.check(err <= 5e-2, "m = " + std::to_string(m) + ", theorem vs FBP " + fmt(err));
  return o;
}

Outcome criterion4() {
  Outcome o;
  for (double nu : {0.0, 0.5}) {
    double secs = 0.0;
    const auto rep = run("c4 nu=" + fmt(nu), nu, PhantomSpec::two_step(), 0.0, 1, &secs);
    const StepStats p = step_stats(rep.f_rec), q = step_stats(rep.f_naive);
    const std::string tag = "nu=" + fmt(nu) + ": ";
    o.check(p.resolved(), tag + "pswf gap " + fmt(p.gap_min) + " ring " + fmt(p.ring_max));
    o.check(!q.resolved(), tag + "naive gap " + fmt(q.gap_min) + " ring " + fmt(q.ring_max));
    o.check(secs <= 60.0, tag + "runtime " + fmt(secs) + " s");
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  struct Case {
    double nu, resolve_noise, heavy_noise;
  };
  for (const Case c : {Case{0.0, 0.10, 0.35}, Case{0.5, 0.05, 0.10}}) {
    int resolved = 0;
    double lo_ratio = 1.0, hi_ratio = 1.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto a = run("c5 nu=" + fmt(c.nu), c.nu, PhantomSpec::two_step(), c.resolve_noise, seed);
      if (step_stats(a.f_rec).resolved()) ++resolved;
      const auto b = run("c5 heavy nu=" + fmt(c.nu), c.nu, PhantomSpec::two_step(), c.heavy_noise, seed);
      lo_ratio = std::min(lo_ratio, b.err_rec / b.err_naive);
      hi_ratio = std::max(hi_ratio, b.err_rec / b.err_naive);
    }
    const std::string tag = "nu=" + fmt(c.nu) + ": ";
    o.check(resolved >= 4, tag + std::to_string(resolved) + "/5 resolved at " + fmt(100 * c.resolve_noise) + "%");
    o.check(lo_ratio >= 0.9 && hi_ratio <= 1.1, tag + "residual/naive at " + fmt(100 * c.heavy_noise) +
                                                  "% in [" + fmt(lo_ratio) + ", " + fmt(hi_ratio) + "]");
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  struct Case {
    double nu, noise, omega;
  };
  for (const Case c : {Case{0.0, 0.0, 14.47}, Case{0.0, 0.2, 11.32}, Case{0.5, 0.0, 13.33}}) {
    const auto rep = run("c6", c.nu, PhantomSpec::harmonic(c.omega), c.noise, 1);
    auto g = [w = c.omega](double s) { return std::sin(w * s); };
    const double cp = correlation(rep.f_rec, g), cn = correlation(rep.f_naive, g);
    const std::string tag = "nu=" + fmt(c.nu) + " noise=" + fmt(c.noise) + " omega=" + fmt(c.omega) + ": ";
    o.check(cp >= 0.9, tag + "pswf corr " + fmt(cp));
    if (c.nu == 0.0) o.check(cn <= 0.5, tag + "naive corr " + fmt(cn));
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::vector<std::size_t> ms;
  for (double noise : {0.0, 0.2, 0.35})
    ms.push_back(*run("c7", 0.0, PhantomSpec::two_step(), noise, 1).m_selected);
  const bool monotone = ms[0] >= ms[1] && ms[1] >= ms[2];
  o.check(monotone, "m* = " + std::to_string(ms[0]) + ", " + std::to_string(ms[1]) + ", " +
                        std::to_string(ms[2]));
  double worst = -1e300;
  std::string where;
  for (const auto& r : g_runs) {
    if (r.err_rec - r.err_naive > worst) {
      worst = r.err_rec - r.err_naive;
      where = r.label;
    }
  }
  o.check(worst <= 1e-9, "max(residual - naive) over " + std::to_string(g_runs.size()) +
                             " runs = " + fmt(worst) + " (" + where + ")");
  return o;
}

Outcome criterion8() {
  Outcome o;
  {
    const UniformGrid sg(0.0, 1.0, 513);
    const auto f = SampledFunction1D::from_function(
        sg, [](double s) { return cdouble(std::sqrt(s) * std::pow(1.0 - s * s, 3)); });
    const HankelDataset d = make_dataset(HankelOrder(0), f, 200.0, 8192);
    const SampledFunction1D back = naive_inverse(d, UniformGrid(0.0, 1.0, 101));
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < back.size(); ++k) {
      const cdouble want = f.interpolate(back.grid().node(k));
      num += std::norm(back[k] - want);
      den += std::norm(want);
    }
    const double err = std::sqrt(num / den);
    o.check(err <= 2e-2, "self-inverse round trip " + fmt(err));
  }
  {
    const UniformGrid sg(0.0, 1.0, 20001);
    const SampledFunction1D one(sg, std::vector<cdouble>(sg.size(), 1.0));
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(1e-3, 10.0);
    std::vector<double> ts(100);
    for (auto& t : ts) t = u(rng);
    const auto h = hankel_forward(HankelOrder(1), one, ts);
    double worst = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const double t = ts[i];
      const double want = std::sqrt(2.0 / std::numbers::pi) * (1.0 - std::cos(t)) / t;
      worst = std::max(worst, std::abs(h[i] - want));
    }
    o.check(worst <= 1e-8, "half-integer closed form " + fmt(worst));
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  // Optional arguments select criteria by number.
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  struct Item {
    int id;
    const char* name;
    Outcome (*fn)();
  };
  const Item items[] = {
      {1, "PSWF validity", criterion1},
      {2, "Cormack oracle round trips", criterion2},
      {3, "route equivalence", criterion3},
      {4, "super-resolution, noiseless", criterion4},
      {5, "noise resilience ordering", criterion5},
      {6, "harmonic frequency extension", criterion6},
      {7, "residual-principle behaviour", criterion7},
      {8, "baseline sanity", criterion8},
  };
  int failed = 0, ran = 0;
  for (const auto& it : items) {
    if (!only.empty() && std::find(only.begin(), only.end(), it.id) == only.end()) continue;
    ++ran;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = it.fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s criterion %d (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", it.id, it.name,
                o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d of %d criteria passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
