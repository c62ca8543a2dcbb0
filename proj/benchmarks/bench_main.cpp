#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "hsr/config.hpp"
#include "hsr/hankel.hpp"
#include "hsr/pswf.hpp"
#include "hsr/radon.hpp"
#include "hsr/reconstruct.hpp"

namespace {

using namespace hsr;

void BM_BuildBasis(benchmark::State& state) {
  const double c = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_usable_basis(c));
}
BENCHMARK(BM_BuildBasis)->Arg(10)->Arg(30)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_HankelForward(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto f = SampledFunction1D::from_function(UniformGrid(0.0, 1.0, 4096), [](double s) {
    return cdouble{s > 0.15 && s < 0.3 ? 1.0 : 0.0};
  });
  std::vector<double> ts(n);
  for (std::size_t k = 0; k < n; ++k) ts[k] = 10.0 * static_cast<double>(k) / (n - 1);
  for (auto _ : state) benchmark::DoNotOptimize(hankel_forward(HankelOrder(0), f, ts));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_HankelForward)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_Fbp2d(benchmark::State& state) {
  const auto grid_n = static_cast<std::size_t>(state.range(0));
  const auto sino = Sinogram2D::separated(UniformGrid(-1.0, 1.0, 513), 256, 0, [](double y) {
    return cdouble{std::abs(y) < 1.0 ? 2.0 * std::sqrt(1.0 - y * y) : 0.0};
  });
  for (auto _ : state) benchmark::DoNotOptimize(fbp2d(sino, grid_n));
}
BENCHMARK(BM_Fbp2d)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state) {
  ExperimentConfig cfg;
  cfg.nu = state.range(0) == 0 ? 0.0 : 0.5;
  const HankelDataset data = simulate(cfg);
  const ReconstructionContext ctx(data, UniformGrid(0.0, data.sigma, data.h.size()));
  for (auto _ : state) benchmark::DoNotOptimize(select_m(ctx, Method::pswf_cormack));
}
BENCHMARK(BM_Sweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
