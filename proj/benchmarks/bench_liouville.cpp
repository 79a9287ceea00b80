#include <benchmark/benchmark.h>

#include <complex>
#include <cstdint>
#include <vector>

#include "liouville/blocks.hpp"
#include "liouville/bootstrap.hpp"
#include "liouville/gmc.hpp"
#include "liouville/special.hpp"
#include "liouville/virasoro.hpp"

namespace {

using liouville::cplx;

void BM_Upsilon(benchmark::State& state) {
  const liouville::LiouvilleParams params(1.0, 1.0);
  const cplx z(0.7 + 0.5 * static_cast<double>(state.range(0)), 0.4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(liouville::upsilon(z, params));
  }
}
BENCHMARK(BM_Upsilon)->DenseRange(0, 6, 3);

void BM_Dozz(benchmark::State& state) {
  const liouville::LiouvilleParams params(1.0, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(liouville::dozz(1.6, 1.4, cplx(1.25, 2.0), params));
  }
}
BENCHMARK(BM_Dozz);

// reduce_word memoizes per thread, so after the first iteration this measures
// the assembly of the matrix from cached words.
void BM_ShapovalovBuild(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  for (auto _ : state) {
    liouville::ShapovalovMatrix m(level);
    benchmark::DoNotOptimize(m.dim());
  }
}
BENCHMARK(BM_ShapovalovBuild)->DenseRange(2, 8, 2)->Unit(benchmark::kMicrosecond);

void BM_ShapovalovInverse(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  const liouville::LiouvilleParams params(1.0, 1.0);
  const double delta_p = params.Q() * params.Q() / 4.0 + 1.0;
  liouville::shapovalov_matrix(level);
  for (auto _ : state) {
    benchmark::DoNotOptimize(liouville::invert_shapovalov(level, delta_p, params.central_charge()));
  }
}
BENCHMARK(BM_ShapovalovInverse)->DenseRange(2, 8, 2)->Unit(benchmark::kMicrosecond);

void BM_BetaN(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  const auto method = state.range(1) == 0 ? liouville::BetaMethod::inverse
                                          : liouville::BetaMethod::solve;
  const liouville::LiouvilleParams params(1.0, 1.0);
  const auto block = liouville::BlockParams::from_alphas(1.6, 1.4, 1.6, 1.4, 1.0, params);
  liouville::shapovalov_matrix(level);
  for (auto _ : state) {
    benchmark::DoNotOptimize(liouville::beta_n(level, block, method));
  }
}
BENCHMARK(BM_BetaN)
    ->ArgsProduct({{2, 4, 6, 8}, {0, 1}})
    ->ArgNames({"level", "solve"})
    ->Unit(benchmark::kMicrosecond);

void BM_FourPointIntegrand(benchmark::State& state) {
  const liouville::LiouvilleParams params(1.0, 1.0);
  const liouville::Alphas alphas{1.6, 1.4, 1.6, 1.4};
  const int truncation = static_cast<int>(state.range(0));
  liouville::shapovalov_matrix(truncation);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        liouville::fourpoint_integrand(1.0, cplx(0.4, 0.0), alphas, params, truncation));
  }
}
BENCHMARK(BM_FourPointIntegrand)->DenseRange(4, 8, 2)->Unit(benchmark::kMicrosecond);

void BM_GffSample(benchmark::State& state) {
  liouville::GridConfig grid;
  grid.n_modes = static_cast<int>(state.range(0));
  grid.angular = 2 * grid.n_modes;
  std::uint64_t index = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(liouville::sample_gff(7, index++, grid));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_GffSample)->RangeMultiplier(2)->Range(16, 128)->Unit(benchmark::kMillisecond);

void BM_CorrelationSamples(benchmark::State& state) {
  const liouville::LiouvilleParams params(1.0, 1.0);
  const std::vector<liouville::Insertion> insertions{
      {cplx(0.5, 0.05), 2.4}, {cplx(-0.3, 0.4), 2.4}, {cplx(-0.2, -0.45), 2.4}};
  liouville::GmcConfig config;
  config.grid.n_modes = 32;
  config.grid.angular = 64;
  config.grid.dt = 1.0 / 32.0;
  config.grid.t_max = 4.0;
  config.n_samples = 64;
  config.batches = 8;
  config.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(liouville::correlation_mc(insertions, params, config));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(config.n_samples));
}
BENCHMARK(BM_CorrelationSamples)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
