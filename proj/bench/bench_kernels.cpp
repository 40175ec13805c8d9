// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include <random>

#include "spillover/connectedness.hpp"
#include "spillover/frequency.hpp"
#include "spillover/network.hpp"
#include "spillover/reference.hpp"
#include "spillover/tvpvar.hpp"

using namespace spillover;

namespace {

VarModel bench_model(int m) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  Eigen::MatrixXd b(m, m), l(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      b(i, j) = (i == j ? 0.3 : 0.0) + u(rng);
      l(i, j) = u(rng);
    }
  const Eigen::MatrixXd sigma = l * l.transpose() + Eigen::MatrixXd::Identity(m, m);
  return make_var({b}, sigma);
}

const TvpVarPath& bench_path() {
  static const TvpVarPath path = fit_tvp(simulate(bench_model(8), 160, 1), TvpConfig{});
  return path;
}

void BM_SpectralParallel(benchmark::State& state) {
  const auto model = bench_model(static_cast<int>(state.range(0)));
  const auto bands = default_bands();
  for (auto _ : state) benchmark::DoNotOptimize(spectral_gfevd(model, 12, bands, 1024));
}

void BM_SpectralReference(benchmark::State& state) {
  const auto model = bench_model(static_cast<int>(state.range(0)));
  const auto bands = default_bands();
  for (auto _ : state) benchmark::DoNotOptimize(reference::spectral_gfevd(model, 12, bands, 1024));
}

void BM_DynamicParallel(benchmark::State& state) {
  const auto bands = default_bands();
  for (auto _ : state) benchmark::DoNotOptimize(dynamic_spillovers(bench_path(), 12, bands, 1024));
}

void BM_DynamicReference(benchmark::State& state) {
  const auto bands = default_bands();
  for (auto _ : state) benchmark::DoNotOptimize(reference::dynamic_spillovers(bench_path(), 12, bands, 1024));
}

SpilloverNetwork bench_network(int m) { return build_network(spillover_summary(gfevd(bench_model(m), 12))); }

void BM_BetweennessParallel(benchmark::State& state) {
  const auto net = bench_network(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(betweenness_centrality(net));
}

void BM_BetweennessReference(benchmark::State& state) {
  const auto net = bench_network(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(reference::betweenness_centrality(net));
}

}  // namespace

BENCHMARK(BM_SpectralParallel)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SpectralReference)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DynamicParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DynamicReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BetweennessParallel)->Arg(8)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_BetweennessReference)->Arg(8)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
