#include <array>

#include <benchmark/benchmark.h>

#include <bellopt/inequality_catalog.hpp>
#include <bellopt/quantum_models.hpp>
#include <bellopt/relabel_group.hpp>
#include <bellopt/setups.hpp>
#include <bellopt/tensor_core.hpp>
#include <bellopt/trial_simulator.hpp>
#include <bellopt/variance_optimizer.hpp>

using namespace bellopt;

static void BM_Decompose(benchmark::State& state) {
  const OutcomeVector v = nv_distribution(NvParameters{});
  for (auto _ : state) benchmark::DoNotOptimize(decompose(v));
}
BENCHMARK(BM_Decompose);

static void BM_AnalyticCovariance(benchmark::State& state) {
  const OutcomeVector p = nv_distribution(NvParameters{});
  for (auto _ : state) benchmark::DoNotOptimize(analytic_covariance(p, SamplingScheme(1000)));
}
BENCHMARK(BM_AnalyticCovariance);

static void BM_OptimalVariant(benchmark::State& state) {
  const CovarianceMatrix sigma = analytic_covariance(nv_distribution(NvParameters{}), SamplingScheme(1000));
  const BellInequality ch = catalog("CH");
  for (auto _ : state) benchmark::DoNotOptimize(optimal_variant(ch, sigma));
}
BENCHMARK(BM_OptimalVariant);

static void BM_SpdcDistribution(benchmark::State& state) {
  SpdcParameters params;
  params.mu = 5e-4;
  params.cutoff = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(spdc_distribution(params));
}
BENCHMARK(BM_SpdcDistribution)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

// one ensemble of 1000 runs; trials per run from the argument
static void BM_Ensemble(benchmark::State& state) {
  const OutcomeVector p = nv_distribution(NvParameters{});
  const std::array<BellInequality, 2> betas = {catalog("CHSH"), catalog("CH")};
  const SamplingScheme scheme(state.range(0), Allocation::uniform_random);
  for (auto _ : state) benchmark::DoNotOptimize(run_ensemble(p, betas, scheme, 1000, 7));
  state.SetItemsProcessed(state.iterations() * 1000 * state.range(0));
}
BENCHMARK(BM_Ensemble)->Arg(245)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_EnumerateGroup(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_group());
}
BENCHMARK(BM_EnumerateGroup);

static void BM_CommutantDimension(benchmark::State& state) {
  const std::vector<Relabeling> g = enumerate_group();
  for (auto _ : state) benchmark::DoNotOptimize(commutant_dimension(g));
}
BENCHMARK(BM_CommutantDimension)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
