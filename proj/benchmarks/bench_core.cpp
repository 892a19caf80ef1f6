#include <benchmark/benchmark.h>

#include <random>

#include "amv/amcycles.hpp"
#include "amv/dp2.hpp"
#include "amv/signlemma.hpp"

namespace {

using namespace amv;

void BM_HypothesisCheck(benchmark::State& state) {
  const auto& model = signlemma::SignModel::standard();
  std::mt19937 rng(7);
  std::vector<std::uint32_t> inputs(4096);
  for (auto& x : inputs) x = rng() & signlemma::kMask;
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.hypothesis(inputs[k++ & 4095]));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_HypothesisCheck);

void BM_Canonicalize(benchmark::State& state) {
  std::mt19937 rng(11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(signlemma::canonicalize(signlemma::SignAssignment(rng())));
  }
}
BENCHMARK(BM_Canonicalize)->Unit(benchmark::kMicrosecond);

void BM_EnumerateLines(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(dp2::enumerate_lines(lattices::dp2_picard()));
}
BENCHMARK(BM_EnumerateLines)->Unit(benchmark::kMillisecond);

void BM_EnumerateConicBundles(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(dp2::enumerate_conic_bundles(lattices::dp2_picard()));
}
BENCHMARK(BM_EnumerateConicBundles)->Unit(benchmark::kMillisecond);

void BM_ReducedScan(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(signlemma::verify_lemma({signlemma::Strategy::Reduced, 1, std::nullopt}));
  }
}
BENCHMARK(BM_ReducedScan)->Unit(benchmark::kMillisecond);

void BM_PropagationSearch(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(signlemma::verify_lemma({signlemma::Strategy::Propagation, 1, std::nullopt}));
  }
}
BENCHMARK(BM_PropagationSearch)->Unit(benchmark::kMillisecond);

void BM_SolveTorsionSystem(benchmark::State& state) {
  const auto sys = amcycles::build_am_relation_system();
  for (auto _ : state) benchmark::DoNotOptimize(amcycles::solve_gf2(sys));
}
BENCHMARK(BM_SolveTorsionSystem)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
