#include <benchmark/benchmark.h>

#include "generators.hpp"
#include "starloop/starloop.hpp"

using namespace starloop;

static void BM_SymEigen(benchmark::State& state) {
  gen::Rng rng(1);
  const auto m = gen::symmetric_matrix(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sym_eigen(m));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SymEigen)->RangeMultiplier(2)->Range(8, 256)->Complexity();

static void BM_FindStars(benchmark::State& state) {
  gen::Rng rng(2);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = gen::planted_star_graph(rng, n, 5, 1, false, 0.1).graph;
  for (auto _ : state) benchmark::DoNotOptimize(find_stars(g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FindStars)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

static void BM_Certify(benchmark::State& state) {
  gen::Rng rng(3);
  const auto g = gen::planted_star_graph(rng, static_cast<std::size_t>(state.range(0)), 4, 0, false).graph;
  for (auto _ : state) benchmark::DoNotOptimize(certify(g, MatrixKind::laplacian));
}
BENCHMARK(BM_Certify)->Arg(20)->Arg(40)->Arg(80);

static void BM_DeloopAndVerify(benchmark::State& state) {
  gen::Rng rng(4);
  const auto g = gen::looped_graph(rng, static_cast<std::size_t>(state.range(0)), 0.3);
  const auto mode = state.range(1) == 0 ? ScalingMode::adjacency_exact : ScalingMode::transition_exact;
  for (auto _ : state) {
    const auto r = deloop(g, 1, mode);
    benchmark::DoNotOptimize(verify_removal(g, r));
  }
}
BENCHMARK(BM_DeloopAndVerify)->ArgsProduct({{10, 25, 50}, {0, 1}});

BENCHMARK_MAIN();
