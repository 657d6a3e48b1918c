#include <benchmark/benchmark.h>

#include "baire/abelian.hpp"
#include "baire/catalog.hpp"
#include "baire/equations.hpp"
#include "baire/extend.hpp"
#include "baire/game.hpp"

using namespace baire;

static void BM_Catalog(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(catalog(static_cast<std::size_t>(state.range(0))).size());
}
BENCHMARK(BM_Catalog)->Arg(8)->Arg(16);

static void BM_Saturate(benchmark::State& state) {
  const auto t = witness_prefix(symmetric_group(4), {1, 2, 3, 5, 8, 13, 21});
  for (auto _ : state) benchmark::DoNotOptimize(saturate(t).derived);
}
BENCHMARK(BM_Saturate);

static void BM_CheckExtendable(benchmark::State& state) {
  const PartialTable t{{2, 2, 3}, {3, 3, 2}, {4, 4, 1}, {2, 4, 5}};
  for (auto _ : state) benchmark::DoNotOptimize(check_extendable(t).kind);
}
BENCHMARK(BM_CheckExtendable);

static void BM_Solve(benchmark::State& state) {
  EqSystem sys{{parse_word("x0^-1 * x1 * x0 * c5^-1"), parse_word("x1^3")}, {parse_word("x0")}, 2};
  const auto g = symmetric_group(4);
  for (auto _ : state) benchmark::DoNotOptimize(solve(sys, g));
}
BENCHMARK(BM_Solve);

static void BM_Encode(benchmark::State& state) {
  for (auto _ : state) {
    for (std::uint64_t n = 1; n <= 1000; ++n) benchmark::DoNotOptimize(encode(enumerate(n)));
  }
}
BENCHMARK(BM_Encode);

static void BM_Game(benchmark::State& state) {
  for (auto _ : state) {
    GameConfig cfg;
    cfg.schedule = {EmbedGoal{symmetric_group(3)}, InverseGoal{4}};
    auto eve = random_legal(1);
    auto odd = odd_scheduler();
    benchmark::DoNotOptimize(run(GameState(cfg), *eve, *odd, static_cast<std::size_t>(state.range(0))).step);
  }
}
BENCHMARK(BM_Game)->Arg(10)->Arg(20);
BENCHMARK_MAIN();
