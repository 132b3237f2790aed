#include <benchmark/benchmark.h>

#include "opuc/neumann.hpp"
#include "opuc/opuc.hpp"

using namespace opuc;

namespace {

const WeightSpec& weight() {
  static const WeightSpec w = build_weight("trig:beta=0.5@norm");
  return w;
}

void BM_Moments(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(moments(weight(), n));
}

void BM_Levinson(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto c = moments(weight(), n);
  for (auto _ : state) benchmark::DoNotOptimize(szego_levinson(c, n).phi_star());
  state.SetComplexityN(n);
}

void BM_DenseOracle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto c = moments(weight(), n);
  for (auto _ : state) benchmark::DoNotOptimize(dense_oracle(c, n));
  state.SetComplexityN(n);
}

// alpha = 2 pi makes 1 - alpha w = -cos/2, factor about 1/2 per step
void BM_NeumannSimpleAlpha(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SolverParams p;
  p.alpha = kTwoPi;
  p.tol = 1e-12;
  auto ctx = std::make_shared<const OperatorContext>(weight(), n, n);
  for (auto _ : state) benchmark::DoNotOptimize(neumann_solve(ctx, p, SolverMode::simple_alpha));
  state.SetComplexityN(n);
}

}  // namespace

BENCHMARK(BM_Moments)->Arg(16)->Arg(64)->Arg(256);
BENCHMARK(BM_Levinson)->Arg(16)->Arg(64)->Arg(256)->Complexity(benchmark::oNSquared);
BENCHMARK(BM_DenseOracle)->Arg(16)->Arg(64)->Arg(256)->Complexity(benchmark::oNCubed);
BENCHMARK(BM_NeumannSimpleAlpha)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
