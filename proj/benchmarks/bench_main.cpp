#include <benchmark/benchmark.h>

#include "hpasm/asm.hpp"
#include "hpasm/constants.hpp"
#include "hpasm/krylov.hpp"
#include "hpasm/lgl.hpp"
#include "hpasm/sipg.hpp"

namespace {

using namespace hpasm;

void BM_LglCompute(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compute_lgl(p));
}
BENCHMARK(BM_LglCompute)->RangeMultiplier(4)->Range(4, 256);

void BM_SipgAssembly(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const RectMesh mesh = uniform_mesh(2, 2, 2, 0.5, 0.5, {p, p});
  for (auto _ : state) benchmark::DoNotOptimize(assemble_sipg(mesh));
}
BENCHMARK(BM_SipgAssembly)->RangeMultiplier(2)->Range(4, 32)->Unit(benchmark::kMillisecond);

void BM_StackApply(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const RectMesh mesh = uniform_mesh(2, 2, 2, 0.5, 0.5, {p, p});
  const auto stack = compose_preconditioner(mesh);
  const Vector r = random_vector(stack->size());
  for (auto _ : state) benchmark::DoNotOptimize(stack->apply(r));
}
BENCHMARK(BM_StackApply)->RangeMultiplier(2)->Range(4, 32)->Unit(benchmark::kMillisecond);

void BM_Constant(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const ConstantQuery q{state.range(1) ? Inequality::Basic1 : Inequality::Basic0, p, p / 2, 1, 1, kDefaultAlpha};
  for (auto _ : state) benchmark::DoNotOptimize(compute_constant(q));
}
BENCHMARK(BM_Constant)->ArgsProduct({{16, 64, 128}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
