#include <benchmark/benchmark.h>

#include "intrec/conditions.hpp"
#include "intrec/experiment.hpp"
#include "intrec/formulations.hpp"
#include "intrec/kernel_enum.hpp"
#include "intrec/linalg.hpp"
#include "intrec/milp.hpp"
#include "intrec/simplex.hpp"

using namespace intrec;

namespace {

RecoveryInstance binary_instance(std::size_t m, std::size_t s, Objective objective) {
  ExperimentSpec spec;
  spec.objective = objective;
  spec.rows = m;
  spec.cols = 2 * m;
  spec.seed = 1;
  return gen_instance(spec, s).instance;
}

void BM_LpRelaxation(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  auto inst = binary_instance(m, m / 2, Objective::L1);
  inst.x = ConstraintSet::uniform_box(2 * m, 0, 1, false);
  const auto model = build_p1(inst).model;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_lp(model));
  }
}
BENCHMARK(BM_LpRelaxation)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_BinaryP0(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto inst = binary_instance(m, m / 4, Objective::L0);
  const auto model = build_p0(inst).model;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_milp(model));
  }
}
BENCHMARK(BM_BinaryP0)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_KernelPoints(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_binary_matrix(n / 2, n, 5);
  const IntVector lo(n, Integer(-1));
  const IntVector hi(n, Integer(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel_points(a, lo, hi));
  }
}
BENCHMARK(BM_KernelPoints)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_GoodnessBinary(benchmark::State& state) {
  const auto a = random_binary_matrix(12, 24, 1);
  const auto s = static_cast<std::size_t>(state.range(0));
  const auto x = ConstraintSet::binary(24);
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_s_good_l0(a, s, x));
  }
}
BENCHMARK(BM_GoodnessBinary)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_Spark(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_binary_matrix(n / 2, n, 9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(spark(a));
  }
}
BENCHMARK(BM_Spark)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
