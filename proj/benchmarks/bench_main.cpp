#include <benchmark/benchmark.h>

#include "qprotect/schemes.hpp"
#include "qprotect/states.hpp"

using namespace qprotect;

namespace {

void BM_ClosedFormPlans(benchmark::State& state) {
  const auto s = from_lambda(0.75);
  const auto ch = make_depolarizing(0.5);
  for (auto _ : state) {
    for (SchemeKind k : kAllSchemes) benchmark::DoNotOptimize(best_plan(s, ch, k).fidelity);
  }
}
BENCHMARK(BM_ClosedFormPlans);

void BM_EvaluateScheme(benchmark::State& state) {
  const auto s = from_lambda(0.75);
  const auto ch = make_amplitude_damping(0.3);
  const auto plan = optimal_plan_ind_col(s, ch);
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_scheme(s, ch, plan.pre_op, plan.post_op, SchemeKind::IndCol));
  }
}
BENCHMARK(BM_EvaluateScheme);

void BM_MaximizeIndInd(benchmark::State& state) {
  const auto s = from_lambda(0.7);
  const auto ch = random_cptp(3, 2);
  OptimizerConfig cfg;
  cfg.coarse_grid_points_per_angle = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(maximize_ind_ind(s, ch, cfg).fidelity);
}
BENCHMARK(BM_MaximizeIndInd)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_MaximizeIndCol(benchmark::State& state) {
  const auto s = from_lambda(0.7);
  const auto ch = random_cptp(3, 4);
  OptimizerConfig cfg;
  cfg.coarse_grid_points_per_angle = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(maximize_ind_col(s, ch, cfg).fidelity);
}
BENCHMARK(BM_MaximizeIndCol)->Arg(6)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);

// Full-register evaluation cost grows as 4^n.
void BM_RegisterEvaluation(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto joint = random_state(n, 1);
  const auto s = schmidt_decompose(joint, 1);
  const auto ch = make_dephasing(0.4);
  const auto ops = lift_to_register(optimal_plan_col_col(s, ch), s);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_on_register(joint, s, ch, ops));
}
BENCHMARK(BM_RegisterEvaluation)->DenseRange(2, 8, 2);

void BM_SchmidtDecompose(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto joint = random_state(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(schmidt_decompose(joint, n / 2 + 1).lambda0);
}
BENCHMARK(BM_SchmidtDecompose)->DenseRange(2, 10, 4);

}  // namespace

BENCHMARK_MAIN();
