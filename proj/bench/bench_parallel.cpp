// Serial reference against the OpenMP kernels on the same inputs.
#include <benchmark/benchmark.h>

#include "keypoly/limit_engine.hpp"
#include "keypoly/parallel.hpp"
#include "keypoly/suite.hpp"

using namespace keypoly;

namespace {

Execution mode_of(const benchmark::State& state) { return state.range(0) ? Execution::Parallel : Execution::Serial; }

void label(benchmark::State& state) {
  state.SetLabel(state.range(0) ? "parallel x" + std::to_string(parallel_threads()) : "serial");
}

void BM_membership(benchmark::State& state) {
  const unsigned p = static_cast<unsigned>(state.range(1));
  Scenario sc = artin_schreier_family(p, 8);
  for (auto _ : state) benchmark::DoNotOptimize(in_S_alpha(sc.family, sc.G, 12, mode_of(state)));
  label(state);
}

void BM_scenario(benchmark::State& state) {
  ScenarioOptions o;
  o.p = static_cast<unsigned>(state.range(1));
  o.depth = 6;
  o.mode = mode_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(scenario_report(o));
  label(state);
}

void BM_suite_group(benchmark::State& state) {
  SuiteOptions o;
  o.cases = 16;
  o.only = {"valuation"};
  o.mode = mode_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(run_suite(o));
  label(state);
}

}  // namespace

BENCHMARK(BM_membership)->ArgsProduct({{0, 1}, {2, 3, 5}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_scenario)->ArgsProduct({{0, 1}, {2, 3}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_suite_group)->Args({0})->Args({1})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
