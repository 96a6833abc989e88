#include <benchmark/benchmark.h>

#include "kiselman/stochastic.hpp"

namespace {

using namespace kiselman;

void BM_Simulate(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  SimulationOptions opt;
  opt.trials = 10'000;
  opt.seed = 1;
  opt.mode = static_cast<SimulationMode>(state.range(1));
  const ProbabilityVector p = ProbabilityVector::uniform(n);
  for (auto _ : state) {
    auto r = simulate(p, opt);
    benchmark::DoNotOptimize(r.mean);
  }
  state.SetItemsProcessed(state.iterations() * opt.trials);
  state.SetLabel(std::string(to_string(opt.mode)));
}
BENCHMARK(BM_Simulate)
    ->ArgsProduct({{2, 3, 4}, {static_cast<int>(SimulationMode::level_only),
                               static_cast<int>(SimulationMode::full)}})
    ->Unit(benchmark::kMillisecond);

void BM_ExactPmf(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const ProbabilityVector p = ProbabilityVector::uniform(n);
  for (auto _ : state) {
    auto pmf = exact_hitting_pmf(p);
    benchmark::DoNotOptimize(pmf.mass.data());
  }
}
BENCHMARK(BM_ExactPmf)->DenseRange(2, 6);

}  // namespace
