#include <benchmark/benchmark.h>

#include "kiselman/enumeration.hpp"

namespace {

void BM_Enumerate(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    auto list = kiselman::enumerate(n);
    benchmark::DoNotOptimize(list.elements.data());
  }
}
BENCHMARK(BM_Enumerate)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_CongruenceOracle(benchmark::State& state) {
  const auto len = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    auto p = kiselman::congruence_oracle(3, len, 2);
    benchmark::DoNotOptimize(p.class_of.data());
  }
}
BENCHMARK(BM_CongruenceOracle)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace
