#include <benchmark/benchmark.h>

#include <random>

#include "kiselman/core.hpp"
#include "kiselman/level_metric.hpp"

namespace {

using namespace kiselman;

std::vector<Word> random_words(unsigned n, unsigned len, std::size_t count) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<unsigned> letter(1, n);
  std::vector<Word> out;
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<Letter> w(len);
    for (auto& c : w) c = static_cast<Letter>(letter(rng));
    out.emplace_back(n, std::move(w));
  }
  return out;
}

void BM_Reduce(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const auto len = static_cast<unsigned>(state.range(1));
  const auto words = random_words(n, len, 256);
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(reduce(words[k++ % words.size()]));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Reduce)->ArgsProduct({{3, 4, 6}, {8, 32, 128}});

void BM_MultiplyByGenerator(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  std::vector<Element> xs;
  for (const Word& w : random_words(n, 12, 256)) xs.push_back(reduce(w));
  std::size_t k = 0;
  for (auto _ : state) {
    const Element& x = xs[k % xs.size()];
    benchmark::DoNotOptimize(multiply(x, 1 + static_cast<unsigned>(k % n)));
    ++k;
  }
}
BENCHMARK(BM_MultiplyByGenerator)->Arg(3)->Arg(4)->Arg(6);

void BM_LevelByDefinition(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  std::vector<Element> xs;
  for (const Word& w : random_words(n, 12, 256)) xs.push_back(reduce(w));
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(level_by_definition(xs[k++ % xs.size()]));
  }
}
BENCHMARK(BM_LevelByDefinition)->Arg(3)->Arg(4)->Arg(6);

}  // namespace
