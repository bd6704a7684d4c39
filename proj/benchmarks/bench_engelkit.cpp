#include <benchmark/benchmark.h>

#include <map>
#include <random>

#include "engelkit/engel.hpp"
#include "engelkit/nq.hpp"
#include "engelkit/zlinalg.hpp"

using namespace engelkit;

namespace {

const Presentation& presentation(const std::string& name) {
  static std::map<std::string, Presentation> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, parse_presentation(QuotientRegistry::default_text(name))).first;
  return it->second;
}

std::vector<ExponentVector> random_elements(const PcPresentation& p, int count, int length) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> gen(0, static_cast<int>(p.size()) - 1);
  std::vector<ExponentVector> out;
  for (int k = 0; k < count; ++k) {
    std::vector<Letter> letters;
    for (int i = 0; i < length; ++i) letters.push_back({gen(rng), rng() % 2 ? 1 : -1});
    out.push_back(collect(p, GroupWord(std::move(letters))));
  }
  return out;
}

}  // namespace

// Products in the class-c free nilpotent group of rank 2.
static void BM_CollectFree2(benchmark::State& state) {
  const auto q = nilpotent_quotient(presentation("free2"), static_cast<int>(state.range(0)));
  const auto xs = random_elements(q.pcp, 64, 12);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pc_multiply(q.pcp, xs[i % 64], xs[(i + 17) % 64]));
    ++i;
  }
  state.counters["pc_gens"] = static_cast<double>(q.pcp.size());
}
BENCHMARK(BM_CollectFree2)->DenseRange(4, 8, 2);

static void BM_CollectH(benchmark::State& state) {
  static const auto q = nilpotent_quotient(presentation("H"), table_class_bound);
  const auto xs = random_elements(q.pcp, 64, 12);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pc_multiply(q.pcp, xs[i % 64], xs[(i + 17) % 64]));
    ++i;
  }
}
BENCHMARK(BM_CollectH);

static void BM_NqFree2(benchmark::State& state) {
  const int c = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(nilpotent_quotient(presentation("free2"), c));
}
BENCHMARK(BM_NqFree2)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

static void BM_NqEngel(benchmark::State& state) {
  const std::string names[] = {"M", "N"};
  const auto& p = presentation(names[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(nilpotent_quotient(p, table_class_bound));
  state.SetLabel(names[state.range(0)]);
}
BENCHMARK(BM_NqEngel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->Iterations(1);

static void BM_Snf(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> d(-20, 20);
  IntMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m.at(r, c) = d(rng);
  for (auto _ : state) benchmark::DoNotOptimize(snf(m));
}
BENCHMARK(BM_Snf)->RangeMultiplier(2)->Range(4, 32);

static void BM_Suite(benchmark::State& state) {
  const std::string names[] = {"co2", "lm2", "co4"};
  QuotientRegistry reg;
  const auto& name = names[state.range(0)];
  run_suite(name, reg);
  for (auto _ : state) benchmark::DoNotOptimize(run_suite(name, reg));
  state.SetLabel(name);
}
BENCHMARK(BM_Suite)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
