#include <benchmark/benchmark.h>

#include "twistzeta/corpus.hpp"
#include "twistzeta/zeta.hpp"

using namespace tz;

namespace {

const std::vector<std::string>& names() {
  static const std::vector<std::string> n = corpus_names();
  return n;
}

TwistSetup setup(int i) {
  auto e = corpus_entry(names()[i]);
  return make_setup(e.G, e.N, e.p);
}

void BM_CyclotomicMul(benchmark::State& st) {
  Cyclotomic a = Cyclotomic::zeta(24, 5) + Cyclotomic(Rational(1, 3));
  Cyclotomic b = Cyclotomic::zeta(24, 7) - Cyclotomic::zeta(24, 1);
  for (auto _ : st) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_CyclotomicMul);

// uncached: builds a fresh copy of the group each time
void BM_CharacterTable(benchmark::State& st) {
  auto e = corpus_entry(names()[st.range(0)]);
  st.SetLabel(names()[st.range(0)]);
  for (auto _ : st) {
    auto G = group_from_table([&] {
      std::vector<std::vector<int>> t(e.G->order(), std::vector<int>(e.G->order()));
      for (int a = 0; a < e.G->order(); ++a)
        for (int b = 0; b < e.G->order(); ++b) t[a][b] = e.G->mul(a, b);
      return t;
    }());
    benchmark::DoNotOptimize(character_table(whole_group(G)));
  }
}
BENCHMARK(BM_CharacterTable)->DenseRange(0, 12)->Unit(benchmark::kMillisecond);

void BM_ClassInvariants(benchmark::State& st) {
  auto S = setup(static_cast<int>(st.range(0)));
  st.SetLabel(names()[st.range(0)]);
  auto cl = twist_classes(S.N, S.linG);
  for (auto _ : st)
    for (const auto& tc : cl) benchmark::DoNotOptimize(class_invariants(S, tc));
}
BENCHMARK(BM_ClassInvariants)->DenseRange(0, 12)->Unit(benchmark::kMillisecond);

void BM_AssembleTwistZeta(benchmark::State& st) {
  auto S = setup(static_cast<int>(st.range(0)));
  st.SetLabel(names()[st.range(0)]);
  for (auto _ : st) benchmark::DoNotOptimize(assemble_twist_zeta(S));
}
BENCHMARK(BM_AssembleTwistZeta)->DenseRange(0, 12)->Unit(benchmark::kMillisecond);

void BM_BruteTwistZeta(benchmark::State& st) {
  auto S = setup(static_cast<int>(st.range(0)));
  st.SetLabel(names()[st.range(0)]);
  for (auto _ : st) benchmark::DoNotOptimize(brute_twist_zeta(S.all, S.linG));
}
BENCHMARK(BM_BruteTwistZeta)->DenseRange(0, 12)->Unit(benchmark::kMillisecond);

void BM_H2Certificate(benchmark::State& st) {
  auto e = corpus_entry("heis27_self");
  auto Q = e.G;
  int n = Q->order();
  Cocycle2 a{Q, std::vector<std::vector<Cyclotomic>>(n, std::vector<Cyclotomic>(n, Cyclotomic(1L)))};
  h2_basis(Q);
  for (auto _ : st) benchmark::DoNotOptimize(h2_certificate(a));
}
BENCHMARK(BM_H2Certificate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
