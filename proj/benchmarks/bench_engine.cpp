#include <benchmark/benchmark.h>

#include <random>

#include "lyutab/complex.hpp"
#include "lyutab/corpus.hpp"
#include "lyutab/lyubeznik.hpp"
#include "lyutab/matrix.hpp"
#include "lyutab/sqmod.hpp"

using namespace lyutab;

namespace {

Subset S(std::initializer_list<int> vs) { return from_vertices(std::vector<int>(vs), 24); }

SquarefreeIdeal nine_vars() {
  return intersect_primes(9, {S({1, 2}), S({3, 4}), S({5, 6}), S({7, 8}), S({9, 1}), S({9, 2}), S({9, 3}),
                              S({9, 4}), S({9, 5}), S({9, 6}), S({9, 7}), S({9, 8})});
}

FieldSpec field_for(std::int64_t characteristic) {
  return characteristic == 0 ? FieldSpec::rationals() : FieldSpec::prime(static_cast<std::uint64_t>(characteristic));
}

void BM_ResolutionNineVars(benchmark::State& state) {
  const RationalField q;
  const auto module = quotient_module<RationalField>(nine_vars());
  for (auto _ : state) benchmark::DoNotOptimize(minimal_free_resolution(q, module));
}
BENCHMARK(BM_ResolutionNineVars)->Unit(benchmark::kMillisecond);

void BM_TableNineVars(benchmark::State& state) {
  const auto field = field_for(state.range(0));
  const auto ideal = nine_vars();
  for (auto _ : state) benchmark::DoNotOptimize(lyubeznik_table(ideal, field));
}
BENCHMARK(BM_TableNineVars)->Arg(0)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_ClassifyCorpus(benchmark::State& state) {
  const auto corpus = generate_corpus({CorpusFamily::kRandom, static_cast<int>(state.range(0)), 20, 0.3}, 5);
  for (auto _ : state) {
    for (const auto& e : corpus) {
      benchmark::DoNotOptimize(build_report(analyze(stanley_reisner_ideal(e.complex), FieldSpec::rationals())));
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(corpus.size()));
}
BENCHMARK(BM_ClassifyCorpus)->Arg(5)->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);

template <class K>
void BM_RankKernel(benchmark::State& state, const K& field) {
  const auto size = static_cast<std::size_t>(state.range(0));
  std::mt19937 rng(9);
  Matrix<K> m(size, size);
  for (std::size_t r = 0; r < size; ++r) {
    for (std::size_t c = 0; c < size; ++c) m(r, c) = field.from_int(static_cast<long long>(rng() % 7) - 3);
  }
  for (auto _ : state) benchmark::DoNotOptimize(rank_kernel(field, m));
}
BENCHMARK_CAPTURE(BM_RankKernel, rationals, RationalField{})->Arg(16)->Arg(48);
BENCHMARK_CAPTURE(BM_RankKernel, f2, PrimeField(2))->Arg(16)->Arg(48);

}  // namespace
BENCHMARK_MAIN();
