#include <benchmark/benchmark.h>

#include <freecurve/combinatorics.hpp>
#include <freecurve/corpus.hpp>
#include <freecurve/jacobian.hpp>
#include <freecurve/locus.hpp>
#include <freecurve/report.hpp>

#include <map>
#include <string>

using namespace freecurve;

namespace {

const HomogeneousPolynomial& curve(const std::string& name) {
  static std::map<std::string, HomogeneousPolynomial> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, corpus_lookup(name).f).first;
  return it->second;
}

void BM_SyzygyRank(benchmark::State& state, const std::string& name, bool modular) {
  const JacobianContext ctx(curve(name));
  const RatMatrix m = ctx.syzygy_matrix(ctx.degree() - 2);
  for (auto _ : state) benchmark::DoNotOptimize(modular ? rank_certified(m) : rank(m));
}
BENCHMARK_CAPTURE(BM_SyzygyRank, p4_exact, std::string("p4_four_conics"), false);
BENCHMARK_CAPTURE(BM_SyzygyRank, p4_modular, std::string("p4_four_conics"), true);
BENCHMARK_CAPTURE(BM_SyzygyRank, pencil6_exact, std::string("pencil_four_points/6"), false);
BENCHMARK_CAPTURE(BM_SyzygyRank, pencil6_modular, std::string("pencil_four_points/6"), true);

void BM_TotalTjurina(benchmark::State& state, const std::string& name, LinalgMode mode) {
  const JacobianContext ctx(curve(name));
  for (auto _ : state) benchmark::DoNotOptimize(total_tjurina(ctx, mode));
}
BENCHMARK_CAPTURE(BM_TotalTjurina, celal, std::string("celal_three_conics"), LinalgMode::Exact)->UseRealTime();
BENCHMARK_CAPTURE(BM_TotalTjurina, p4_exact, std::string("p4_four_conics"), LinalgMode::Exact)->UseRealTime();
BENCHMARK_CAPTURE(BM_TotalTjurina, p4_modular, std::string("p4_four_conics"), LinalgMode::Modular)->UseRealTime();
BENCHMARK_CAPTURE(BM_TotalTjurina, ploski5, std::string("ploski/5"), LinalgMode::Exact)->UseRealTime();

void BM_Survey(benchmark::State& state, const std::string& name) {
  const auto arr = ConicArrangement::from_polynomials(corpus_lookup(name).components);
  for (auto _ : state) benchmark::DoNotOptimize(survey(arr));
}
BENCHMARK_CAPTURE(BM_Survey, p4, std::string("p4_four_conics"));
BENCHMARK_CAPTURE(BM_Survey, pencil6, std::string("pencil_four_points/6"));

void BM_Analyze(benchmark::State& state, const std::string& name) {
  const auto input = load_input("corpus:" + name);
  for (auto _ : state) benchmark::DoNotOptimize(analyze(input));
}
BENCHMARK_CAPTURE(BM_Analyze, celal, std::string("celal_three_conics"))->UseRealTime();
BENCHMARK_CAPTURE(BM_Analyze, p4, std::string("p4_four_conics"))->UseRealTime();

void BM_EnumerateNear(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_theorem_near(static_cast<std::size_t>(state.range(0))));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EnumerateNear)->RangeMultiplier(4)->Range(30, 1920)->Complexity(benchmark::oNSquared);

void BM_EnumerateIntervals(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_theorem_char(static_cast<std::size_t>(state.range(0))));
    benchmark::DoNotOptimize(enumerate_nearly_free_bound(static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_EnumerateIntervals)->Arg(20)->Arg(10000);

}  // namespace
BENCHMARK_MAIN();
