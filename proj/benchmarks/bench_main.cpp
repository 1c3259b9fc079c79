#include <benchmark/benchmark.h>

#include "sp4tj/cosets.hpp"
#include "sp4tj/jacquet.hpp"

using namespace sp4tj;

static void BM_Tables(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  const auto f = Field::make(q);
  for (auto _ : state) {
    const IrrTable sl2 = sl2_irr_table(f);
    benchmark::DoNotOptimize(l_irr_table(f, sl2).size());
  }
}
BENCHMARK(BM_Tables)->Arg(3)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

static void BM_OrbitsLagrangians(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  const auto f = Field::make(q);
  const PointSpace space = PointSpace::isotropic(f, 2);
  const SubgroupModel spsi = subgroup_model("Spsi", f);
  for (auto _ : state) benchmark::DoNotOptimize(orbit_decompose(space, spsi).count());
}
BENCHMARK(BM_OrbitsLagrangians)->Arg(3)->Arg(5)->Arg(7)->Arg(11)->Unit(benchmark::kMillisecond);

static void BM_InducedProfile(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  const auto t = tables_for(q);
  const InducedCharacter ind(t, state.range(1) ? Parabolic::klingen : Parabolic::siegel);
  const Mat g = embed_beta(Mat(2, q, {1, 0, 1, q - 1})) * n_of(Mat(2, q, {1, 1, 1, 0}));
  for (auto _ : state) benchmark::DoNotOptimize(ind.compute_profile(g).size());
}
BENCHMARK(BM_InducedProfile)->Args({5, 0})->Args({5, 1})->Args({11, 0})->Args({11, 1});

static void BM_JacquetEngine(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  const auto t = tables_for(q);
  const Parabolic par = state.range(1) ? Parabolic::klingen : Parabolic::siegel;
  for (auto _ : state) {
    const JacquetEngine engine(t, par, PsiSpec::rank_one(*t->field, 1));
    benchmark::DoNotOptimize(engine.compute(0).dimension);
  }
}
BENCHMARK(BM_JacquetEngine)->Args({3, 0})->Args({3, 1})->Args({5, 0})->Args({5, 1})->Args({7, 1})->UseRealTime()->Unit(benchmark::kMillisecond);

static void BM_Decomposability(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  const auto f = Field::make(q);
  const Factorization pair = standard_factorization("Mpsi", f);
  const SubgroupModel h = conjugate(subgroup_model("P", f), sigma(1, q));
  for (auto _ : state) benchmark::DoNotOptimize(decomposability_check(h, pair).decomposable);
}
BENCHMARK(BM_Decomposability)->Arg(3)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
