#include <benchmark/benchmark.h>

#include <random>

#include "octa/gallery.hpp"
#include "octa/iso_search.hpp"
#include "octa/snf.hpp"

using namespace octa;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, int n, Int mag) {
  std::uniform_int_distribution<Int> entry(-mag, mag);
  IntMatrix m(n, n);
  for (Int& v : m.a) v = entry(rng);
  return m;
}

void BM_SmithNormalForm(benchmark::State& state) {
  std::mt19937_64 rng(7);
  // Transform growth is steep in the dimension; keep entries small at 8x8.
  IntMatrix m = random_matrix(rng, static_cast<int>(state.range(0)),
                              state.range(0) > 5 ? 4 : 20);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->Arg(3)->Arg(5)->Arg(8);

void BM_SolveCongruence(benchmark::State& state) {
  std::mt19937_64 rng(11);
  IntMatrix a = random_matrix(rng, 6, 20);
  IntMatrix b(6, 1);
  for (Int& v : b.a) v = static_cast<Int>(rng() % 64);
  for (auto _ : state) benchmark::DoNotOptimize(solve_matrix_congruence(a, b, {64}));
}
BENCHMARK(BM_SolveCongruence);

void BM_HomEnumeration(benchmark::State& state) {
  Context ctx(2, 6);
  FpObject x = FpObject::from_exponents(ctx, {1, 5});
  for (auto _ : state) {
    HomSet hom(ctx, x, x);
    std::uint64_t acc = 0;
    for (std::uint64_t i = 0; i < hom.size(); ++i) acc += static_cast<std::uint64_t>(hom.at(i).mat.a[0]);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_HomEnumeration);

void BM_Cone(benchmark::State& state) {
  Context ctx(static_cast<Int>(state.range(0)), 6);
  StableMorphism f = canonical_form(EMorphism::make(
      ctx, FpObject::from_exponents(ctx, {3}), FpObject::from_exponents(ctx, {3}),
      [&] {
        IntMatrix m(1, 1);
        m.at(0, 0) = ctx.p;
        return m;
      }()));
  for (auto _ : state) benchmark::DoNotOptimize(cone(f));
}
BENCHMARK(BM_Cone)->Arg(2)->Arg(3);

void BM_IsDistinguished(benchmark::State& state) {
  PeriodicDiagram x = gen_X(3, static_cast<Int>(state.range(0)));
  Triangle t = triangle_of(restrict_diagram(x, 3));
  for (auto _ : state) benchmark::DoNotOptimize(is_distinguished(t));
}
BENCHMARK(BM_IsDistinguished)->Arg(2)->Arg(3);

void BM_WeakSquareCell(benchmark::State& state) {
  PeriodicDiagram xt = gen_Xtilde(3, static_cast<Int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(is_weak_square(xt.right[1][2], xt.up[1][2], xt.up[1][3], xt.right[2][2]));
}
BENCHMARK(BM_WeakSquareCell)->Arg(2)->Arg(3);

void BM_OctahedronCheck(benchmark::State& state) {
  PeriodicDiagram x = gen_X(3, static_cast<Int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(is_verdier_octahedron(x));
}
BENCHMARK(BM_OctahedronCheck)->Arg(2)->Arg(3);

void BM_RestrictDiagram(benchmark::State& state) {
  PeriodicDiagram x = gen_X(4, 2);
  for (auto _ : state) benchmark::DoNotOptimize(restrict_diagram(x, 2));
}
BENCHMARK(BM_RestrictDiagram);

void BM_IsoSearchNoniso(benchmark::State& state) {
  PeriodicDiagram x = gen_X(3, 2);
  PeriodicDiagram xt = gen_Xtilde(3, 2);
  IsoSearchOptions opts;
  opts.mode = SearchMode::All;
  opts.store_witnesses = false;
  for (auto _ : state) benchmark::DoNotOptimize(find_periodic_isos(x, xt, opts));
}
BENCHMARK(BM_IsoSearchNoniso);

void BM_IsoSearchSelfFirst(benchmark::State& state) {
  PeriodicDiagram x = gen_X(3, 2);
  IsoSearchOptions opts;
  opts.mode = SearchMode::First;
  for (auto _ : state) benchmark::DoNotOptimize(find_periodic_isos(x, x, opts));
}
BENCHMARK(BM_IsoSearchSelfFirst);

}  // namespace

BENCHMARK_MAIN();
