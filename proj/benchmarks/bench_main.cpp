#include <benchmark/benchmark.h>

#include "sqt/flatgeom.hpp"
#include "sqt/graph.hpp"
#include "sqt/tess.hpp"
#include "sqt/triangles.hpp"
#include "sqt/veech.hpp"
#include "surfaces.hpp"

using namespace sqt;
using namespace sqt::testing;

namespace {

const Origami& surface(int i) {
  static const Origami all[] = {T1(), L3(), W4()};
  return all[i];
}

void BM_SaddleConnections(benchmark::State& state) {
  const Origami& o = surface(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(saddle_connections_up_to(o, Rational(state.range(1) * state.range(1))));
}
BENCHMARK(BM_SaddleConnections)->Args({1, 10})->Args({1, 30})->Args({2, 30});

void BM_TrianglesUpTo(benchmark::State& state) {
  const Origami& o = surface(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(triangles_up_to(o, Rational(state.range(1))));
}
BENCHMARK(BM_TrianglesUpTo)->Args({0, 20})->Args({1, 20})->Args({2, 20})->Args({2, 50});

void BM_OracleOrbit(benchmark::State& state) {
  const Origami& o = surface(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(oracle_orbit(o));
}
BENCHMARK(BM_OracleOrbit)->DenseRange(0, 2);

void BM_AlgorithmA(benchmark::State& state) {
  const Origami& o = surface(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(algorithm_A(o));
}
BENCHMARK(BM_AlgorithmA)->DenseRange(0, 2);

void BM_AlgorithmB(benchmark::State& state) {
  const Origami& o = surface(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(algorithm_B(o));
}
BENCHMARK(BM_AlgorithmB)->DenseRange(0, 2);

void BM_FacesInRegion(benchmark::State& state) {
  const Origami& o = surface(static_cast<int>(state.range(0)));
  const Region r = Region::parse("-1,2,1/4,2");
  for (auto _ : state) benchmark::DoNotOptimize(faces_in_region(o, r));
}
BENCHMARK(BM_FacesInRegion)->DenseRange(0, 2);

void BM_GraphDistance(benchmark::State& state) {
  const Origami& o = surface(static_cast<int>(state.range(0)));
  const Slope a = Slope::of(Vec2{3, 7}), b = Slope::of(Vec2{-5, 2});
  for (auto _ : state) benchmark::DoNotOptimize(graph_distance(o, a, b));
}
BENCHMARK(BM_GraphDistance)->DenseRange(0, 2);

}  // namespace
BENCHMARK_MAIN();
