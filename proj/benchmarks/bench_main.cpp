#include <benchmark/benchmark.h>

#include <random>

#include "rumin/current.hpp"
#include "rumin/rumin_complex.hpp"
#include "rumin/slicing.hpp"
#include "support/chains.hpp"

using namespace rumin;

static void BM_DcClass(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  RuminComplex rc{HeisParams(n)};
  std::mt19937_64 rng(7);
  std::vector<RuminClass> classes;
  for (int i = 0; i < 16; ++i) classes.push_back(rc.random_class(k, rng));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(rc.d_c(classes[i++ % classes.size()]));
}
BENCHMARK(BM_DcClass)->Args({1, 0})->Args({1, 1})->Args({1, 2})->Args({2, 1})->Args({2, 2})->Args({2, 3});

static void BM_ClipCube(benchmark::State& state) {
  auto cube = rumin::testing::unit_cube();
  HalfSpace half{{Rational(1), Rational(1), Rational(0)}, Rational(2, 3), false};
  for (auto _ : state) benchmark::DoNotOptimize(restrict_to_set(cube, half));
}
BENCHMARK(BM_ClipCube);

static void BM_SliceCube(benchmark::State& state) {
  auto cube = rumin::testing::unit_cube();
  AffineFunction f(cube.params(), {Rational(1), Rational(1), Rational(0)}, Rational(0));
  SliceOptions opt;
  opt.battery = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(slice_plus(cube, f, Rational(2, 3), opt));
}
BENCHMARK(BM_SliceCube)->Arg(0)->Arg(20);

static void BM_SliceDirectSquare(benchmark::State& state) {
  auto sq = rumin::testing::horizontal_square();
  AffineFunction f(sq.params(), {Rational(1), Rational(0), Rational(0), Rational(0), Rational(0)}, Rational(0));
  for (auto _ : state) benchmark::DoNotOptimize(slice_direct(sq, f, Rational(1, 3), Side::Plus));
}
BENCHMARK(BM_SliceDirectSquare);

static void BM_CoareaCube(benchmark::State& state) {
  auto cube = rumin::testing::unit_cube();
  AffineFunction f(cube.params(), {Rational(1), Rational(0), Rational(0)}, Rational(0));
  const int grid = static_cast<int>(state.range(0));
  const unsigned threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(coarea_sweep(cube, f, Rational(0), Rational(1), grid, threads));
}
BENCHMARK(BM_CoareaCube)->Args({32, 1})->Args({32, 4})->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
