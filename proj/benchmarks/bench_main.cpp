#include <benchmark/benchmark.h>

#include "hardyz/contour.hpp"
#include "hardyz/geval.hpp"
#include "hardyz/specfun.hpp"
#include "hardyz/zeros.hpp"

using namespace hardyz;

static void BM_GAccel(benchmark::State& state) {
  const double t = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(g_accel(t));
}
BENCHMARK(BM_GAccel)->Arg(100)->Arg(1000)->Arg(10000)->Arg(200000);

static void BM_GAccelOffAxis(benchmark::State& state) {
  const Complex t(static_cast<double>(state.range(0)), 3.5);
  for (auto _ : state) benchmark::DoNotOptimize(g_auto(t));
}
BENCHMARK(BM_GAccelOffAxis)->Arg(1000)->Arg(200000);

static void BM_GDirect(benchmark::State& state) {
  GSeriesConfig cfg;
  cfg.target_abs_err = 1e-6;
  const double t = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(g_direct(t, cfg));
}
BENCHMARK(BM_GDirect)->Arg(100)->Arg(1000);

static void BM_GPower(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(g_power_small(Complex(3.0, 1.0)));
}
BENCHMARK(BM_GPower);

static void BM_ZRefEulerMaclaurin(benchmark::State& state) {
  const double t = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(z_ref(t, ZMethod::euler_maclaurin));
}
BENCHMARK(BM_ZRefEulerMaclaurin)->Arg(1000)->Arg(10000);

static void BM_ZRefRiemannSiegel(benchmark::State& state) {
  const double t = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(z_ref(t, ZMethod::riemann_siegel));
}
BENCHMARK(BM_ZRefRiemannSiegel)->Arg(1000)->Arg(10000);

static void BM_ArgTrack(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(arg_track(1000.0, 1010.0, kDefaultArgStep));
}
BENCHMARK(BM_ArgTrack)->Unit(benchmark::kMillisecond);

static void BM_UQuad(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(u_quad(100.0));
}
BENCHMARK(BM_UQuad)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
