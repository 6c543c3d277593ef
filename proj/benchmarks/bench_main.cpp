#include <benchmark/benchmark.h>

#include <cmath>

#include "rectinv/contour.hpp"
#include "rectinv/harness.hpp"
#include "rectinv/oracle.hpp"

using namespace rectinv;

static void BM_GaussLegendreFinite(benchmark::State& state) {
  QuadratureSpec q;
  q.panel_order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        integrate_finite([](double t) { return std::exp(cplx(-0.5, 3.0) * t); }, 0.0, 10.0, q));
  }
}
BENCHMARK(BM_GaussLegendreFinite)->Arg(8)->Arg(16)->Arg(32);

static void BM_LaplaceNumeric(benchmark::State& state) {
  const auto spec = FunctionSpec::mixed_exp(1.0, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(laplace_transform(spec, cplx(0.5, 4.0)));
}
BENCHMARK(BM_LaplaceNumeric);

static void BM_RectangleInverse(benchmark::State& state) {
  const auto t = analytic_transform(FunctionSpec::mixed_exp(1.0, 2.0), TransformKind::Laplace);
  const auto rect = rectangle_for(t, state.range(0) / 10.0, default_half_height(t, 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(inverse_eval(t, InverseKind::LaplaceKernel, rect, 1.0));
}
// delta in tenths: narrower offsets mean shorter panels and more nodes.
BENCHMARK(BM_RectangleInverse)->Arg(1)->Arg(5)->Arg(10);

static void BM_ResidueOracle(benchmark::State& state) {
  const auto t = analytic_transform(FunctionSpec::mixed_exp(1.0, 2.0), TransformKind::Laplace);
  for (auto _ : state) benchmark::DoNotOptimize(residue_inverse(t, InverseKind::LaplaceKernel, 1.0));
}
BENCHMARK(BM_ResidueOracle);

static void BM_GammaLine(benchmark::State& state) {
  const auto line = Contour::bromwich(1.0, 50.0, 1.0);
  const auto g = TransformExpr::gamma();
  for (auto _ : state) benchmark::DoNotOptimize(inverse_eval(g, InverseKind::MellinKernel, line, 1.0));
}
BENCHMARK(BM_GammaLine)->Unit(benchmark::kMillisecond);

static void BM_DeltaCheck(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(delta_check(1.0, FunctionSpec::exp(1.0), {20.0, 40.0, 80.0}));
  }
}
BENCHMARK(BM_DeltaCheck)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
