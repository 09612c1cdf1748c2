#include <benchmark/benchmark.h>

#include "findex/circle.hpp"
#include "findex/distributions.hpp"
#include "findex/eta.hpp"
#include "findex/index.hpp"
#include "findex/spectral.hpp"

using namespace findex;

static void BM_FrequencyProjectors(benchmark::State& state) {
  CircleOperatorSpec spec;
  spec.K = static_cast<int>(state.range(0));
  spec.flux = 0.25;
  spec.potential[1] = Matrix::Constant(1, 1, 0.5);
  spec.potential[-1] = Matrix::Constant(1, 1, 0.5);
  const auto D = build_circle_dirac(spec);
  RaySpec ray;
  for (auto _ : state) {
    auto fp = frequency_projectors(D, ray, 1e-8);
    benchmark::DoNotOptimize(fp.p_gt.m.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FrequencyProjectors)->Arg(16)->Arg(32)->Arg(64)->Arg(128)->Complexity();

static void BM_EtaHeat(benchmark::State& state) {
  CircleOperatorSpec spec;
  spec.K = static_cast<int>(state.range(0));
  spec.flux = 0.25;
  const auto D = build_circle_dirac(spec);
  RaySpec ray;
  std::vector<double> grid(12);
  for (int i = 0; i < 12; ++i) grid[i] = 0.02 * std::pow(10.0, i / 11.0);
  for (auto _ : state) {
    auto r = eta_heat(D, ray, grid);
    benchmark::DoNotOptimize(r.eta);
  }
}
BENCHMARK(BM_EtaHeat)->Arg(50)->Arg(100)->Arg(200);

static void BM_Evolve(benchmark::State& state) {
  CylinderModel m;
  m.flux_start = 0.3;
  m.flux_end = 1.3;
  m.base.K = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto ev = evolve(m);
    benchmark::DoNotOptimize(ev.U.data());
  }
}
BENCHMARK(BM_Evolve)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_DistributionPairing(benchmark::State& state) {
  DistributionQuery q;
  q.family = DistFamily::F;
  q.beta = 0.5;
  q.n = 2;
  const TestFunction phi(GaussPoly::unit(2, 1.0));
  for (auto _ : state) {
    auto r = pair(q, phi);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_DistributionPairing)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
