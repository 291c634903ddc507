#include <benchmark/benchmark.h>

#include "octodpw/analysis.hpp"
#include "octodpw/factorize.hpp"
#include "octodpw/integrate.hpp"
#include "octodpw/pipeline.hpp"
#include "octodpw/random.hpp"

using namespace octodpw;

namespace {

CQuaternion sample_w() { return {1.0, 0.3, cplx(0.0, 0.2), 0.1}; }

void BM_OctonionProduct(benchmark::State& state) {
  Sampler s(1);
  Octonion a = s.octonion();
  const Octonion b = s.octonion();
  for (auto _ : state) {
    a = normalized(a * b);
    benchmark::ClobberMemory();
  }
  benchmark::DoNotOptimize(a);
}
BENCHMARK(BM_OctonionProduct);

void BM_Reconstruct(benchmark::State& state) {
  const Frame f = rotate(scale(1.3, 0.6, reference_frame()), 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct(f, Branch::Low));
}
BENCHMARK(BM_Reconstruct);

void BM_IntegrateVacuum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PotentialSpec spec = vacuum_potential(sample_w(), Grid{0, 1, 0, 1, n, n}, 8);
  for (auto _ : state) benchmark::DoNotOptimize(integrate_H(spec));
}
BENCHMARK(BM_IntegrateVacuum)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_Iwasawa(benchmark::State& state) {
  const PotentialSpec spec = vacuum_potential(sample_w(), Grid{0, 1, 0, 1, 8, 8}, static_cast<int>(state.range(0)));
  const Field<HolomorphicFrame> H = integrate_H(spec);
  const HolomorphicFrame& corner = H(7, 7);
  for (auto _ : state) benchmark::DoNotOptimize(iwasawa_factorize(corner));
}
BENCHMARK(BM_Iwasawa)->Arg(8)->Arg(16)->Unit(benchmark::kMicrosecond);

void BM_ExtractVacuum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PotentialSpec spec = vacuum_potential(sample_w(), Grid{0, 1, 0, 1, n, n}, 8);
  for (auto _ : state) benchmark::DoNotOptimize(extract_surface(spec));
}
BENCHMARK(BM_ExtractVacuum)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_MeanCurvature(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DiscreteSurface S = extract_surface(vacuum_potential(sample_w(), Grid{0, 1, 0, 1, n, n}, 8));
  for (auto _ : state) benchmark::DoNotOptimize(mean_curvature(S.X[0], S.Xu[0], S.Xv[0]));
}
BENCHMARK(BM_MeanCurvature)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
