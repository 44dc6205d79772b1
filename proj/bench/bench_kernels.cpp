#include <benchmark/benchmark.h>

#include <cmath>
#include <map>
#include <string>

#include "infspec/geodesic.hpp"
#include "infspec/parallel.hpp"
#include "infspec/spectra.hpp"

using namespace infspec;

namespace {

const RasterDomain& ball_raster(int e) {
  static std::map<int, RasterDomain> cache;
  auto it = cache.find(e);
  if (it == cache.end()) it = cache.emplace(e, rasterize(DomainSpec::ball(1.0), std::ldexp(1.0, -e))).first;
  return it->second;
}

const RasterDomain& stadium_raster() {
  static const RasterDomain r = rasterize(DomainSpec::stadium(0.2, 7.5398223686155035), std::ldexp(1.0, -7));
  return r;
}

void BM_EdtParallel(benchmark::State& s) {
  const auto& r = ball_raster(static_cast<int>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(edt(r));
  s.SetItemsProcessed(s.iterations() * static_cast<int64_t>(r.frame().size()));
}

void BM_EdtSerial(benchmark::State& s) {
  const auto& r = ball_raster(static_cast<int>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(edt_serial(r));
  s.SetItemsProcessed(s.iterations() * static_cast<int64_t>(r.frame().size()));
}

void BM_DiameterParallel(benchmark::State& s) {
  const GeodesicConfig cfg{GeodesicSolver::Dijkstra16, 32};
  for (auto _ : s) benchmark::DoNotOptimize(intrinsic_diameter(stadium_raster(), cfg));
}

void BM_DiameterSerial(benchmark::State& s) {
  const GeodesicConfig cfg{GeodesicSolver::Dijkstra16, 32};
  for (auto _ : s) benchmark::DoNotOptimize(intrinsic_diameter_serial(stadium_raster(), cfg));
}

void BM_SymdiffParallel(benchmark::State& s) {
  const auto& r = ball_raster(static_cast<int>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(symmetric_difference(r, {{0.1, 0.05}, 0.9}));
}

void BM_SymdiffSerial(benchmark::State& s) {
  const auto& r = ball_raster(static_cast<int>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(symmetric_difference_serial(r, {{0.1, 0.05}, 0.9}));
}

}  // namespace

BENCHMARK(BM_EdtSerial)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EdtParallel)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_DiameterSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DiameterParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SymdiffSerial)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SymdiffParallel)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond)->UseRealTime();

int main(int argc, char** argv) {
  configure_threads_from_env();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::AddCustomContext("omp_threads", std::to_string(max_threads()));
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
