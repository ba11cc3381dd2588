#include <benchmark/benchmark.h>

#include "gsteer/comb.hpp"
#include "gsteer/fixtures.hpp"

namespace {

using namespace gsteer;

void BM_SimulateCm(benchmark::State& state) {
  const auto model = fixtures::default_comb().at_resolution(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(simulate_cm(model));
}
BENCHMARK(BM_SimulateCm)->Arg(4)->Arg(16);

void BM_EigenmodeProfiles(benchmark::State& state) {
  const auto model = fixtures::default_comb();
  for (auto _ : state) benchmark::DoNotOptimize(eigenmode_profiles(model));
}
BENCHMARK(BM_EigenmodeProfiles);

void BM_BandResolutionTable(benchmark::State& state) {
  const auto model = fixtures::default_comb();
  for (auto _ : state) benchmark::DoNotOptimize(band_resolution_table(model));
}
BENCHMARK(BM_BandResolutionTable)->Unit(benchmark::kMillisecond);

}  // namespace
