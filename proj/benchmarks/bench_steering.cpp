#include <benchmark/benchmark.h>

#include "gsteer/enumerate.hpp"
#include "gsteer/fixtures.hpp"
#include "gsteer/spectrum.hpp"
#include "gsteer/symplectic.hpp"

namespace {

using namespace gsteer;

const CovarianceMatrix& comb_state(std::size_t pixels) {
  static const CovarianceMatrix cm4 = simulate_cm(fixtures::default_comb().at_resolution(4));
  static const CovarianceMatrix cm8 = simulate_cm(fixtures::default_comb().at_resolution(8));
  static const CovarianceMatrix cm16 = simulate_cm(fixtures::default_comb());
  return pixels == 4 ? cm4 : pixels == 8 ? cm8 : cm16;
}

void BM_SymplecticEigenvalues(benchmark::State& state) {
  const auto& cm = comb_state(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(symplectic_eigenvalues(cm.entries()));
}
BENCHMARK(BM_SymplecticEigenvalues)->Arg(4)->Arg(8)->Arg(16);

void BM_SteeringHalfSplit(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto& cm = comb_state(n);
  Bipartition part;
  for (std::size_t i = 0; i < n; ++i) (i < n / 2 ? part.steered : part.steering).push_back(i);
  for (auto _ : state) benchmark::DoNotOptimize(steering(cm, part));
}
BENCHMARK(BM_SteeringHalfSplit)->Arg(4)->Arg(8)->Arg(16);

void BM_Enumerate16(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_bipartitions(16, EnumerationMode::kFull));
}
BENCHMARK(BM_Enumerate16);

void BM_FullSpectrum(benchmark::State& state) {
  const auto& cm = comb_state(16);
  ScanOptions options;
  options.jobs = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(steering_spectrum(cm, EnumerationMode::kFull, options));
}
BENCHMARK(BM_FullSpectrum)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace
