// Serial reference vs OpenMP kernels for the permutation averages and the
// trajectory integrator. Arguments: Hilbert dimension (levels) and, for the
// parallel variants, the thread count.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "cohspeed/avgdist.hpp"
#include "cohspeed/channels.hpp"
#include "cohspeed/dynamics.hpp"

using namespace cohspeed;

namespace {

SpectralHamiltonian spread_spectrum(int d) {
  std::vector<double> lam(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) lam[static_cast<std::size_t>(i)] = 0.37 * i + 0.05 * i * i;
  return spectral_from(lam, haar_random_unitary(d, 11));
}

void BM_AvgDistanceSerial(benchmark::State& st) {
  const int d = static_cast<int>(st.range(0));
  const auto h = spread_spectrum(d);
  const auto rho = random_density(d, d, 3);
  for (auto _ : st) benchmark::DoNotOptimize(avg_distance_bruteforce_serial(rho, h, 1.3));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(std::tgamma(d + 1.0)));
}

void BM_AvgDistanceParallel(benchmark::State& st) {
  const int d = static_cast<int>(st.range(0));
  const int jobs = static_cast<int>(st.range(1));
  const auto h = spread_spectrum(d);
  const auto rho = random_density(d, d, 3);
  for (auto _ : st) benchmark::DoNotOptimize(avg_distance_bruteforce(rho, h, 1.3, kBruteForceCap, jobs));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(std::tgamma(d + 1.0)));
}

StinespringDilation random_dilation() { return dilation_from_unitary(haar_random_unitary(4, 5), 2, 2); }

void BM_ChannelBoundSerial(benchmark::State& st) {
  const auto dl = random_dilation();
  const auto rho = random_density(2, 2, 9);
  for (auto _ : st) benchmark::DoNotOptimize(channel_average_bound_serial(dl, rho).lhs);
}

void BM_ChannelBoundParallel(benchmark::State& st) {
  const auto dl = random_dilation();
  const auto rho = random_density(2, 2, 9);
  const int jobs = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(channel_average_bound(dl, rho, kBruteForceCap, jobs).lhs);
}

void BM_Evolve(benchmark::State& st) {
  const int jobs = static_cast<int>(st.range(0));
  const Matrix h0 = random_hermitian(6, 1), h1 = random_hermitian(6, 2);
  const auto path = linear_path(h0, h1, 0.0, 1.0, uniform_grid(0.0, 1.0, 2000));
  const PureState psi = haar_random_state(6, 4);
  for (auto _ : st) benchmark::DoNotOptimize(evolve(psi, path, jobs).speeds.back());
}

}  // namespace

BENCHMARK(BM_AvgDistanceSerial)->DenseRange(4, 7)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AvgDistanceParallel)->ArgsProduct({{4, 5, 6, 7}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ChannelBoundSerial)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_ChannelBoundParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_Evolve)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
