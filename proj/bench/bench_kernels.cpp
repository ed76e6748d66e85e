// Packed/OpenMP kernels against the serial reference versions.

#include <benchmark/benchmark.h>

#include <random>

#include "knotcone/f2.hpp"
#include "knotcone/knots.hpp"
#include "knotcone/surgery.hpp"

using namespace knotcone;

namespace {

f2::Matrix random_matrix(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  f2::Matrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (rng() & 1) m.set(r, c);
    }
  }
  return m;
}

void BM_RankPacked(benchmark::State& state) {
  const auto m = random_matrix(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(f2::rank(m));
}

void BM_RankReference(benchmark::State& state) {
  const auto m = random_matrix(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(f2::reference::rank(m));
}

BENCHMARK(BM_RankPacked)->Arg(128)->Arg(512)->Arg(1024)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RankReference)->Arg(128)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

const std::vector<surgery::Slope>& grid() {
  static const auto g = surgery::coprime_grid(10, 10);
  return g;
}

void BM_ScanParallel(benchmark::State& state) {
  const auto c = knots::builtin("t27");
  for (auto _ : state) benchmark::DoNotOptimize(surgery::scan(c, grid()));
}

void BM_ScanSerial(benchmark::State& state) {
  const auto c = knots::builtin("t27");
  for (auto _ : state) benchmark::DoNotOptimize(surgery::scan_serial(c, grid()));
}

BENCHMARK(BM_ScanParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ScanSerial)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
