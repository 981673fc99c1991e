// Serial vs OpenMP kernels. Thread count follows OMP_NUM_THREADS.
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "scalecascade/analysis.hpp"
#include "scalecascade/kernels.hpp"

using namespace scalecascade;

namespace {

std::vector<Ratio> random_coeffs(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 1000000);
  std::vector<Ratio> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(mpz_class(num(rng)), mpz_class(den(rng)));
  return out;
}

template <void (*Kernel)(std::span<const Ratio>, std::span<const Ratio>, std::span<Ratio>)>
void BM_convolve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_coeffs(n, 1), b = random_coeffs(n, 2);
  std::vector<Ratio> out(n);
  for (auto _ : state) {
    Kernel(a, b, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.counters["threads"] = kernels::max_threads();
}

std::vector<Ratio> scan_grid(std::size_t n) {
  std::vector<Ratio> grid;
  for (std::size_t i = 0; i < n; ++i) grid.emplace_back(mpz_class(static_cast<long>(i)), mpz_class(2 * static_cast<long>(n)));
  return grid;
}

void BM_jump_scan(benchmark::State& state) {
  const auto grid = scan_grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(jump_scan(grid, 6, 1, ScheduleRule::power_tower, Closure::one));
  }
}

void BM_jump_scan_serial(benchmark::State& state) {
  const auto grid = scan_grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(jump_scan_serial(grid, 6, 1, ScheduleRule::power_tower, Closure::one));
  }
}

}  // namespace

BENCHMARK(BM_convolve<kernels::convolve_serial>)->RangeMultiplier(4)->Range(16, 256);
BENCHMARK(BM_convolve<kernels::convolve_parallel>)->RangeMultiplier(4)->Range(16, 256);
BENCHMARK(BM_jump_scan_serial)->Arg(8)->Arg(32);
BENCHMARK(BM_jump_scan)->Arg(8)->Arg(32);

BENCHMARK_MAIN();
