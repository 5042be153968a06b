// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <random>

#include "obsint/freq.hpp"
#include "obsint/poly.hpp"

using namespace obsint;

namespace {

std::vector<RealPoly> random_polys(std::size_t count) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coef(-5.0, 5.0);
  std::uniform_int_distribution<int> deg(1, 6);
  std::vector<RealPoly> out;
  while (out.size() < count) {
    std::vector<double> c(static_cast<std::size_t>(deg(rng) + 1));
    for (auto& v : c) v = coef(rng);
    if (c[0] == 0.0) continue;
    out.emplace_back(std::move(c));
  }
  return out;
}

const ObserverGainSet kDiffint{3, 2, {0.1, 3, 2}, 0.1};

}  // namespace

static void BM_HurwitzSerial(benchmark::State& st) {
  const auto polys = random_polys(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(classify_hurwitz_serial(polys));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_HurwitzSerial)->Arg(1000)->Arg(100000);

static void BM_HurwitzOmp(benchmark::State& st) {
  const auto polys = random_polys(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(classify_hurwitz(polys));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_HurwitzOmp)->Arg(1000)->Arg(100000);

static void BM_ResponseSerial(benchmark::State& st) {
  const auto tf = transfer_function(kDiffint, 2);
  const auto grid = log_grid(1e-3, 1e3, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(response_serial(tf, grid));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_ResponseSerial)->Arg(400)->Arg(100000);

static void BM_ResponseOmp(benchmark::State& st) {
  const auto tf = transfer_function(kDiffint, 2);
  const auto grid = log_grid(1e-3, 1e3, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(response(tf, grid));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_ResponseOmp)->Arg(400)->Arg(100000);

static void BM_PassbandSerial(benchmark::State& st) {
  const auto grid = log_grid(1e-3, 1e3, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(passband_error_serial(kDiffint, 1, grid));
}
BENCHMARK(BM_PassbandSerial)->Arg(100000);

static void BM_PassbandOmp(benchmark::State& st) {
  const auto grid = log_grid(1e-3, 1e3, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(passband_error(kDiffint, 1, grid));
}
BENCHMARK(BM_PassbandOmp)->Arg(100000);

BENCHMARK_MAIN();
