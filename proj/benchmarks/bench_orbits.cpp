#include <benchmark/benchmark.h>

#include "tonguelock/locking.hpp"
#include "tonguelock/lyapunov.hpp"
#include "tonguelock/parallel.hpp"

namespace {

using namespace tonguelock;

constexpr double kGolden = 0.6180339887498949;

const BaseMap& golden_base() {
  static const BaseMap base = BaseMap::rotation({kGolden});
  return base;
}

FiberFamily forced_arnold() {
  return FiberFamily::arnold(0.05, 0.5, 0.2, TrigPoly::cosine());
}

void BM_displacement_orbit(benchmark::State& state) {
  const FiberFamily fam = forced_arnold();
  const BaseMap& base = golden_base();
  const BasePoint x = base.torus_point({0.123});
  const long n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(displacement_orbit(fam, base, x, 0.4, n, 0.0));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_displacement_orbit)->Arg(1024)->Arg(16384);

void BM_displacement_bounds(benchmark::State& state) {
  const FiberFamily fam = forced_arnold();
  const BaseMap& base = golden_base();
  const int g = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(displacement_bounds(fam, base, 512, {g, g}, 0.0));
  }
  state.SetItemsProcessed(state.iterations() * g * g * 512);
}
BENCHMARK(BM_displacement_bounds)->Arg(16)->Arg(64);

void BM_log_derivative_sum(benchmark::State& state) {
  const FiberFamily fam = forced_arnold();
  const BaseMap& base = golden_base();
  const BasePoint x = base.torus_point({0.7});
  const long n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_derivative_sum(fam, base, x, 0.2, n));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_log_derivative_sum)->Arg(1024);

void BM_classify_locked(benchmark::State& state) {
  const FiberFamily fam = FiberFamily::arnold(0.0, 0.5, 0.0, TrigPoly{});
  const BaseMap& base = golden_base();
  Budget budget;
  budget.grid = {8, 32};
  budget.n_list = {512, 2048};
  budget.eps_list = {0.02, 0.005};
  budget.strip_nodes = 128;
  budget.strip_transient = 256;
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify(fam, base, budget));
  }
}
BENCHMARK(BM_classify_locked);

void BM_classify_unlocked(benchmark::State& state) {
  const FiberFamily fam = FiberFamily::arnold(0.19, 0.5, 0.0, TrigPoly{});
  const BaseMap& base = golden_base();
  Budget budget;
  budget.grid = {8, 32};
  budget.n_list = {512, 2048};
  budget.eps_list = {0.02, 0.005};
  budget.strip_nodes = 128;
  budget.strip_transient = 256;
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify(fam, base, budget));
  }
}
BENCHMARK(BM_classify_unlocked);

void BM_simpson_integral(benchmark::State& state) {
  const FiberFamily fam = forced_arnold();
  const BaseMap& base = golden_base();
  const BasePoint x = base.torus_point({0.1});
  for (auto _ : state) {
    benchmark::DoNotOptimize(derivative_integral_check(fam, base, x, 6, 4096));
  }
}
BENCHMARK(BM_simpson_integral);

}  // namespace
