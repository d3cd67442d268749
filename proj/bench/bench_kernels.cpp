#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "charur/kernels.hpp"
#include "charur/moments.hpp"
#include "charur/states.hpp"

namespace {

using namespace charur;

struct Fixture {
  ObservableSet set;
  StateVector psi;
  CMatrix y;

  explicit Fixture(int n) : set(su11_set(0.5, n)) {
    std::mt19937_64 rng(42);
    psi = random_state(set.basis(), rng);
    y = kernels::apply_ops_serial(set.matrices(), psi.amplitudes());
  }
};

void BM_ApplyOpsSerial(benchmark::State& state) {
  const Fixture f(static_cast<int>(state.range(0)));
  const auto ops = f.set.matrices();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::apply_ops_serial(ops, f.psi.amplitudes()));
}

void BM_ApplyOpsParallel(benchmark::State& state) {
  const Fixture f(static_cast<int>(state.range(0)));
  const auto ops = f.set.matrices();
  for (auto _ : state) benchmark::DoNotOptimize(kernels::apply_ops_parallel(ops, f.psi.amplitudes()));
}

void BM_GramSerial(benchmark::State& state) {
  const Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::gram_serial(f.y));
}

void BM_GramParallel(benchmark::State& state) {
  const Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::gram_parallel(f.y));
}

// Random-state moment sweep over grid points; range(0) is the job count.
void BM_MomentSweep(benchmark::State& state) {
  const ObservableSet set = su11_set(0.5, 64);
  const int jobs = static_cast<int>(state.range(0));
  std::vector<double> out(256);
  for (auto _ : state) {
    kernels::map_grid(static_cast<int>(out.size()), [&](int i) {
      std::mt19937_64 rng(static_cast<std::uint64_t>(i));
      out[i] = moment_report(set, random_state(set.basis(), rng)).sigma_min_eig;
    }, jobs);
    benchmark::DoNotOptimize(out.data());
  }
}

}  // namespace

BENCHMARK(BM_ApplyOpsSerial)->Arg(128)->Arg(512)->Arg(1024);
BENCHMARK(BM_ApplyOpsParallel)->Arg(128)->Arg(512)->Arg(1024);
BENCHMARK(BM_GramSerial)->Arg(128)->Arg(512)->Arg(1024);
BENCHMARK(BM_GramParallel)->Arg(128)->Arg(512)->Arg(1024);
BENCHMARK(BM_MomentSweep)->Arg(1)->Arg(0);

BENCHMARK_MAIN();
