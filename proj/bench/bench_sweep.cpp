#include <benchmark/benchmark.h>

#include "shockprof/sweep.hpp"

namespace {

using namespace shockprof;

ScanConfig grid(std::size_t n) { return {default_eps_axis(n), default_q_axis(n), false, {}}; }

void BM_ScanSerial(benchmark::State& state) {
    const ScanConfig cfg = grid(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(scan_serial(cfg));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

void BM_ScanParallel(benchmark::State& state) {
    const ScanConfig cfg = grid(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(scan_parallel(cfg));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

void BM_ShootNode(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(shoot(1.0, 0.76));
    }
}

void BM_ShootGridSerial(benchmark::State& state) {
    ScanConfig cfg{{0.5, 1.0, 4}, {0.76, 0.95, 4}, true, {}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(scan_serial(cfg));
    }
}

void BM_ShootGridParallel(benchmark::State& state) {
    ScanConfig cfg{{0.5, 1.0, 4}, {0.76, 0.95, 4}, true, {}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(scan_parallel(cfg));
    }
}

} // namespace

BENCHMARK(BM_ScanSerial)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanParallel)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ShootNode)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ShootGridSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ShootGridParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
