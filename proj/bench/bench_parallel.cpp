// Copyright (C) 2026 The wiretap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Serial reference vs OpenMP kernels. Arguments are (samples, workers); the
// worker count changes the stream layout, so both sides use the same value.

#include <benchmark/benchmark.h>

#include "wiretap/experiments.hpp"
#include "wiretap/montecarlo.hpp"

using namespace wiretap;

namespace {

const ChannelParams kParams(10.0, 10.0, 0.6);

void BM_CapacitySerial(benchmark::State& state) {
    const auto n = static_cast<std::uint64_t>(state.range(0));
    const int workers = static_cast<int>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(montecarlo::serial::estimate_capacity(kParams, n, 1, workers));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

void BM_CapacityParallel(benchmark::State& state) {
    const auto n = static_cast<std::uint64_t>(state.range(0));
    const int workers = static_cast<int>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(montecarlo::estimate_capacity(kParams, n, 1, workers));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

void BM_OutageSerial(benchmark::State& state) {
    const auto n = static_cast<std::uint64_t>(state.range(0));
    const int workers = static_cast<int>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(montecarlo::serial::estimate_outage(kParams, 1.0, n, 1, workers));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

void BM_OutageParallel(benchmark::State& state) {
    const auto n = static_cast<std::uint64_t>(state.range(0));
    const int workers = static_cast<int>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(montecarlo::estimate_outage(kParams, 1.0, n, 1, workers));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

experiments::SweepConfig figure_grid(int workers) {
    experiments::SweepConfig cfg;
    cfg.workers = workers;
    return cfg;
}

void BM_SweepSerial(benchmark::State& state) {
    const auto cfg = figure_grid(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(experiments::run_sweep(cfg, experiments::Execution::serial));
}

void BM_SweepParallel(benchmark::State& state) {
    const auto cfg = figure_grid(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(experiments::run_sweep(cfg, experiments::Execution::parallel));
}

void mc_args(benchmark::internal::Benchmark* b) {
    for (int workers : {1, 2, 4, 8}) b->Args({1 << 20, workers});
    b->Unit(benchmark::kMillisecond)->UseRealTime();
}

}  // namespace

BENCHMARK(BM_CapacitySerial)->Apply(mc_args);
BENCHMARK(BM_CapacityParallel)->Apply(mc_args);
BENCHMARK(BM_OutageSerial)->Apply(mc_args);
BENCHMARK(BM_OutageParallel)->Apply(mc_args);
BENCHMARK(BM_SweepSerial)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepParallel)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
