// Copyright 2026 The pickstuff Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference vs OpenMP batch evaluation of the scripted baselines.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "pickstuff/batch.hpp"

namespace {

pickstuff::ScriptConfig bench_config(pickstuff::Mode mode) {
  pickstuff::ScriptConfig config;
  config.mode = mode;
  config.master_seed = 2024;
  return config;
}

void BM_Serial(benchmark::State& state) {
  const auto config = bench_config(static_cast<pickstuff::Mode>(state.range(1)));
  const auto turns = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        pickstuff::evaluate_baseline_serial(config, pickstuff::Baseline::kOracle, 0, turns));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Parallel(benchmark::State& state) {
  const auto config = bench_config(static_cast<pickstuff::Mode>(state.range(1)));
  const auto turns = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        pickstuff::evaluate_baseline_parallel(config, pickstuff::Baseline::kOracle, 0, turns));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.counters["threads"] = omp_get_max_threads();
}

BENCHMARK(BM_Serial)->ArgsProduct({{60, 6000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Parallel)->ArgsProduct({{60, 6000}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
