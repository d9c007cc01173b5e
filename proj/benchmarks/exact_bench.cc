// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <benchmark/benchmark.h>

#include "bench_util.h"
#include "lqct/exact_solver.h"

namespace lqct {
namespace {

void BM_ExactTriangle(benchmark::State& state) {
  Instance instance = bench::Triangle();
  for (auto _ : state) {
    benchmark::DoNotOptimize(SolveExact(instance).cost);
  }
}
BENCHMARK(BM_ExactTriangle);

void BM_ExactLadder(benchmark::State& state) {
  Instance instance = bench::Ladder(static_cast<int>(state.range(0)),
                                    static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(SolveExact(instance).cost);
  }
}
BENCHMARK(BM_ExactLadder)
    ->Args({3, 4})
    ->Args({4, 4})
    ->Args({4, 6})
    ->Unit(benchmark::kMillisecond);

void BM_ExactGrid(benchmark::State& state) {
  Instance instance = bench::GridInstance(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    ExactResult r = SolveExact(instance);
    state.counters["iterations"] = static_cast<double>(r.reports.size());
    benchmark::DoNotOptimize(r.cost);
  }
}
BENCHMARK(BM_ExactGrid)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace lqct
