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

#include <memory>
#include <vector>

#include "bench_util.h"
#include "lqct/exact_solver.h"
#include "lqct/ip.h"

namespace lqct {
namespace {

// The last relaxation solved by the exact solver on a ladder, replayed on
// either backend.
struct Program {
  Instance instance;
  ExactResult exact;
};

const Program& LadderProgram() {
  static const Program program = [] {
    Program p{bench::Ladder(3, 4), {}};
    p.exact = SolveExact(p.instance);
    return p;
  }();
  return program;
}

void SolveWith(benchmark::State& state, const char* backend_name) {
  const Program& p = LadderProgram();
  auto backend = MakeBackend(backend_name);
  Belief base(p.instance.num_edges());
  for (auto _ : state) {
    OptimalTree t = SolveOptimalTree(*p.instance.graph, p.exact.structure,
                                     p.exact.paths, p.exact.cuts,
                                     p.instance.p, p.instance.budget, base,
                                     *backend);
    state.counters["search_nodes"] = static_cast<double>(t.search_nodes);
    benchmark::DoNotOptimize(t.cost);
  }
}

void BM_TreeSearchBackend(benchmark::State& state) {
  SolveWith(state, "tree-search");
}
BENCHMARK(BM_TreeSearchBackend)->Unit(benchmark::kMillisecond);

void BM_BranchAndBoundBackend(benchmark::State& state) {
  SolveWith(state, "branch-and-bound");
}
BENCHMARK(BM_BranchAndBoundBackend)->Unit(benchmark::kMillisecond);

void BM_BuildTreeProgram(benchmark::State& state) {
  const Program& p = LadderProgram();
  Belief base(p.instance.num_edges());
  for (auto _ : state) {
    IpInstance ip = BuildTreeProgram(*p.instance.graph, p.exact.structure,
                                     p.exact.paths, p.exact.cuts,
                                     p.instance.p, p.instance.budget, base);
    benchmark::DoNotOptimize(ip.rows.size());
  }
}
BENCHMARK(BM_BuildTreeProgram);

}  // namespace
}  // namespace lqct
