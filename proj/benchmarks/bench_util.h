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


#ifndef LQCT_BENCHMARKS_BENCH_UTIL_H_
#define LQCT_BENCHMARKS_BENCH_UTIL_H_

#include <memory>
#include <string>

#include "lqct/graph.h"
#include "lqct/graph_io.h"

namespace lqct::bench {

inline Instance Triangle(int budget = 3) {
  auto graph = std::make_shared<const Graph>(
      ParseGraph("undirected\na s t\nb s x\nc x t\n"));
  return MakeNamedInstance(graph, "s", "t", 0.5, budget);
}

inline std::shared_ptr<const Graph> Grid() {
  static const auto graph = std::make_shared<const Graph>(
      LoadGraphFile(LQCT_DATA_DIR "/road_grid.graph"));
  return graph;
}

inline Instance GridInstance(int budget, uint64_t seed = 1) {
  auto graph = Grid();
  auto [s, t] = PickEndpoints(*graph, seed);
  return MakeInstance(graph, s, t, 0.5, budget);
}

// A ladder with `rungs` rungs between s (left end) and t (right end).
inline Instance Ladder(int rungs, int budget) {
  std::string text = "undirected\n";
  for (int i = 0; i < rungs; ++i) {
    std::string u = "u" + std::to_string(i);
    std::string l = "l" + std::to_string(i);
    text += "r" + std::to_string(i) + " " + u + " " + l + "\n";
    if (i + 1 < rungs) {
      text += "top" + std::to_string(i) + " " + u + " u" +
              std::to_string(i + 1) + "\n";
      text += "bot" + std::to_string(i) + " " + l + " l" +
              std::to_string(i + 1) + "\n";
    }
  }
  auto graph = std::make_shared<const Graph>(ParseGraph(text));
  return MakeNamedInstance(graph, "u0", "l" + std::to_string(rungs - 1), 0.5,
                           budget);
}

}  // namespace lqct::bench

#endif  // LQCT_BENCHMARKS_BENCH_UTIL_H_
