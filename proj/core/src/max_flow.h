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

#ifndef LQCT_SRC_MAX_FLOW_H_
#define LQCT_SRC_MAX_FLOW_H_

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

namespace lqct::internal {

// Dinic's algorithm on an explicit residual network.
class MaxFlow {
 public:
  explicit MaxFlow(int num_nodes)
      : adjacency_(static_cast<size_t>(num_nodes)),
        level_(static_cast<size_t>(num_nodes)),
        next_arc_(static_cast<size_t>(num_nodes)) {}

  // Adds u->v with `capacity` and the paired v->u arc with
  // `reverse_capacity`. Returns the index of the forward arc.
  int AddArc(int u, int v, int64_t capacity, int64_t reverse_capacity = 0) {
    const int id = static_cast<int>(arcs_.size());
    arcs_.push_back({v, capacity});
    arcs_.push_back({u, reverse_capacity});
    adjacency_[u].push_back(id);
    adjacency_[v].push_back(id + 1);
    return id;
  }

  // Stops early once the flow reaches `limit`.
  int64_t Solve(int source, int sink,
                int64_t limit = std::numeric_limits<int64_t>::max()) {
    int64_t flow = 0;
    while (flow < limit && BuildLevels(source, sink)) {
      std::fill(next_arc_.begin(), next_arc_.end(), 0);
      while (flow < limit) {
        const int64_t pushed = Augment(source, sink, limit - flow);
        if (pushed == 0) break;
        flow += pushed;
      }
    }
    return flow;
  }

  // Nodes reachable from `source` through arcs with residual capacity.
  std::vector<char> ResidualReachable(int source) const {
    std::vector<char> seen(adjacency_.size(), 0);
    std::vector<int> stack = {source};
    seen[source] = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int id : adjacency_[u]) {
        const Arc& arc = arcs_[id];
        if (arc.residual > 0 && !seen[arc.to]) {
          seen[arc.to] = 1;
          stack.push_back(arc.to);
        }
      }
    }
    return seen;
  }

 private:
  struct Arc {
    int to;
    int64_t residual;
  };

  bool BuildLevels(int source, int sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> queue;
    level_[source] = 0;
    queue.push(source);
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop();
      for (int id : adjacency_[u]) {
        const Arc& arc = arcs_[id];
        if (arc.residual > 0 && level_[arc.to] < 0) {
          level_[arc.to] = level_[u] + 1;
          queue.push(arc.to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  // Iterative blocking-flow search along the level graph.
  int64_t Augment(int source, int sink, int64_t cap) {
    std::vector<int> path;  // arc ids
    int u = source;
    while (true) {
      if (u == sink) {
        int64_t bottleneck = cap;
        for (int id : path) bottleneck = std::min(bottleneck, arcs_[id].residual);
        for (int id : path) {
          arcs_[id].residual -= bottleneck;
          arcs_[id ^ 1].residual += bottleneck;
        }
        return bottleneck;
      }
      bool advanced = false;
      for (size_t& i = next_arc_[u]; i < adjacency_[u].size(); ++i) {
        const int id = adjacency_[u][i];
        const Arc& arc = arcs_[id];
        if (arc.residual > 0 && level_[arc.to] == level_[u] + 1) {
          path.push_back(id);
          u = arc.to;
          advanced = true;
          break;
        }
      }
      if (advanced) continue;
      // Dead end: retreat.
      level_[u] = -1;
      if (path.empty()) return 0;
      const int back = path.back();
      path.pop_back();
      u = arcs_[back ^ 1].to;
      ++next_arc_[u];
    }
  }

  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<int> level_;
  std::vector<size_t> next_arc_;
};

}  // namespace lqct::internal

#endif  // LQCT_SRC_MAX_FLOW_H_
