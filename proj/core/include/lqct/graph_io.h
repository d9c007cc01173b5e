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

#ifndef LQCT_GRAPH_IO_H_
#define LQCT_GRAPH_IO_H_

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>

#include "lqct/graph.h"

namespace lqct {

// Text format: the first non-comment line is `directed` or `undirected`;
// every further line is `<edge> <tail> <head>`, or a lone `<node>` declaring
// a node without edges. `#` starts a comment. Edge ids are assigned in file
// order. Errors carry the line number.
Graph ParseGraph(std::string_view text);
Graph LoadGraphFile(const std::string& path);

// Inverse of ParseGraph: ParseGraph(SerializeGraph(g)) has the same node and
// edge numbering as `g`.
std::string SerializeGraph(const Graph& graph);

// Resolves endpoint names and validates the instance.
Instance MakeNamedInstance(std::shared_ptr<const Graph> graph,
                           std::string_view source, std::string_view target,
                           double p, int budget);
Instance LoadInstance(const std::string& path, std::string_view source,
                      std::string_view target, double p, int budget);

// Seeded endpoint draw: a uniform source, redrawn while it reaches nothing,
// then a uniform target among the nodes it reaches.
std::pair<NodeId, NodeId> PickEndpoints(const Graph& graph, uint64_t seed);

}  // namespace lqct

#endif  // LQCT_GRAPH_IO_H_
