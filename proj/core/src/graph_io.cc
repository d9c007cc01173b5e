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

#include "lqct/graph_io.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lqct/error.h"

namespace lqct {
namespace {

std::vector<std::string_view> Tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    }
    size_t j = i;
    while (j < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[j]))) {
      ++j;
    }
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

std::vector<NodeId> Reachable(const Graph& graph, NodeId from) {
  std::vector<char> seen(graph.num_nodes(), 0);
  std::vector<NodeId> stack = {from};
  seen[from] = 1;
  std::vector<NodeId> reached;
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    for (const Arc& arc : graph.out_arcs(u)) {
      if (seen[arc.to]) continue;
      seen[arc.to] = 1;
      reached.push_back(arc.to);
      stack.push_back(arc.to);
    }
  }
  std::sort(reached.begin(), reached.end());
  return reached;
}

}  // namespace

Graph ParseGraph(std::string_view text) {
  std::optional<Graph::Builder> builder;
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    std::vector<std::string_view> tokens = Tokens(line);
    if (tokens.empty()) continue;
    try {
      if (!builder) {
        if (tokens.size() != 1 ||
            (tokens[0] != "directed" && tokens[0] != "undirected")) {
          Fail(ErrorCode::kInvalidInput,
               "expected 'directed' or 'undirected'");
        }
        builder.emplace(tokens[0] == "directed");
      } else if (tokens.size() == 1) {
        builder->AddNode(tokens[0]);
      } else if (tokens.size() == 3) {
        builder->AddEdge(tokens[0], tokens[1], tokens[2]);
      } else {
        Fail(ErrorCode::kInvalidInput, "expected '<edge> <tail> <head>'");
      }
    } catch (const Error& e) {
      Fail(e.code(), "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!builder) Fail(ErrorCode::kInvalidInput, "empty graph file");
  return std::move(*builder).Build();
}

Graph LoadGraphFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kInvalidInput, "cannot open graph file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return ParseGraph(buffer.str());
  } catch (const Error& e) {
    Fail(e.code(), path + ": " + e.what());
  }
}

std::string SerializeGraph(const Graph& graph) {
  std::string out = graph.directed() ? "directed\n" : "undirected\n";
  // The parser numbers nodes on first mention, tail before head. An edge is
  // written directly when that reproduces the ids; otherwise the missing
  // nodes are declared on lines of their own first.
  NodeId next = 0;
  for (const Edge& e : graph.edges()) {
    NodeId expect = next;
    bool in_order = true;
    if (e.tail >= next) in_order = in_order && e.tail == expect++;
    if (e.head >= next) in_order = in_order && e.head == expect++;
    if (in_order) {
      next = expect;
    } else {
      for (NodeId last = std::max(e.tail, e.head); next <= last; ++next) {
        out += graph.node_name(next) + "\n";
      }
    }
    out += e.name + " " + graph.node_name(e.tail) + " " +
           graph.node_name(e.head) + "\n";
  }
  for (; next < graph.num_nodes(); ++next) {
    out += graph.node_name(next) + "\n";
  }
  return out;
}

Instance MakeNamedInstance(std::shared_ptr<const Graph> graph,
                           std::string_view source, std::string_view target,
                           double p, int budget) {
  auto s = graph->FindNode(source);
  if (!s) Fail(ErrorCode::kInvalidInput, "unknown source node '" +
                                             std::string(source) + "'");
  auto t = graph->FindNode(target);
  if (!t) Fail(ErrorCode::kInvalidInput, "unknown target node '" +
                                             std::string(target) + "'");
  return MakeInstance(std::move(graph), *s, *t, p, budget);
}

Instance LoadInstance(const std::string& path, std::string_view source,
                      std::string_view target, double p, int budget) {
  return MakeNamedInstance(std::make_shared<const Graph>(LoadGraphFile(path)),
                           source, target, p, budget);
}

std::pair<NodeId, NodeId> PickEndpoints(const Graph& graph, uint64_t seed) {
  if (graph.num_edges() == 0) {
    Fail(ErrorCode::kInvalidInput, "graph has no reachable node pair");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<NodeId> any(0, graph.num_nodes() - 1);
  while (true) {
    NodeId s = any(rng);
    std::vector<NodeId> reached = Reachable(graph, s);
    if (reached.empty()) continue;
    std::uniform_int_distribution<size_t> pick(0, reached.size() - 1);
    return {s, reached[pick(rng)]};
  }
}

}  // namespace lqct
