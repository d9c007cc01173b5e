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

#include "lqct/graph.h"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <utility>

#include "lqct/error.h"
#include "max_flow.h"

namespace lqct {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput:
      return "invalid_input";
    case ErrorCode::kNotFound:
      return "not_found";
    case ErrorCode::kGuardExceeded:
      return "guard_exceeded";
    case ErrorCode::kTimeout:
      return "timeout";
    case ErrorCode::kContractViolation:
      return "contract_violation";
    case ErrorCode::kConflict:
      return "conflict";
    case ErrorCode::kInternal:
      return "internal";
  }
  return "internal";
}

void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

std::string_view EdgeStateName(EdgeState state) {
  switch (state) {
    case EdgeState::kHidden:
      return "hidden";
    case EdgeState::kOn:
      return "on";
    case EdgeState::kOff:
      return "off";
  }
  return "hidden";
}

std::string_view ConnectivityName(Connectivity c) {
  switch (c) {
    case Connectivity::kOpen:
      return "open";
    case Connectivity::kPathFound:
      return "path_found";
    case Connectivity::kCutFound:
      return "cut_found";
  }
  return "open";
}

NodeId Graph::Builder::AddNode(std::string_view name) {
  auto [it, inserted] = node_index_.try_emplace(
      std::string(name), static_cast<NodeId>(node_names_.size()));
  if (inserted) node_names_.emplace_back(name);
  return it->second;
}

EdgeId Graph::Builder::AddEdge(std::string_view name, std::string_view tail,
                               std::string_view head) {
  if (name.empty() ||
      name.find_first_of(" \t\r\n(),:#") != std::string_view::npos) {
    Fail(ErrorCode::kInvalidInput,
         "edge id '" + std::string(name) +
             "' must be non-empty and free of whitespace and '(),:#'");
  }
  if (edge_index_.count(std::string(name)) != 0) {
    Fail(ErrorCode::kInvalidInput,
         "duplicate edge id '" + std::string(name) + "'");
  }
  if (tail == head) {
    Fail(ErrorCode::kInvalidInput,
         "self-loop on edge '" + std::string(name) + "'");
  }
  const NodeId u = AddNode(tail);
  const NodeId v = AddNode(head);
  NodeId a = u;
  NodeId b = v;
  if (!directed_ && a > b) std::swap(a, b);
  const uint64_t key = (static_cast<uint64_t>(a) << 32) | static_cast<uint32_t>(b);
  if (auto it = endpoint_index_.find(key); it != endpoint_index_.end()) {
    Fail(ErrorCode::kInvalidInput, "parallel edge '" + std::string(name) +
                                       "' duplicates '" +
                                       edges_[it->second].name + "'");
  }
  const auto id = static_cast<EdgeId>(edges_.size());
  endpoint_index_.emplace(key, id);
  edge_index_.emplace(std::string(name), id);
  edges_.push_back({std::string(name), u, v});
  return id;
}

Graph Graph::Builder::Build() && {
  Graph g;
  g.directed_ = directed_;
  g.node_names_ = std::move(node_names_);
  g.node_index_ = std::move(node_index_);
  g.edges_ = std::move(edges_);
  g.edge_index_ = std::move(edge_index_);

  const int n = g.num_nodes();
  std::vector<std::vector<Arc>> out(n);
  std::vector<std::vector<Arc>> in(n);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& edge = g.edges_[e];
    out[edge.tail].push_back({e, edge.head});
    in[edge.head].push_back({e, edge.tail});
    if (!g.directed_) {
      out[edge.head].push_back({e, edge.tail});
      in[edge.tail].push_back({e, edge.head});
    }
  }
  auto flatten = [n](std::vector<std::vector<Arc>>& lists,
                     std::vector<Arc>& arcs, std::vector<int>& offsets) {
    offsets.assign(static_cast<size_t>(n) + 1, 0);
    for (int v = 0; v < n; ++v) {
      // Arcs sorted by edge id keep every scan deterministic.
      std::sort(lists[v].begin(), lists[v].end(),
                [](const Arc& x, const Arc& y) { return x.edge < y.edge; });
      offsets[v + 1] = offsets[v] + static_cast<int>(lists[v].size());
      arcs.insert(arcs.end(), lists[v].begin(), lists[v].end());
    }
  };
  flatten(out, g.out_arcs_, g.out_offsets_);
  flatten(in, g.in_arcs_, g.in_offsets_);
  return g;
}

std::optional<NodeId> Graph::FindNode(std::string_view name) const {
  auto it = node_index_.find(std::string(name));
  if (it == node_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<EdgeId> Graph::FindEdge(std::string_view name) const {
  auto it = edge_index_.find(std::string(name));
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

Instance MakeInstance(std::shared_ptr<const Graph> graph, NodeId source,
                      NodeId target, double p, int budget) {
  if (graph == nullptr) Fail(ErrorCode::kInvalidInput, "missing graph");
  if (!(p > 0.0 && p < 1.0)) {
    Fail(ErrorCode::kInvalidInput, "probability p must lie in (0, 1)");
  }
  if (source < 0 || source >= graph->num_nodes() || target < 0 ||
      target >= graph->num_nodes()) {
    Fail(ErrorCode::kInvalidInput, "source/target out of range");
  }
  const int max_budget = std::max(1, graph->num_edges());
  if (budget < 1 || budget > max_budget) {
    Fail(ErrorCode::kInvalidInput,
         "budget must lie in [1, " + std::to_string(max_budget) + "]");
  }
  Instance instance;
  instance.graph = std::move(graph);
  instance.source = source;
  instance.target = target;
  instance.p = p;
  instance.budget = budget;
  return instance;
}

Instance WithBudget(const Instance& instance, int budget) {
  return MakeInstance(instance.graph, instance.source, instance.target,
                      instance.p, budget);
}

void Belief::Reveal(EdgeId e, EdgeState state) {
  if (e < 0 || e >= size()) {
    Fail(ErrorCode::kInvalidInput, "unknown edge id " + std::to_string(e));
  }
  if (state == EdgeState::kHidden) {
    Fail(ErrorCode::kContractViolation, "cannot reveal an edge as hidden");
  }
  if (states_[e] != EdgeState::kHidden) {
    Fail(ErrorCode::kContractViolation,
         "edge " + std::to_string(e) + " is already revealed");
  }
  states_[e] = state;
  ++revealed_;
}

Belief Belief::With(EdgeId e, EdgeState state) const {
  Belief copy = *this;
  copy.Reveal(e, state);
  return copy;
}

size_t Belief::Hash() const {
  // FNV-1a over the packed labels.
  uint64_t h = 1469598103934665603ULL;
  for (EdgeState s : states_) {
    h ^= static_cast<uint64_t>(s);
    h *= 1099511628211ULL;
  }
  return static_cast<size_t>(h);
}

bool IsLive(const Certificate& certificate, const Belief& belief) {
  const EdgeState killer = certificate.kind == CertificateKind::kPath
                               ? EdgeState::kOff
                               : EdgeState::kOn;
  return std::none_of(
      certificate.edges.begin(), certificate.edges.end(),
      [&](EdgeId e) { return belief.state(e) == killer; });
}

namespace {

void CheckBelief(const Instance& instance, const Belief& belief) {
  if (belief.size() != instance.num_edges()) {
    Fail(ErrorCode::kInvalidInput,
         "belief covers " + std::to_string(belief.size()) +
             " edges, graph has " + std::to_string(instance.num_edges()));
  }
}

// Shortest s->t path where `weight(e)` returns nullopt for forbidden edges.
// Each edge also costs one hop in the low-order part of the key, so tight
// arcs strictly decrease the remaining distance and the greedy walk below
// cannot revisit a node.
std::optional<std::vector<EdgeId>> LexShortestPath(
    const Instance& instance,
    const std::function<std::optional<int>(EdgeId)>& weight) {
  const Graph& g = *instance.graph;
  if (instance.source == instance.target) return std::vector<EdgeId>{};
  const int64_t hop_scale = g.num_nodes() + 1;
  constexpr int64_t kUnreached = std::numeric_limits<int64_t>::max();
  std::vector<int64_t> dist(g.num_nodes(), kUnreached);
  std::vector<int64_t> edge_cost(g.num_edges(), -1);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (auto w = weight(e)) edge_cost[e] = *w * hop_scale + 1;
  }
  using Entry = std::pair<int64_t, NodeId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  dist[instance.target] = 0;
  queue.push({0, instance.target});
  while (!queue.empty()) {
    auto [d, v] = queue.top();
    queue.pop();
    if (d != dist[v]) continue;
    for (const Arc& arc : g.in_arcs(v)) {
      const int64_t c = edge_cost[arc.edge];
      if (c < 0) continue;
      if (d + c < dist[arc.to]) {
        dist[arc.to] = d + c;
        queue.push({dist[arc.to], arc.to});
      }
    }
  }
  if (dist[instance.source] == kUnreached) return std::nullopt;
  std::vector<EdgeId> path;
  NodeId u = instance.source;
  while (u != instance.target) {
    // out_arcs are sorted by edge id, so the first tight arc is the smallest.
    for (const Arc& arc : g.out_arcs(u)) {
      const int64_t c = edge_cost[arc.edge];
      if (c >= 0 && dist[arc.to] != kUnreached &&
          dist[arc.to] + c == dist[u]) {
        path.push_back(arc.edge);
        u = arc.to;
        break;
      }
    }
  }
  return path;
}

std::vector<char> ReachableAvoiding(const Instance& instance,
                                    const Belief& belief) {
  const Graph& g = *instance.graph;
  std::vector<char> seen(g.num_nodes(), 0);
  std::vector<NodeId> stack = {instance.source};
  seen[instance.source] = 1;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (const Arc& arc : g.out_arcs(u)) {
      if (belief.state(arc.edge) == EdgeState::kOff || seen[arc.to]) continue;
      seen[arc.to] = 1;
      stack.push_back(arc.to);
    }
  }
  return seen;
}

std::vector<EdgeId> CrossingEdges(const Graph& g,
                                  const std::vector<char>& source_side) {
  std::vector<EdgeId> cut;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& edge = g.edge(e);
    const bool tail_in = source_side[edge.tail] != 0;
    const bool head_in = source_side[edge.head] != 0;
    if (g.directed() ? (tail_in && !head_in) : (tail_in != head_in)) {
      cut.push_back(e);
    }
  }
  return cut;
}

}  // namespace

bool IsPathOf(const Instance& instance, std::span<const EdgeId> edges) {
  const Graph& g = *instance.graph;
  std::vector<char> used_edge(g.num_edges(), 0);
  NodeId u = instance.source;
  for (EdgeId e : edges) {
    if (e < 0 || e >= g.num_edges() || used_edge[e]) return false;
    used_edge[e] = 1;
    const Edge& edge = g.edge(e);
    NodeId next;
    if (edge.tail == u) {
      next = edge.head;
    } else if (!g.directed() && edge.head == u) {
      next = edge.tail;
    } else {
      return false;
    }
    u = next;
  }
  return u == instance.target;
}

bool IsCutOf(const Instance& instance, std::span<const EdgeId> edges) {
  Belief removed(instance.num_edges());
  for (EdgeId e : edges) {
    if (e < 0 || e >= instance.num_edges()) return false;
    if (removed.hidden(e)) removed.Reveal(e, EdgeState::kOff);
  }
  return ReachableAvoiding(instance, removed)[instance.target] == 0;
}

CertificateStatus GetCertificateStatus(const Instance& instance,
                                       const Belief& belief) {
  CheckBelief(instance, belief);
  auto on_path = LexShortestPath(instance, [&](EdgeId e) -> std::optional<int> {
    if (belief.state(e) == EdgeState::kOn) return 0;
    return std::nullopt;
  });
  if (on_path) {
    return {Connectivity::kPathFound,
            Certificate{CertificateKind::kPath, std::move(*on_path)}};
  }
  const std::vector<char> reach = ReachableAvoiding(instance, belief);
  if (reach[instance.target]) return {Connectivity::kOpen, std::nullopt};
  return {Connectivity::kCutFound,
          Certificate{CertificateKind::kCut,
                      CrossingEdges(*instance.graph, reach)}};
}

std::optional<HiddenCertificate> MinHiddenPath(const Instance& instance,
                                               const Belief& belief) {
  CheckBelief(instance, belief);
  auto path = LexShortestPath(instance, [&](EdgeId e) -> std::optional<int> {
    switch (belief.state(e)) {
      case EdgeState::kOn:
        return 0;
      case EdgeState::kHidden:
        return 1;
      case EdgeState::kOff:
        return std::nullopt;
    }
    return std::nullopt;
  });
  if (!path) return std::nullopt;
  int hidden = 0;
  for (EdgeId e : *path) hidden += belief.hidden(e) ? 1 : 0;
  return HiddenCertificate{Certificate{CertificateKind::kPath, std::move(*path)},
                           hidden};
}

std::optional<HiddenCertificate> MinHiddenCut(const Instance& instance,
                                              const Belief& belief) {
  CheckBelief(instance, belief);
  if (instance.source == instance.target) return std::nullopt;
  const Graph& g = *instance.graph;
  const int64_t infinite = g.num_edges() + 1;
  internal::MaxFlow flow(g.num_nodes());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const EdgeState state = belief.state(e);
    if (state == EdgeState::kOff) continue;
    const int64_t cap = state == EdgeState::kOn ? infinite : 1;
    const Edge& edge = g.edge(e);
    flow.AddArc(edge.tail, edge.head, cap, g.directed() ? 0 : cap);
  }
  const int64_t value = flow.Solve(instance.source, instance.target, infinite);
  if (value >= infinite) return std::nullopt;
  std::vector<EdgeId> cut =
      CrossingEdges(g, flow.ResidualReachable(instance.source));
  int hidden = 0;
  for (EdgeId e : cut) hidden += belief.hidden(e) ? 1 : 0;
  if (hidden != value) {
    Fail(ErrorCode::kInternal, "min cut size does not match the flow value");
  }
  return HiddenCertificate{Certificate{CertificateKind::kCut, std::move(cut)},
                           hidden};
}

}  // namespace lqct
