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

#ifndef LQCT_GRAPH_H_
#define LQCT_GRAPH_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lqct {

// Dense indices. Edge ids follow the order in which edges were added, which is
// also the global tie-break order ("smallest edge id").
using NodeId = int32_t;
using EdgeId = int32_t;

enum class EdgeState : uint8_t { kHidden = 0, kOn = 1, kOff = 2 };

std::string_view EdgeStateName(EdgeState state);

struct Edge {
  std::string name;
  NodeId tail;
  NodeId head;
};

// One traversal direction of an edge. Undirected edges contribute an arc in
// each direction but keep a single edge id (and so a single belief state).
struct Arc {
  EdgeId edge;
  NodeId to;
};

class Graph {
 public:
  class Builder {
   public:
    explicit Builder(bool directed) : directed_(directed) {}

    // Idempotent: returns the existing id when the name is already known.
    NodeId AddNode(std::string_view name);
    // Rejects duplicate edge names, self-loops and parallel edges.
    EdgeId AddEdge(std::string_view name, std::string_view tail,
                   std::string_view head);
    Graph Build() &&;

   private:
    bool directed_;
    std::vector<std::string> node_names_;
    std::unordered_map<std::string, NodeId> node_index_;
    std::vector<Edge> edges_;
    std::unordered_map<std::string, EdgeId> edge_index_;
    std::unordered_map<uint64_t, EdgeId> endpoint_index_;
  };

  bool directed() const { return directed_; }
  int num_nodes() const { return static_cast<int>(node_names_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& node_name(NodeId v) const { return node_names_[v]; }
  const std::string& edge_name(EdgeId e) const { return edges_[e].name; }

  std::optional<NodeId> FindNode(std::string_view name) const;
  std::optional<EdgeId> FindEdge(std::string_view name) const;

  // Arcs leaving / entering a node. For undirected graphs both views are the
  // same set of arcs.
  std::span<const Arc> out_arcs(NodeId v) const {
    return {out_arcs_.data() + out_offsets_[v],
            out_arcs_.data() + out_offsets_[v + 1]};
  }
  std::span<const Arc> in_arcs(NodeId v) const {
    return {in_arcs_.data() + in_offsets_[v],
            in_arcs_.data() + in_offsets_[v + 1]};
  }

 private:
  Graph() = default;

  bool directed_ = false;
  std::vector<std::string> node_names_;
  std::unordered_map<std::string, NodeId> node_index_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, EdgeId> edge_index_;
  std::vector<Arc> out_arcs_;
  std::vector<int> out_offsets_;
  std::vector<Arc> in_arcs_;
  std::vector<int> in_offsets_;
};

// A connectivity-test instance: graph, endpoints, On-probability and the
// query budget B.
struct Instance {
  std::shared_ptr<const Graph> graph;
  NodeId source = 0;
  NodeId target = 0;
  double p = 0.5;
  int budget = 1;

  int num_edges() const { return graph->num_edges(); }
};

// Validates 0 < p < 1, endpoints in range and 1 <= budget <= max(1, |E|).
Instance MakeInstance(std::shared_ptr<const Graph> graph, NodeId source,
                      NodeId target, double p, int budget);
Instance WithBudget(const Instance& instance, int budget);

// Per-edge Hidden/On/Off labels. Labels only move away from Hidden.
class Belief {
 public:
  Belief() = default;
  explicit Belief(int num_edges)
      : states_(static_cast<size_t>(num_edges), EdgeState::kHidden) {}

  int size() const { return static_cast<int>(states_.size()); }
  EdgeState state(EdgeId e) const { return states_[e]; }
  bool hidden(EdgeId e) const { return states_[e] == EdgeState::kHidden; }
  int num_revealed() const { return revealed_; }
  std::span<const EdgeState> states() const { return states_; }

  // Throws kContractViolation when `e` is already revealed or `state` is
  // Hidden, kInvalidInput when `e` is out of range.
  void Reveal(EdgeId e, EdgeState state);
  Belief With(EdgeId e, EdgeState state) const;

  size_t Hash() const;
  bool operator==(const Belief& other) const = default;

 private:
  std::vector<EdgeState> states_;
  int revealed_ = 0;
};

struct BeliefHash {
  size_t operator()(const Belief& b) const { return b.Hash(); }
};

enum class CertificateKind : uint8_t { kPath, kCut };

// Path certificates keep their s->t edge order; cut certificates are sorted.
struct Certificate {
  CertificateKind kind = CertificateKind::kPath;
  std::vector<EdgeId> edges;

  bool operator==(const Certificate& other) const = default;
};

// A path is alive while none of its edges is Off; a cut while none is On.
bool IsLive(const Certificate& certificate, const Belief& belief);

// Structural checks: `edges` forms a simple s->t walk (path) or its removal
// separates s from t (cut).
bool IsPathOf(const Instance& instance, std::span<const EdgeId> edges);
bool IsCutOf(const Instance& instance, std::span<const EdgeId> edges);

enum class Connectivity : uint8_t { kOpen, kPathFound, kCutFound };

std::string_view ConnectivityName(Connectivity c);

struct CertificateStatus {
  Connectivity kind = Connectivity::kOpen;
  std::optional<Certificate> certificate;
};

// PathFound iff the On edges contain an s->t path, CutFound iff the Off edges
// contain an s-t cut. The certificate only uses On (resp. Off) edges.
CertificateStatus GetCertificateStatus(const Instance& instance,
                                       const Belief& belief);

struct HiddenCertificate {
  Certificate certificate;
  int hidden_count = 0;
};

// Cheapest s->t path in hidden edges; Off edges are excluded. Ties prefer
// fewer hops, then the lexicographically smallest edge-id sequence.
std::optional<HiddenCertificate> MinHiddenPath(const Instance& instance,
                                               const Belief& belief);

// Cheapest s-t cut in hidden edges; On edges may not be cut. Among minimum
// cuts the one with the smallest source side is returned (unique for a given
// belief). Directed cuts are the arcs leaving the source side.
std::optional<HiddenCertificate> MinHiddenCut(const Instance& instance,
                                              const Belief& belief);

}  // namespace lqct

#endif  // LQCT_GRAPH_H_
