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

#include "lqct/ip.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "lqct/error.h"

namespace lqct {

bool SatisfiesAll(const IpInstance& ip, std::span<const uint8_t> values) {
  if (values.size() != ip.variables.size()) return false;
  for (uint8_t x : values) {
    if (x > 1) return false;
  }
  for (const IpRow& row : ip.rows) {
    int sum = 0;
    for (const IpTerm& t : row.terms) sum += t.coef * values[t.var];
    switch (row.sense) {
      case RowSense::kLessEqual:
        if (sum > row.rhs) return false;
        break;
      case RowSense::kGreaterEqual:
        if (sum < row.rhs) return false;
        break;
      case RowSense::kEqual:
        if (sum != row.rhs) return false;
        break;
    }
  }
  return true;
}

double ObjectiveValue(const IpInstance& ip, std::span<const uint8_t> values) {
  double total = 0.0;
  for (size_t i = 0; i < ip.variables.size(); ++i) {
    if (values[i] != 0) total += ip.variables[i].cost;
  }
  return total;
}

std::vector<EdgeId> ReferencedEdges(std::span<const Certificate> paths,
                                    std::span<const Certificate> cuts) {
  std::vector<EdgeId> edges;
  for (const Certificate& c : paths) {
    edges.insert(edges.end(), c.edges.begin(), c.edges.end());
  }
  for (const Certificate& c : cuts) {
    edges.insert(edges.end(), c.edges.begin(), c.edges.end());
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

namespace {

std::vector<Certificate> LiveUnder(std::span<const Certificate> certificates,
                                   const Belief& base, EdgeState killer) {
  std::vector<Certificate> live;
  for (const Certificate& c : certificates) {
    bool dead = std::any_of(c.edges.begin(), c.edges.end(), [&](EdgeId e) {
      return e < base.size() && base.state(e) == killer;
    });
    if (!dead) live.push_back(c);
  }
  return live;
}

std::vector<std::vector<int>> Positions(
    std::span<const Certificate> certificates,
    const std::vector<EdgeId>& referenced) {
  std::vector<std::vector<int>> rows;
  rows.reserve(certificates.size());
  for (const Certificate& c : certificates) {
    std::vector<int> pos;
    for (EdgeId e : c.edges) {
      auto it = std::lower_bound(referenced.begin(), referenced.end(), e);
      if (it != referenced.end() && *it == e) {
        pos.push_back(static_cast<int>(it - referenced.begin()));
      }
    }
    std::sort(pos.begin(), pos.end());
    rows.push_back(std::move(pos));
  }
  return rows;
}

}  // namespace

IpInstance BuildTreeProgram(const Graph& graph, const TreeStructure& structure,
                            std::span<const Certificate> paths,
                            std::span<const Certificate> cuts, double p,
                            int budget, const Belief& base) {
  if (structure.max_depth() > budget) {
    Fail(ErrorCode::kInvalidInput, "tree structure deeper than the budget");
  }
  TreeLayout layout;
  layout.structure = structure;
  layout.p = p;
  layout.budget = budget;
  for (EdgeId e : ReferencedEdges(paths, cuts)) {
    if (base.hidden(e)) layout.referenced.push_back(e);
  }
  // Certificates the base belief already disproves impose nothing.
  std::vector<Certificate> live_paths = LiveUnder(paths, base, EdgeState::kOff);
  std::vector<Certificate> live_cuts = LiveUnder(cuts, base, EdgeState::kOn);
  layout.paths = Positions(live_paths, layout.referenced);
  layout.cuts = Positions(live_cuts, layout.referenced);

  const int n = structure.size();
  const int k = static_cast<int>(layout.referenced.size());
  IpInstance ip;
  ip.variables.reserve(static_cast<size_t>(n) * layout.stride());
  for (TreeNodeId i = 0; i < n; ++i) {
    double prob = NodeReachProb(structure, i, p);
    ip.variables.push_back({"d_" + std::to_string(i), 0.0});
    for (EdgeId e : layout.referenced) {
      ip.variables.push_back(
          {"v_" + graph.edge_name(e) + "_" + std::to_string(i), prob});
    }
  }

  auto query_terms = [&](TreeNodeId i, std::vector<IpTerm>& terms) {
    for (int q = 0; q < k; ++q) terms.push_back({layout.query_var(i, q), 1});
  };

  // Every node is a query or Done. Depth-B nodes cannot query: they are Done
  // when that is justified and limit leaves (all zero) otherwise.
  for (TreeNodeId i = 0; i < n; ++i) {
    IpRow row;
    query_terms(i, row.terms);
    if (structure.node(i).depth < budget) {
      row.name = "part_" + std::to_string(i);
      row.terms.insert(row.terms.begin(), {layout.done_var(i), 1});
      row.rhs = 1;
    } else {
      row.name = "lim_" + std::to_string(i);
      if (row.terms.empty()) continue;
      row.rhs = 0;
    }
    row.sense = RowSense::kEqual;
    ip.rows.push_back(std::move(row));
  }

  // Done is inherited by descendants.
  for (TreeNodeId i = 1; i < n; ++i) {
    ip.rows.push_back({"inh_" + std::to_string(i),
                       {{layout.done_var(i), 1},
                        {layout.done_var(structure.node(i).parent), -1}},
                       RowSense::kGreaterEqual,
                       0});
  }

  // No edge is queried twice on a root-to-leaf route.
  for (TreeNodeId leaf = 0; leaf < n; ++leaf) {
    if (!structure.is_leaf(leaf)) continue;
    std::vector<TreeNodeId> route = structure.Route(leaf);
    if (route.size() < 2) continue;
    for (int q = 0; q < k; ++q) {
      IpRow row{"uniq_" + std::to_string(leaf) + "_" +
                    graph.edge_name(layout.referenced[q]),
                {},
                RowSense::kLessEqual,
                1};
      for (TreeNodeId j : route) row.terms.push_back({layout.query_var(j, q), 1});
      ip.rows.push_back(std::move(row));
    }
  }

  // A first-time Done must be justified. On a left child every cut needs an
  // edge answered On along the route; on a right child every path needs an
  // edge answered Off.
  if (!live_paths.empty() && !live_cuts.empty()) {
    ip.rows.push_back(
        {"root_done", {{layout.done_var(0), -1}}, RowSense::kGreaterEqual, 0});
  }
  for (TreeNodeId i = 1; i < n; ++i) {
    const bool left = structure.is_left_child(i);
    const auto& certs = left ? layout.cuts : layout.paths;
    std::vector<TreeNodeId> witnesses;  // N(i)
    for (TreeNodeId j : structure.Route(i)) {
      if (j != 0 && structure.is_left_child(j) == left) {
        witnesses.push_back(structure.node(j).parent);
      }
    }
    for (size_t c = 0; c < certs.size(); ++c) {
      IpRow row{std::string(left ? "cut_" : "path_") + std::to_string(c) +
                    "_" + std::to_string(i),
                {},
                RowSense::kGreaterEqual,
                0};
      for (TreeNodeId j : witnesses) {
        for (int q : certs[c]) row.terms.push_back({layout.query_var(j, q), 1});
      }
      row.terms.push_back({layout.done_var(i), -1});
      row.terms.push_back({layout.done_var(structure.node(i).parent), 1});
      ip.rows.push_back(std::move(row));
    }
  }
  ip.tree = std::move(layout);
  return ip;
}

namespace {

std::string FormatNumber(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// Appends "+ c name" pieces, wrapping long lines as the LP format allows.
class LpLine {
 public:
  explicit LpLine(std::string& out) : out_(out) {}

  void Start(const std::string& head) {
    out_ += head;
    width_ = head.size();
    first_ = true;
  }

  void Term(double coef, const std::string& name) {
    std::string piece;
    if (first_) {
      if (coef < 0) piece = "- ";
    } else {
      piece = coef < 0 ? " - " : " + ";
    }
    double mag = std::fabs(coef);
    if (mag != 1.0) piece += FormatNumber(mag) + " ";
    piece += name;
    Append(piece);
  }

  void Append(const std::string& piece) {
    if (width_ + piece.size() > 78 && !first_) {
      out_ += "\n  ";
      width_ = 2;
    }
    out_ += piece;
    width_ += piece.size();
    first_ = false;
  }

  bool empty() const { return first_; }

 private:
  std::string& out_;
  size_t width_ = 0;
  bool first_ = true;
};

}  // namespace

std::string ExportLp(const IpInstance& ip) {
  std::string out;
  out += "\\ " + std::to_string(ip.variables.size()) + " binary variables, " +
         std::to_string(ip.rows.size()) + " rows\n";
  out += "Minimize\n";
  LpLine line(out);
  line.Start(" obj: ");
  for (const IpVariable& v : ip.variables) {
    if (v.cost != 0.0) line.Term(v.cost, v.name);
  }
  if (line.empty() && !ip.variables.empty()) {
    line.Append("0 " + ip.variables.front().name);
  }
  out += "\nSubject To\n";
  for (const IpRow& row : ip.rows) {
    line.Start(" " + row.name + ": ");
    for (const IpTerm& t : row.terms) {
      line.Term(t.coef, ip.variables[t.var].name);
    }
    if (line.empty()) line.Append("0 " + ip.variables.front().name);
    const char* sense = row.sense == RowSense::kLessEqual      ? " <= "
                        : row.sense == RowSense::kGreaterEqual ? " >= "
                                                               : " = ";
    line.Append(sense + std::to_string(row.rhs));
    out += "\n";
  }
  out += "Binary\n";
  line.Start("");
  for (const IpVariable& v : ip.variables) line.Append(" " + v.name);
  out += "\nEnd\n";
  return out;
}

PolicyTree DecodeTree(const IpInstance& ip, std::span<const uint8_t> values) {
  if (!ip.tree) {
    Fail(ErrorCode::kInvalidInput, "program does not encode a policy tree");
  }
  if (values.size() != ip.variables.size() || !SatisfiesAll(ip, values)) {
    Fail(ErrorCode::kInvalidInput, "assignment violates the tree program");
  }
  const TreeLayout& layout = *ip.tree;
  PolicyTree tree;
  tree.structure = layout.structure;
  tree.p = layout.p;
  tree.labels.assign(layout.structure.size(), NodeLabel::Limit());
  for (TreeNodeId i = 0; i < layout.structure.size(); ++i) {
    if (values[layout.done_var(i)] != 0) {
      tree.labels[i] = NodeLabel::Done();
      continue;
    }
    for (size_t q = 0; q < layout.referenced.size(); ++q) {
      if (values[layout.query_var(i, static_cast<int>(q))] != 0) {
        tree.labels[i] = NodeLabel::Query(layout.referenced[q]);
        break;
      }
    }
  }
  return tree;
}

OptimalTree SolveOptimalTree(const Graph& graph, const TreeStructure& structure,
                             std::span<const Certificate> paths,
                             std::span<const Certificate> cuts, double p,
                             int budget, const Belief& base,
                             const SolverBackend& backend,
                             const SolveLimits& limits) {
  IpInstance ip =
      BuildTreeProgram(graph, structure, paths, cuts, p, budget, base);
  IpSolution solution = backend.Solve(ip, limits);
  if (!SatisfiesAll(ip, solution.values)) {
    Fail(ErrorCode::kInternal, std::string(backend.name()) +
                                   " returned an infeasible assignment");
  }
  OptimalTree result;
  result.tree = DecodeTree(ip, solution.values);
  result.cost = ExpectedCost(result.tree);
  result.search_nodes = solution.search_nodes;
  if (std::fabs(result.cost - solution.objective) > 1e-9) {
    Fail(ErrorCode::kInternal, "objective mismatch between backend and tree");
  }
  if (!ValidateDoneClaims(result.tree, LiveUnder(paths, base, EdgeState::kOff),
                          LiveUnder(cuts, base, EdgeState::kOn))
           .empty()) {
    Fail(ErrorCode::kInternal, "optimal tree makes an unjustified Done claim");
  }
  return result;
}

std::unique_ptr<SolverBackend> MakeBackend(std::string_view name) {
  if (name == "tree-search") return MakeTreeSearchBackend();
  if (name == "branch-and-bound") return MakeBranchAndBoundBackend();
  Fail(ErrorCode::kInvalidInput,
       "unknown backend '" + std::string(name) +
           "' (expected tree-search or branch-and-bound)");
}

const SolverBackend& DefaultBackend() {
  static const std::unique_ptr<SolverBackend> backend =
      MakeTreeSearchBackend();
  return *backend;
}

}  // namespace lqct
