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

#ifndef LQCT_IP_H_
#define LQCT_IP_H_

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lqct/graph.h"
#include "lqct/policy_tree.h"

namespace lqct {

struct IpVariable {
  std::string name;
  double cost = 0.0;
};

enum class RowSense : uint8_t { kLessEqual, kGreaterEqual, kEqual };

struct IpTerm {
  int var = 0;
  int coef = 0;
};

struct IpRow {
  std::string name;
  std::vector<IpTerm> terms;
  RowSense sense = RowSense::kEqual;
  int rhs = 0;
};

// Structural side information for programs that encode an optimal policy
// tree. Variables are laid out per node in node-id order: the Done variable
// first, then one query variable per referenced edge.
struct TreeLayout {
  TreeStructure structure;
  std::vector<EdgeId> referenced;          // E^R, sorted by edge id.
  std::vector<std::vector<int>> paths;     // Positions into `referenced`.
  std::vector<std::vector<int>> cuts;
  double p = 0.5;
  int budget = 1;

  int stride() const { return static_cast<int>(referenced.size()) + 1; }
  int done_var(TreeNodeId i) const { return i * stride(); }
  int query_var(TreeNodeId i, int k) const { return i * stride() + 1 + k; }
};

// A 0/1 minimization program.
struct IpInstance {
  std::vector<IpVariable> variables;
  std::vector<IpRow> rows;
  std::optional<TreeLayout> tree;
};

struct IpSolution {
  std::vector<uint8_t> values;
  double objective = 0.0;
  int64_t search_nodes = 0;
};

struct SolveLimits {
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

// Checks every row; used to certify backend output.
bool SatisfiesAll(const IpInstance& ip, std::span<const uint8_t> values);
double ObjectiveValue(const IpInstance& ip, std::span<const uint8_t> values);

// Solvers return an optimal assignment. Among optimal assignments they return
// the lexicographically first one when variables are read in index order and
// 1 ranks before 0. Throws kTimeout past the deadline and kInternal when the
// program is infeasible.
class SolverBackend {
 public:
  struct Capabilities {
    bool general_rows = false;     // Accepts arbitrary programs.
    bool needs_tree_layout = false;
  };

  virtual ~SolverBackend() = default;
  virtual std::string_view name() const = 0;
  virtual Capabilities capabilities() const = 0;
  virtual IpSolution Solve(const IpInstance& ip,
                           const SolveLimits& limits) const = 0;
};

// Depth-first branch-and-bound over the flat program with row propagation.
std::unique_ptr<SolverBackend> MakeBranchAndBoundBackend();
// Memoized search over per-node labels; requires `IpInstance::tree`.
std::unique_ptr<SolverBackend> MakeTreeSearchBackend();
// "tree-search" (default) or "branch-and-bound".
std::unique_ptr<SolverBackend> MakeBackend(std::string_view name);
const SolverBackend& DefaultBackend();

// Union of the edges of all certificates, sorted by edge id.
std::vector<EdgeId> ReferencedEdges(std::span<const Certificate> paths,
                                    std::span<const Certificate> cuts);

// Encodes the cheapest correct labeling of `structure` for (paths, cuts).
// Edges revealed in `base` are not queryable and are left out of E^R.
IpInstance BuildTreeProgram(const Graph& graph, const TreeStructure& structure,
                            std::span<const Certificate> paths,
                            std::span<const Certificate> cuts, double p,
                            int budget, const Belief& base);

// CPLEX LP text for interchange with external MILP solvers.
std::string ExportLp(const IpInstance& ip);

struct OptimalTree {
  PolicyTree tree;
  double cost = 0.0;
  int64_t search_nodes = 0;
};

OptimalTree SolveOptimalTree(const Graph& graph, const TreeStructure& structure,
                             std::span<const Certificate> paths,
                             std::span<const Certificate> cuts, double p,
                             int budget, const Belief& base,
                             const SolverBackend& backend,
                             const SolveLimits& limits = {});

// Reads the node labels back from a tree program's assignment.
PolicyTree DecodeTree(const IpInstance& ip, std::span<const uint8_t> values);

}  // namespace lqct

#endif  // LQCT_IP_H_
