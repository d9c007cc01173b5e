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

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "lqct/error.h"
#include "lqct/ip.h"

namespace lqct {
namespace {

constexpr double kTieEpsilon = 1e-12;
constexpr double kInfinity = std::numeric_limits<double>::infinity();
constexpr int kNoChoice = -1;
constexpr int kDoneChoice = -2;
constexpr int kLimitChoice = -3;

// Solves the tree program node by node. The subtree below a node depends only
// on the answers observed on its route, so values are memoized per (node,
// observations). Labels are tried in the order Done, queries by edge id,
// limit; only strictly cheaper alternatives replace the current best, which
// yields the lexicographically first optimum of the flat program.
class TreeSearch {
 public:
  TreeSearch(const TreeLayout& layout, const SolveLimits& limits)
      : layout_(layout),
        s_(layout.structure),
        limits_(limits),
        k_(static_cast<int>(layout.referenced.size())) {
    prob_.resize(s_.size());
    for (TreeNodeId i = 0; i < s_.size(); ++i) {
      prob_[i] = NodeReachProb(s_, i, layout.p);
    }
    edge_paths_.resize(k_);
    edge_cuts_.resize(k_);
    for (size_t c = 0; c < layout.paths.size(); ++c) {
      for (int q : layout.paths[c]) edge_paths_[q].push_back(static_cast<int>(c));
    }
    for (size_t c = 0; c < layout.cuts.size(); ++c) {
      for (int q : layout.cuts[c]) edge_cuts_[q].push_back(static_cast<int>(c));
    }
    state_.assign(k_, EdgeState::kHidden);
    path_kills_.assign(layout.paths.size(), 0);
    cut_kills_.assign(layout.cuts.size(), 0);
    live_paths_ = static_cast<int>(layout.paths.size());
    live_cuts_ = static_cast<int>(layout.cuts.size());
    live_uses_.assign(k_, 0);
    for (int q = 0; q < k_; ++q) {
      live_uses_[q] = static_cast<int>(edge_paths_[q].size() +
                                       edge_cuts_[q].size());
    }
  }

  IpSolution Run(size_t num_variables) {
    double cost = Solve(0, kInfinity);
    if (cost == kInfinity) {
      Fail(ErrorCode::kInternal, "tree program is infeasible");
    }
    IpSolution solution;
    solution.values.assign(num_variables, 0);
    Extract(0, solution.values);
    solution.objective = ObjectiveValue(solution.values);
    solution.search_nodes = calls_;
    return solution;
  }

 private:
  struct Entry {
    double value = 0.0;
    bool exact = false;
    int choice = kNoChoice;
  };

  double ObjectiveValue(const std::vector<uint8_t>& values) const {
    double total = 0.0;
    for (TreeNodeId i = 0; i < s_.size(); ++i) {
      for (int q = 0; q < k_; ++q) {
        if (values[layout_.query_var(i, q)] != 0) total += prob_[i];
      }
    }
    return total;
  }

  bool DoneAllowed(TreeNodeId v) const {
    if (v == 0) return layout_.paths.empty() || layout_.cuts.empty();
    return s_.is_left_child(v) ? live_cuts_ == 0 : live_paths_ == 0;
  }

  std::string Key(TreeNodeId v) const {
    std::string key(reinterpret_cast<const char*>(&v), sizeof(v));
    std::vector<int32_t> observed = route_;
    std::sort(observed.begin(), observed.end());
    key.append(reinterpret_cast<const char*>(observed.data()),
               observed.size() * sizeof(int32_t));
    return key;
  }

  void Reveal(int q, EdgeState st) {
    state_[q] = st;
    route_.push_back(st == EdgeState::kOn ? q + 1 : -(q + 1));
    if (st == EdgeState::kOff) {
      for (int c : edge_paths_[q]) {
        if (path_kills_[c]++ == 0) {
          --live_paths_;
          for (int r : layout_.paths[c]) --live_uses_[r];
        }
      }
    } else {
      for (int c : edge_cuts_[q]) {
        if (cut_kills_[c]++ == 0) {
          --live_cuts_;
          for (int r : layout_.cuts[c]) --live_uses_[r];
        }
      }
    }
  }

  void Hide(int q) {
    EdgeState st = state_[q];
    state_[q] = EdgeState::kHidden;
    route_.pop_back();
    if (st == EdgeState::kOff) {
      for (int c : edge_paths_[q]) {
        if (--path_kills_[c] == 0) {
          ++live_paths_;
          for (int r : layout_.paths[c]) ++live_uses_[r];
        }
      }
    } else {
      for (int c : edge_cuts_[q]) {
        if (--cut_kills_[c] == 0) {
          ++live_cuts_;
          for (int r : layout_.cuts[c]) ++live_uses_[r];
        }
      }
    }
  }

  void CheckDeadline() {
    if ((++calls_ & 1023) != 0 || !limits_.deadline) return;
    if (std::chrono::steady_clock::now() > *limits_.deadline) {
      Fail(ErrorCode::kTimeout, "tree search deadline reached");
    }
  }

  // Returns the optimal subtree cost below `v` when it is < `ub`; otherwise
  // some value >= `ub`.
  double Solve(TreeNodeId v, double ub) {
    CheckDeadline();
    const TreeNode& node = s_.node(v);
    if (DoneAllowed(v) || node.depth >= layout_.budget) return 0.0;

    std::string key = Key(v);
    auto it = memo_.find(key);
    if (it != memo_.end()) {
      if (it->second.exact || it->second.value >= ub) return it->second.value;
    }
    if (prob_[v] >= ub) return prob_[v];

    double best = kInfinity;
    int choice = kNoChoice;
    bool useless_tried = false;
    for (int q = 0; q < k_; ++q) {
      if (state_[q] != EdgeState::kHidden) continue;
      // Edges outside every live certificate are interchangeable; the
      // smallest one stands for all of them.
      if (live_uses_[q] == 0) {
        if (useless_tried) continue;
        useless_tried = true;
      }
      double limit = std::min(ub, best - kTieEpsilon);
      double cost = prob_[v];
      if (cost >= limit) break;
      if (!s_.is_leaf(v)) {
        // The Off branch costs at least one query unless it may stop there.
        Reveal(q, EdgeState::kOff);
        double right_floor = MustQuery(node.right) ? prob_[node.right] : 0.0;
        Hide(q);
        if (cost + right_floor >= limit) continue;
        // A child result is exact only when it is below the bound passed
        // down; compare against that bound itself so rounding in the sums
        // can never promote a pruned value.
        double left_ub = limit - cost - right_floor;
        Reveal(q, EdgeState::kOn);
        double left = Solve(node.left, left_ub);
        Hide(q);
        if (left >= left_ub) continue;
        cost += left;
        double right_ub = limit - cost;
        Reveal(q, EdgeState::kOff);
        double right = Solve(node.right, right_ub);
        Hide(q);
        if (right >= right_ub) continue;
        cost += right;
        if (cost >= limit) continue;
      }
      best = cost;
      choice = q;
    }

    Entry& entry = memo_[key];
    if (choice != kNoChoice) {
      entry = {best, true, choice};
      return best;
    }
    if (!useless_tried && best == kInfinity && AllQueried()) {
      entry = {kInfinity, true, kNoChoice};
      return kInfinity;
    }
    entry.value = std::max(entry.value, ub);
    return entry.value;
  }

  bool MustQuery(TreeNodeId v) const {
    return !DoneAllowed(v) && s_.node(v).depth < layout_.budget;
  }

  bool AllQueried() const {
    for (int q = 0; q < k_; ++q) {
      if (state_[q] == EdgeState::kHidden) return false;
    }
    return true;
  }

  void Extract(TreeNodeId v, std::vector<uint8_t>& values) {
    const TreeNode& node = s_.node(v);
    if (DoneAllowed(v)) {
      MarkDone(v, values);
      return;
    }
    if (node.depth >= layout_.budget) return;  // Limit leaf.
    auto it = memo_.find(Key(v));
    if (it == memo_.end() || !it->second.exact ||
        it->second.choice == kNoChoice) {
      Fail(ErrorCode::kInternal, "tree search lost its optimal choice");
    }
    int q = it->second.choice;
    values[layout_.query_var(v, q)] = 1;
    if (s_.is_leaf(v)) return;
    Reveal(q, EdgeState::kOn);
    Extract(node.left, values);
    Hide(q);
    Reveal(q, EdgeState::kOff);
    Extract(node.right, values);
    Hide(q);
  }

  void MarkDone(TreeNodeId v, std::vector<uint8_t>& values) const {
    values[layout_.done_var(v)] = 1;
    const TreeNode& node = s_.node(v);
    if (node.left == kNoTreeNode) return;
    MarkDone(node.left, values);
    MarkDone(node.right, values);
  }

  const TreeLayout& layout_;
  const TreeStructure& s_;
  SolveLimits limits_;
  int k_;
  std::vector<double> prob_;
  std::vector<std::vector<int>> edge_paths_;
  std::vector<std::vector<int>> edge_cuts_;
  std::vector<EdgeState> state_;
  std::vector<int> path_kills_;
  std::vector<int> cut_kills_;
  int live_paths_ = 0;
  int live_cuts_ = 0;
  std::vector<int> live_uses_;
  std::vector<int32_t> route_;
  std::unordered_map<std::string, Entry> memo_;
  int64_t calls_ = 0;
};

class TreeSearchBackend : public SolverBackend {
 public:
  std::string_view name() const override { return "tree-search"; }
  Capabilities capabilities() const override {
    return {.general_rows = false, .needs_tree_layout = true};
  }
  IpSolution Solve(const IpInstance& ip,
                   const SolveLimits& limits) const override {
    if (!ip.tree) {
      Fail(ErrorCode::kInvalidInput,
           "tree-search backend needs a program built from a tree structure");
    }
    return TreeSearch(*ip.tree, limits).Run(ip.variables.size());
  }
};

}  // namespace

std::unique_ptr<SolverBackend> MakeTreeSearchBackend() {
  return std::make_unique<TreeSearchBackend>();
}

}  // namespace lqct
