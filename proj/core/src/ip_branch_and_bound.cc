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

#include <chrono>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "lqct/error.h"
#include "lqct/ip.h"

namespace lqct {
namespace {

constexpr double kTieEpsilon = 1e-12;

// Depth-first search over variables in index order, value 1 before 0. An
// incumbent is replaced only by a strictly cheaper assignment, so the first
// optimal assignment met (the lexicographically first) is kept.
class BranchAndBound {
 public:
  BranchAndBound(const IpInstance& ip, const SolveLimits& limits)
      : ip_(ip), limits_(limits) {
    const size_t n = ip.variables.size();
    value_.assign(n, -1);
    occurs_.resize(n);
    for (size_t r = 0; r < ip.rows.size(); ++r) {
      for (const IpTerm& t : ip.rows[r].terms) {
        occurs_[t.var].push_back({static_cast<int>(r), t.coef});
      }
    }
    fixed_.assign(ip.rows.size(), 0);
    pos_free_.assign(ip.rows.size(), 0);
    neg_free_.assign(ip.rows.size(), 0);
    for (size_t r = 0; r < ip.rows.size(); ++r) {
      for (const IpTerm& t : ip.rows[r].terms) {
        (t.coef > 0 ? pos_free_[r] : neg_free_[r]) += t.coef;
      }
    }
    marks_.assign(n, 0);
  }

  IpSolution Run() {
    for (size_t r = 0; r < ip_.rows.size(); ++r) {
      if (!RowFeasible(static_cast<int>(r), Lo(r), Hi(r))) Infeasible();
    }
    std::vector<int> root_trail;
    if (!PropagateAll(root_trail)) Infeasible();
    Search(0);
    if (best_.empty()) Infeasible();
    IpSolution solution;
    solution.values = best_;
    solution.objective = ObjectiveValue(ip_, best_);
    solution.search_nodes = nodes_;
    return solution;
  }

 private:
  struct Occurrence {
    int row;
    int coef;
  };

  [[noreturn]] static void Infeasible() {
    Fail(ErrorCode::kInternal, "0/1 program is infeasible");
  }

  int Lo(size_t r) const { return fixed_[r] + neg_free_[r]; }
  int Hi(size_t r) const { return fixed_[r] + pos_free_[r]; }

  bool RowFeasible(int r, int lo, int hi) const {
    const IpRow& row = ip_.rows[r];
    switch (row.sense) {
      case RowSense::kLessEqual:
        return lo <= row.rhs;
      case RowSense::kGreaterEqual:
        return hi >= row.rhs;
      case RowSense::kEqual:
        return lo <= row.rhs && row.rhs <= hi;
    }
    return false;
  }

  void Assign(int var, int8_t val, std::vector<int>& trail) {
    value_[var] = val;
    trail.push_back(var);
    if (val == 1) cost_ += ip_.variables[var].cost;
    for (const Occurrence& o : occurs_[var]) {
      (o.coef > 0 ? pos_free_[o.row] : neg_free_[o.row]) -= o.coef;
      if (val == 1) fixed_[o.row] += o.coef;
    }
  }

  void Undo(std::vector<int>& trail, size_t mark) {
    while (trail.size() > mark) {
      int var = trail.back();
      trail.pop_back();
      for (const Occurrence& o : occurs_[var]) {
        (o.coef > 0 ? pos_free_[o.row] : neg_free_[o.row]) += o.coef;
        if (value_[var] == 1) fixed_[o.row] -= o.coef;
      }
      if (value_[var] == 1) cost_ -= ip_.variables[var].cost;
      value_[var] = -1;
    }
  }

  // Fixes every free variable of row `r` that only one value keeps feasible.
  bool PropagateRow(int r, std::vector<int>& trail, std::vector<int>& queue) {
    for (const IpTerm& t : ip_.rows[r].terms) {
      if (value_[t.var] != -1) continue;
      int lo = Lo(r);
      int hi = Hi(r);
      if (!RowFeasible(r, lo, hi)) return false;
      int c = t.coef;
      bool one_ok = RowFeasible(r, lo + (c > 0 ? c : 0), hi + (c < 0 ? c : 0));
      bool zero_ok = RowFeasible(r, lo - (c < 0 ? c : 0), hi - (c > 0 ? c : 0));
      if (!one_ok && !zero_ok) return false;
      if (one_ok != zero_ok) {
        Assign(t.var, one_ok ? 1 : 0, trail);
        for (const Occurrence& o : occurs_[t.var]) queue.push_back(o.row);
      }
    }
    return RowFeasible(r, Lo(r), Hi(r));
  }

  bool Propagate(std::vector<int>& queue, std::vector<int>& trail) {
    while (!queue.empty()) {
      int r = queue.back();
      queue.pop_back();
      if (!PropagateRow(r, trail, queue)) return false;
    }
    return true;
  }

  bool PropagateAll(std::vector<int>& trail) {
    std::vector<int> queue;
    for (size_t r = 0; r < ip_.rows.size(); ++r) {
      queue.push_back(static_cast<int>(r));
    }
    return Propagate(queue, trail);
  }

  // Fixed cost plus, for a set of variable-disjoint covering rows that still
  // need a variable set to 1, the cheapest such variable of each.
  double LowerBound() {
    double bound = cost_;
    ++epoch_;
    for (size_t r = 0; r < ip_.rows.size(); ++r) {
      const IpRow& row = ip_.rows[r];
      if (row.sense == RowSense::kLessEqual) continue;
      if (neg_free_[r] != 0 || fixed_[r] >= row.rhs) continue;
      double cheapest = std::numeric_limits<double>::infinity();
      bool disjoint = true;
      for (const IpTerm& t : row.terms) {
        if (value_[t.var] != -1 || t.coef <= 0) continue;
        if (marks_[t.var] == epoch_) {
          disjoint = false;
          break;
        }
        cheapest = std::min(cheapest, ip_.variables[t.var].cost);
      }
      if (!disjoint || cheapest <= 0.0 ||
          cheapest == std::numeric_limits<double>::infinity()) {
        continue;
      }
      for (const IpTerm& t : row.terms) {
        if (value_[t.var] == -1) marks_[t.var] = epoch_;
      }
      bound += cheapest;
    }
    return bound;
  }

  void CheckDeadline() {
    if ((++nodes_ & 1023) != 0 || !limits_.deadline) return;
    if (std::chrono::steady_clock::now() > *limits_.deadline) {
      Fail(ErrorCode::kTimeout, "branch-and-bound deadline reached");
    }
  }

  void Search(size_t from) {
    CheckDeadline();
    if (!best_.empty() && LowerBound() >= best_cost_ - kTieEpsilon) return;
    size_t var = from;
    while (var < value_.size() && value_[var] != -1) ++var;
    if (var == value_.size()) {
      if (best_.empty() || cost_ < best_cost_ - kTieEpsilon) {
        best_.assign(value_.begin(), value_.end());
        best_cost_ = cost_;
      }
      return;
    }
    for (int8_t val : {int8_t{1}, int8_t{0}}) {
      size_t mark = trail_.size();
      Assign(static_cast<int>(var), val, trail_);
      std::vector<int> queue;
      for (const Occurrence& o : occurs_[var]) queue.push_back(o.row);
      if (Propagate(queue, trail_)) Search(var + 1);
      Undo(trail_, mark);
    }
  }

  const IpInstance& ip_;
  SolveLimits limits_;
  std::vector<int8_t> value_;
  std::vector<std::vector<Occurrence>> occurs_;
  std::vector<int> fixed_;
  std::vector<int> pos_free_;
  std::vector<int> neg_free_;
  std::vector<int> trail_;
  std::vector<uint64_t> marks_;
  uint64_t epoch_ = 0;
  double cost_ = 0.0;
  std::vector<uint8_t> best_;
  double best_cost_ = 0.0;
  int64_t nodes_ = 0;
};

class BranchAndBoundBackend : public SolverBackend {
 public:
  std::string_view name() const override { return "branch-and-bound"; }
  Capabilities capabilities() const override {
    return {.general_rows = true, .needs_tree_layout = false};
  }
  IpSolution Solve(const IpInstance& ip,
                   const SolveLimits& limits) const override {
    return BranchAndBound(ip, limits).Run();
  }
};

}  // namespace

std::unique_ptr<SolverBackend> MakeBranchAndBoundBackend() {
  return std::make_unique<BranchAndBoundBackend>();
}

}  // namespace lqct
