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

#ifndef LQCT_EXACT_SOLVER_H_
#define LQCT_EXACT_SOLVER_H_

#include <atomic>
#include <chrono>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lqct/graph.h"
#include "lqct/ip.h"
#include "lqct/policy_tree.h"

namespace lqct {

struct IterationReport {
  int iteration = 0;         // 1-based.
  double cost = 0.0;         // c(S,P,C): a lower bound on the optimum.
  int num_paths = 0;         // |P| used for this solve.
  int num_cuts = 0;
  int structure_size = 0;    // |S| used for this solve.
  double elapsed_ms = 0.0;   // Since the start of the run.
  int paths_added = 0;       // Growth applied after this solve.
  int cuts_added = 0;
  int nodes_expanded = 0;

  // "iter,cost,|P|,|C|,|S|,ms"
  std::string ToCsvLine() const;
};

struct ExactConfig {
  // Layers of the initial complete structure, clamped to B+1.
  int initial_layers = 4;
  // Overrides for scripted runs; empty means the defaults.
  std::optional<TreeStructure> initial_structure;
  std::vector<Certificate> initial_paths;
  std::vector<Certificate> initial_cuts;
  const SolverBackend* backend = nullptr;  // nullptr: DefaultBackend().
  std::chrono::milliseconds time_budget = std::chrono::hours(72);
  int max_iterations = 10000;
  std::function<void(const IterationReport&)> on_iteration;
  const std::atomic<bool>* cancel = nullptr;
};

enum class SolveStatus : uint8_t { kOptimal, kLowerBoundOnly };

std::string_view SolveStatusName(SolveStatus status);

struct ExactResult {
  SolveStatus status = SolveStatus::kLowerBoundOnly;
  // For kOptimal an optimal policy; otherwise the last relaxed tree, if any.
  std::optional<PolicyTree> tree;
  double cost = 0.0;
  std::vector<IterationReport> reports;
  std::vector<Certificate> paths;
  std::vector<Certificate> cuts;
  TreeStructure structure;
};

struct CertificateGrowth {
  std::vector<Certificate> paths;
  std::vector<Certificate> cuts;

  bool empty() const { return paths.empty() && cuts.empty(); }
};

// For every first-time Done node that disproves all of `paths` without a real
// cut, adds a path still possible under that node's belief, and the mirror for
// cuts. Certificates already known are never added again.
CertificateGrowth GrowCertificates(const PolicyTree& tree,
                                   const Instance& instance,
                                   const Belief& base,
                                   std::span<const Certificate> paths,
                                   std::span<const Certificate> cuts);

struct StructureGrowth {
  TreeStructure structure;
  int expanded = 0;
};

// Gives two children to every query leaf above depth `budget`.
StructureGrowth GrowStructure(const PolicyTree& tree, int budget);

// The outer/inner growth loop. Each Step() solves the current relaxation and
// applies growth; costs never decrease from step to step.
class ExactSolver {
 public:
  // `base` holds edges revealed before the solve; the instance budget is the
  // number of queries still available.
  ExactSolver(const Instance& instance, ExactConfig config, Belief base);
  explicit ExactSolver(const Instance& instance, ExactConfig config = {});

  // Returns false once converged (or decided). Throws kTimeout when the
  // configured deadline passes mid-solve.
  bool Step();
  bool converged() const { return converged_; }

  const std::vector<Certificate>& paths() const { return paths_; }
  const std::vector<Certificate>& cuts() const { return cuts_; }
  const TreeStructure& structure() const { return structure_; }
  const std::optional<PolicyTree>& tree() const { return tree_; }
  double cost() const { return cost_; }
  const std::vector<IterationReport>& reports() const { return reports_; }

  // Steps until convergence, the iteration cap, the deadline or cancellation.
  ExactResult Run();

 private:
  Instance instance_;
  ExactConfig config_;
  Belief base_;
  const SolverBackend* backend_;
  std::chrono::steady_clock::time_point start_;
  std::chrono::steady_clock::time_point deadline_;
  std::vector<Certificate> paths_;
  std::vector<Certificate> cuts_;
  TreeStructure structure_;
  std::optional<PolicyTree> tree_;
  double cost_ = 0.0;
  bool converged_ = false;
  std::vector<IterationReport> reports_;
};

ExactResult SolveExact(const Instance& instance, const ExactConfig& config = {});

}  // namespace lqct

#endif  // LQCT_EXACT_SOLVER_H_
