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

#include "lqct/exact_solver.h"

#include <algorithm>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "lqct/error.h"

namespace lqct {

std::string IterationReport::ToCsvLine() const {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%d,%.17g,%d,%d,%d,%.3f", iteration, cost,
                num_paths, num_cuts, structure_size, elapsed_ms);
  return buf;
}

std::string_view SolveStatusName(SolveStatus status) {
  return status == SolveStatus::kOptimal ? "optimal" : "lower_bound_only";
}

namespace {

bool Contains(std::span<const Certificate> set, const Certificate& c) {
  return std::find(set.begin(), set.end(), c) != set.end();
}

bool AllDead(std::span<const Certificate> certificates, const Belief& belief) {
  for (const Certificate& c : certificates) {
    if (IsLive(c, belief)) return false;
  }
  return true;
}

}  // namespace

CertificateGrowth GrowCertificates(const PolicyTree& tree,
                                   const Instance& instance,
                                   const Belief& base,
                                   std::span<const Certificate> paths,
                                   std::span<const Certificate> cuts) {
  CertificateGrowth growth;
  for (TreeNodeId v = 0; v < tree.structure.size(); ++v) {
    if (!IsFirstDone(tree, v)) continue;
    Belief belief = base;
    for (auto [e, state] : RouteObservations(tree, v)) belief.Reveal(e, state);
    // A real certificate justifies the Done claim on its own.
    if (GetCertificateStatus(instance, belief).kind != Connectivity::kOpen) {
      continue;
    }
    if (AllDead(paths, belief)) {
      auto found = MinHiddenPath(instance, belief);
      if (found && !Contains(paths, found->certificate) &&
          !Contains(growth.paths, found->certificate)) {
        growth.paths.push_back(std::move(found->certificate));
      }
    }
    if (AllDead(cuts, belief)) {
      auto found = MinHiddenCut(instance, belief);
      if (found && !Contains(cuts, found->certificate) &&
          !Contains(growth.cuts, found->certificate)) {
        growth.cuts.push_back(std::move(found->certificate));
      }
    }
  }
  return growth;
}

StructureGrowth GrowStructure(const PolicyTree& tree, int budget) {
  std::vector<TreeNodeId> leaves;
  const TreeStructure& s = tree.structure;
  for (TreeNodeId v = 0; v < s.size(); ++v) {
    if (s.is_leaf(v) && tree.labels[v].is_query() &&
        s.node(v).depth < budget) {
      leaves.push_back(v);
    }
  }
  StructureGrowth growth;
  growth.expanded = static_cast<int>(leaves.size());
  growth.structure = leaves.empty() ? s : s.Expanded(leaves).structure;
  return growth;
}

ExactSolver::ExactSolver(const Instance& instance, ExactConfig config)
    : ExactSolver(instance, std::move(config), Belief(instance.num_edges())) {}

ExactSolver::ExactSolver(const Instance& instance, ExactConfig config,
                         Belief base)
    : instance_(instance),
      config_(std::move(config)),
      base_(std::move(base)),
      backend_(config_.backend != nullptr ? config_.backend
                                          : &DefaultBackend()),
      start_(std::chrono::steady_clock::now()),
      deadline_(start_ + config_.time_budget) {
  if (base_.size() != instance.num_edges()) {
    Fail(ErrorCode::kInvalidInput, "belief does not match the graph");
  }
  if (GetCertificateStatus(instance_, base_).kind != Connectivity::kOpen) {
    // Already decided: the empty policy is optimal.
    PolicyTree done;
    done.p = instance_.p;
    done.labels = {NodeLabel::Done()};
    tree_ = std::move(done);
    converged_ = true;
    IterationReport report;
    report.iteration = 1;
    report.structure_size = 1;
    reports_.push_back(report);
    if (config_.on_iteration) config_.on_iteration(report);
    return;
  }
  if (config_.initial_structure) {
    structure_ = *config_.initial_structure;
  } else {
    structure_ = TreeStructure::Complete(
        std::clamp(config_.initial_layers, 1, instance_.budget + 1));
  }
  if (structure_.max_depth() > instance_.budget) {
    Fail(ErrorCode::kInvalidInput, "initial structure deeper than the budget");
  }
  paths_ = config_.initial_paths;
  cuts_ = config_.initial_cuts;
  if (paths_.empty()) {
    paths_.push_back(MinHiddenPath(instance_, base_)->certificate);
  }
  if (cuts_.empty()) {
    cuts_.push_back(MinHiddenCut(instance_, base_)->certificate);
  }
}

bool ExactSolver::Step() {
  if (converged_) return false;
  SolveLimits limits{deadline_};
  OptimalTree solved =
      SolveOptimalTree(*instance_.graph, structure_, paths_, cuts_,
                       instance_.p, instance_.budget, base_, *backend_, limits);
  IterationReport report;
  report.iteration = static_cast<int>(reports_.size()) + 1;
  report.cost = solved.cost;
  report.num_paths = static_cast<int>(paths_.size());
  report.num_cuts = static_cast<int>(cuts_.size());
  report.structure_size = structure_.size();

  CertificateGrowth certs =
      GrowCertificates(solved.tree, instance_, base_, paths_, cuts_);
  StructureGrowth grown = GrowStructure(solved.tree, instance_.budget);
  report.paths_added = static_cast<int>(certs.paths.size());
  report.cuts_added = static_cast<int>(certs.cuts.size());
  report.nodes_expanded = grown.expanded;
  report.elapsed_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start_)
                          .count();

  tree_ = std::move(solved.tree);
  cost_ = solved.cost;
  converged_ = certs.empty() && grown.expanded == 0;
  for (Certificate& c : certs.paths) paths_.push_back(std::move(c));
  for (Certificate& c : certs.cuts) cuts_.push_back(std::move(c));
  structure_ = std::move(grown.structure);
  reports_.push_back(report);
  if (config_.on_iteration) config_.on_iteration(report);
  return !converged_;
}

ExactResult ExactSolver::Run() {
  while (!converged_ &&
         static_cast<int>(reports_.size()) < config_.max_iterations) {
    if (config_.cancel != nullptr && config_.cancel->load()) break;
    if (std::chrono::steady_clock::now() >= deadline_) break;
    try {
      Step();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kTimeout) throw;
      break;
    }
  }
  ExactResult result;
  result.status =
      converged_ ? SolveStatus::kOptimal : SolveStatus::kLowerBoundOnly;
  result.tree = tree_;
  result.cost = cost_;
  result.reports = reports_;
  result.paths = paths_;
  result.cuts = cuts_;
  result.structure = structure_;
  return result;
}

ExactResult SolveExact(const Instance& instance, const ExactConfig& config) {
  return ExactSolver(instance, config).Run();
}

}  // namespace lqct
