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

#ifndef LQCT_HEURISTICS_H_
#define LQCT_HEURISTICS_H_

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lqct/graph.h"
#include "lqct/ip.h"
#include "lqct/policy.h"

namespace lqct {

enum class HeuristicKind : uint8_t {
  kH1,
  kH2Both,
  kH2Path,
  kH2Cut,
  kMinSC,
  kMinSCPath,
  kMinSCCut,
  kAdaptiveSubmodular,
  kTree,
  kMcts,
};

struct HeuristicSpec {
  HeuristicKind kind = HeuristicKind::kH1;
  int horizon = 0;  // B' for tree and mcts.
  int simulations = 1000;
  double epsilon = 0.2;
  uint64_t seed = 0;

  // Canonical string form, accepted by ParseHeuristicSpec.
  std::string ToString() const;
};

// h1 | h2-both | h2-path | h2-cut | minsc | minsc-path | minsc-cut | adasub |
// tree:<B'> | mcts:<B'>,<sims>,<eps>,<seed>
HeuristicSpec ParseHeuristicSpec(std::string_view text);

// Every heuristic in the catalogue with the given horizon for the
// tree-based ones.
std::vector<HeuristicSpec> Catalogue(int tree_horizon, int mcts_horizon,
                                     int mcts_simulations, uint64_t seed);

// The hidden edge where the minimum-hidden path and the minimum-hidden cut
// meet, smallest id first. Throws kContractViolation on a decided state.
EdgeId H1Next(const Instance& instance, const Belief& belief);

enum class SampleOrigin : uint8_t { kH1Tree, kExclusion };

struct SampleSets {
  std::vector<Certificate> paths;
  std::vector<Certificate> cuts;
  std::vector<SampleOrigin> path_origins;
  std::vector<SampleOrigin> cut_origins;
};

// Certificates referenced by H1's depth-`horizon` policy tree, plus shortest
// paths (cuts) found by excluding 1, 2, ... edges of earlier finds, until
// `target` of each are collected.
SampleSets GenerateSamples(const Instance& instance, const Belief& belief,
                           int horizon = 10, int target = 100);

enum class CountVariant : uint8_t { kBoth, kPath, kCut };

// Hidden edge in the most live sampled certificates; nullopt when none.
std::optional<EdgeId> GreedyCountNext(CountVariant variant,
                                      const SampleSets& samples,
                                      const Belief& belief);

// Minimum hitting sets over live samples. MinSC intersects both sets; the
// path (cut) variant intersects the path (cut) hitting set with the current
// minimum-hidden cut (path). nullopt when the intersection is empty.
enum class CoverVariant : uint8_t { kBoth, kPath, kCut };
std::optional<EdgeId> MinSetCoverNext(CoverVariant variant,
                                      const SampleSets& samples,
                                      const Instance& instance,
                                      const Belief& belief,
                                      const SolverBackend& backend);

// Exact minimum set of hidden edges meeting every live certificate.
std::vector<EdgeId> MinimumHittingSet(const std::vector<Certificate>& sets,
                                      const Belief& belief,
                                      const SolverBackend& backend);

// argmin over hidden edges of (live paths avoiding e) x (live cuts avoiding
// e); nullopt when either live set is empty.
std::optional<EdgeId> AdaptiveSubmodularNext(const SampleSets& samples,
                                             const Belief& belief);

// Root query of an optimal tree for min(horizon, remaining) queries.
// `time_budget` bounds the exact solve; nullopt when it runs out first.
std::optional<EdgeId> TreeHeuristicNext(
    const Instance& instance, const Belief& belief, int remaining_budget,
    int horizon, const SolverBackend& backend,
    std::chrono::milliseconds time_budget = std::chrono::hours(72));

// Edges H1 would query within `horizon` steps of `belief`, over both answers.
std::vector<EdgeId> ActionSpace(const Instance& instance, const Belief& belief,
                                int horizon);

struct MctsParams {
  int horizon = 2;
  int simulations = 1000;
  double epsilon = 0.2;
  uint64_t seed = 0;
};

EdgeId MctsNext(const Instance& instance, const Belief& belief,
                int remaining_budget, const MctsParams& params);

struct HeuristicOptions {
  const SolverBackend* backend = nullptr;  // nullptr: DefaultBackend().
  int sample_horizon = 10;
  int sample_target = 100;
  // Recompute samples at every state instead of filtering the initial ones.
  bool regenerate_samples = false;
  // Per-step guard for the tree heuristic; on breach H1 answers instead.
  std::optional<std::chrono::milliseconds> tree_time_guard;
};

// Wraps a heuristic as a Policy. Decisions are cached per (belief, budget);
// fallbacks to H1 are tagged "fallback:h1" in Decision::note.
std::unique_ptr<Policy> MakeHeuristicPolicy(const Instance& instance,
                                            const HeuristicSpec& spec,
                                            const HeuristicOptions& options = {});

}  // namespace lqct

#endif  // LQCT_HEURISTICS_H_
