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

#include "lqct/heuristics.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lqct/error.h"
#include "lqct/exact_solver.h"

namespace lqct {
namespace {

constexpr std::string_view kFallbackNote = "fallback:h1";

bool Contains(const std::vector<Certificate>& set, const Certificate& c) {
  return std::find(set.begin(), set.end(), c) != set.end();
}

template <typename T>
T ParseNumber(std::string_view text, std::string_view what) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                   value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    Fail(ErrorCode::kInvalidInput,
         "bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> Split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  while (true) {
    size_t end = text.find(sep, start);
    parts.push_back(text.substr(start, end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return parts;
}

double UniformDouble(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<Certificate> LiveOnly(const std::vector<Certificate>& set,
                                  const Belief& belief) {
  std::vector<Certificate> live;
  for (const Certificate& c : set) {
    if (IsLive(c, belief)) live.push_back(c);
  }
  return live;
}

}  // namespace

std::string HeuristicSpec::ToString() const {
  switch (kind) {
    case HeuristicKind::kH1:
      return "h1";
    case HeuristicKind::kH2Both:
      return "h2-both";
    case HeuristicKind::kH2Path:
      return "h2-path";
    case HeuristicKind::kH2Cut:
      return "h2-cut";
    case HeuristicKind::kMinSC:
      return "minsc";
    case HeuristicKind::kMinSCPath:
      return "minsc-path";
    case HeuristicKind::kMinSCCut:
      return "minsc-cut";
    case HeuristicKind::kAdaptiveSubmodular:
      return "adasub";
    case HeuristicKind::kTree:
      return "tree:" + std::to_string(horizon);
    case HeuristicKind::kMcts: {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "mcts:%d,%d,%g,%llu", horizon,
                    simulations, epsilon,
                    static_cast<unsigned long long>(seed));
      return buf;
    }
  }
  return "unknown";
}

HeuristicSpec ParseHeuristicSpec(std::string_view text) {
  static const std::map<std::string_view, HeuristicKind> kSimple = {
      {"h1", HeuristicKind::kH1},
      {"h2-both", HeuristicKind::kH2Both},
      {"h2-path", HeuristicKind::kH2Path},
      {"h2-cut", HeuristicKind::kH2Cut},
      {"minsc", HeuristicKind::kMinSC},
      {"minsc-path", HeuristicKind::kMinSCPath},
      {"minsc-cut", HeuristicKind::kMinSCCut},
      {"adasub", HeuristicKind::kAdaptiveSubmodular},
  };
  HeuristicSpec spec;
  if (auto it = kSimple.find(text); it != kSimple.end()) {
    spec.kind = it->second;
    return spec;
  }
  if (text.starts_with("tree:")) {
    spec.kind = HeuristicKind::kTree;
    spec.horizon = ParseNumber<int>(text.substr(5), "tree horizon");
  } else if (text.starts_with("mcts:")) {
    auto parts = Split(text.substr(5), ',');
    if (parts.size() != 4) {
      Fail(ErrorCode::kInvalidInput,
           "mcts spec needs mcts:<B'>,<sims>,<eps>,<seed>");
    }
    spec.kind = HeuristicKind::kMcts;
    spec.horizon = ParseNumber<int>(parts[0], "mcts horizon");
    spec.simulations = ParseNumber<int>(parts[1], "mcts simulation count");
    spec.epsilon = ParseNumber<double>(parts[2], "mcts epsilon");
    spec.seed = ParseNumber<uint64_t>(parts[3], "mcts seed");
    if (spec.simulations < 1 || !(spec.epsilon >= 0.0 && spec.epsilon <= 1.0)) {
      Fail(ErrorCode::kInvalidInput,
           "mcts needs sims >= 1 and 0 <= eps <= 1");
    }
  } else {
    Fail(ErrorCode::kInvalidInput,
         "unknown heuristic '" + std::string(text) + "'");
  }
  if (spec.horizon < 1) {
    Fail(ErrorCode::kInvalidInput, "heuristic horizon must be >= 1");
  }
  return spec;
}

std::vector<HeuristicSpec> Catalogue(int tree_horizon, int mcts_horizon,
                                     int mcts_simulations, uint64_t seed) {
  std::vector<HeuristicSpec> specs;
  for (HeuristicKind kind :
       {HeuristicKind::kH1, HeuristicKind::kH2Both, HeuristicKind::kH2Path,
        HeuristicKind::kH2Cut, HeuristicKind::kMinSC,
        HeuristicKind::kMinSCPath, HeuristicKind::kMinSCCut,
        HeuristicKind::kAdaptiveSubmodular}) {
    specs.push_back({kind});
  }
  specs.push_back({HeuristicKind::kTree, tree_horizon});
  specs.push_back({HeuristicKind::kMcts, mcts_horizon, mcts_simulations, 0.2,
                   seed});
  return specs;
}

EdgeId H1Next(const Instance& instance, const Belief& belief) {
  auto path = MinHiddenPath(instance, belief);
  auto cut = MinHiddenCut(instance, belief);
  if (!path || !cut) {
    Fail(ErrorCode::kContractViolation, "H1 called on a decided state");
  }
  EdgeId best = -1;
  for (EdgeId e : path->certificate.edges) {
    if (!belief.hidden(e)) continue;
    if (std::binary_search(cut->certificate.edges.begin(),
                           cut->certificate.edges.end(), e) &&
        (best == -1 || e < best)) {
      best = e;
    }
  }
  if (best == -1) {
    Fail(ErrorCode::kInternal, "minimum path and cut do not meet");
  }
  return best;
}

namespace {

void AddSample(std::vector<Certificate>& set, std::vector<SampleOrigin>& origins,
               const Certificate& c, SampleOrigin origin) {
  if (Contains(set, c)) return;
  set.push_back(c);
  origins.push_back(origin);
}

void SampleH1Tree(const Instance& instance, const Belief& belief, int depth,
                  int horizon, SampleSets& samples) {
  auto path = MinHiddenPath(instance, belief);
  auto cut = MinHiddenCut(instance, belief);
  if (!path || !cut) return;
  AddSample(samples.paths, samples.path_origins, path->certificate,
            SampleOrigin::kH1Tree);
  AddSample(samples.cuts, samples.cut_origins, cut->certificate,
            SampleOrigin::kH1Tree);
  if (depth + 1 >= horizon) return;
  EdgeId e = H1Next(instance, belief);
  SampleH1Tree(instance, belief.With(e, EdgeState::kOn), depth + 1, horizon,
               samples);
  SampleH1Tree(instance, belief.With(e, EdgeState::kOff), depth + 1, horizon,
               samples);
}

// Breadth-first over exclusion sets: each certificate found under exclusion
// set X spawns X+{e} for each of its hidden edges e. Excluded edges are
// forced to `excluded_state` so the search must route around them.
void SampleByExclusion(
    const Belief& belief, int target, EdgeState excluded_state,
    const std::function<std::optional<HiddenCertificate>(const Belief&)>& find,
    std::vector<Certificate>& set, std::vector<SampleOrigin>& origins) {
  auto first = find(belief);
  if (!first || target <= 0) return;
  std::vector<Certificate> collected = {first->certificate};
  AddSample(set, origins, first->certificate, SampleOrigin::kExclusion);
  std::set<std::vector<EdgeId>> seen = {{}};
  std::deque<std::pair<std::vector<EdgeId>, Certificate>> queue;
  queue.push_back({{}, first->certificate});
  // Bounds the work on graphs with fewer certificates than the target.
  int evaluations_left = 50 * target;
  while (!queue.empty() && static_cast<int>(collected.size()) < target &&
         evaluations_left > 0) {
    auto [excluded, found] = std::move(queue.front());
    queue.pop_front();
    for (EdgeId e : found.edges) {
      if (!belief.hidden(e)) continue;
      std::vector<EdgeId> next = excluded;
      next.insert(std::upper_bound(next.begin(), next.end(), e), e);
      if (!seen.insert(next).second) continue;
      if (--evaluations_left < 0) break;
      Belief b = belief;
      for (EdgeId x : next) b.Reveal(x, excluded_state);
      auto hit = find(b);
      if (!hit) continue;
      if (!Contains(collected, hit->certificate)) {
        collected.push_back(hit->certificate);
        AddSample(set, origins, hit->certificate, SampleOrigin::kExclusion);
        if (static_cast<int>(collected.size()) >= target) break;
      }
      queue.push_back({std::move(next), std::move(hit->certificate)});
    }
  }
}

}  // namespace

SampleSets GenerateSamples(const Instance& instance, const Belief& belief,
                           int horizon, int target) {
  SampleSets samples;
  if (horizon >= 1) SampleH1Tree(instance, belief, 0, horizon, samples);
  SampleByExclusion(
      belief, target, EdgeState::kOff,
      [&](const Belief& b) { return MinHiddenPath(instance, b); },
      samples.paths, samples.path_origins);
  SampleByExclusion(
      belief, target, EdgeState::kOn,
      [&](const Belief& b) { return MinHiddenCut(instance, b); }, samples.cuts,
      samples.cut_origins);
  return samples;
}

std::optional<EdgeId> GreedyCountNext(CountVariant variant,
                                      const SampleSets& samples,
                                      const Belief& belief) {
  std::vector<int> count(belief.size(), 0);
  auto tally = [&](const std::vector<Certificate>& set) {
    for (const Certificate& c : set) {
      if (!IsLive(c, belief)) continue;
      for (EdgeId e : c.edges) {
        if (belief.hidden(e)) ++count[e];
      }
    }
  };
  if (variant != CountVariant::kCut) tally(samples.paths);
  if (variant != CountVariant::kPath) tally(samples.cuts);
  auto best = std::max_element(count.begin(), count.end());
  if (best == count.end() || *best == 0) return std::nullopt;
  return static_cast<EdgeId>(best - count.begin());
}

std::vector<EdgeId> MinimumHittingSet(const std::vector<Certificate>& sets,
                                      const Belief& belief,
                                      const SolverBackend& backend) {
  std::vector<std::vector<EdgeId>> rows;
  for (const Certificate& c : sets) {
    std::vector<EdgeId> row;
    for (EdgeId e : c.edges) {
      if (belief.hidden(e)) row.push_back(e);
    }
    std::sort(row.begin(), row.end());
    if (row.empty()) {
      Fail(ErrorCode::kInvalidInput, "certificate without hidden edges");
    }
    rows.push_back(std::move(row));
  }
  // Rows containing another row are implied by it.
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  std::vector<std::vector<EdgeId>> kept;
  for (const auto& row : rows) {
    bool implied = false;
    for (const auto& k : kept) {
      if (std::includes(row.begin(), row.end(), k.begin(), k.end())) {
        implied = true;
        break;
      }
    }
    if (!implied) kept.push_back(row);
  }
  std::vector<EdgeId> vars;
  for (const auto& row : kept) vars.insert(vars.end(), row.begin(), row.end());
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  if (vars.empty()) return {};

  IpInstance ip;
  for (EdgeId e : vars) ip.variables.push_back({"x_" + std::to_string(e), 1.0});
  for (size_t r = 0; r < kept.size(); ++r) {
    IpRow row{"hit_" + std::to_string(r), {}, RowSense::kGreaterEqual, 1};
    for (EdgeId e : kept[r]) {
      int var = static_cast<int>(
          std::lower_bound(vars.begin(), vars.end(), e) - vars.begin());
      row.terms.push_back({var, 1});
    }
    ip.rows.push_back(std::move(row));
  }
  static const std::unique_ptr<SolverBackend> generic =
      MakeBranchAndBoundBackend();
  const SolverBackend& solver =
      backend.capabilities().general_rows ? backend : *generic;
  IpSolution solution = solver.Solve(ip, {});
  std::vector<EdgeId> chosen;
  for (size_t i = 0; i < vars.size(); ++i) {
    if (solution.values[i] != 0) chosen.push_back(vars[i]);
  }
  return chosen;
}

std::optional<EdgeId> MinSetCoverNext(CoverVariant variant,
                                      const SampleSets& samples,
                                      const Instance& instance,
                                      const Belief& belief,
                                      const SolverBackend& backend) {
  std::vector<EdgeId> left;
  std::vector<EdgeId> right;
  if (variant != CoverVariant::kCut) {
    auto live = LiveOnly(samples.paths, belief);
    if (live.empty()) return std::nullopt;
    left = MinimumHittingSet(live, belief, backend);
  }
  if (variant != CoverVariant::kPath) {
    auto live = LiveOnly(samples.cuts, belief);
    if (live.empty()) return std::nullopt;
    right = MinimumHittingSet(live, belief, backend);
  }
  if (variant == CoverVariant::kPath) {
    auto cut = MinHiddenCut(instance, belief);
    if (!cut) return std::nullopt;
    right = cut->certificate.edges;
  } else if (variant == CoverVariant::kCut) {
    auto path = MinHiddenPath(instance, belief);
    if (!path) return std::nullopt;
    left = path->certificate.edges;
    std::sort(left.begin(), left.end());
  }
  for (EdgeId e : left) {
    if (belief.hidden(e) && std::binary_search(right.begin(), right.end(), e)) {
      return e;  // `left` is sorted, so this is the smallest id.
    }
  }
  return std::nullopt;
}

std::optional<EdgeId> AdaptiveSubmodularNext(const SampleSets& samples,
                                             const Belief& belief) {
  auto paths = LiveOnly(samples.paths, belief);
  auto cuts = LiveOnly(samples.cuts, belief);
  if (paths.empty() || cuts.empty()) return std::nullopt;
  std::vector<int64_t> in_paths(belief.size(), 0);
  std::vector<int64_t> in_cuts(belief.size(), 0);
  std::vector<char> candidate(belief.size(), 0);
  for (const Certificate& c : paths) {
    for (EdgeId e : c.edges) {
      ++in_paths[e];
      candidate[e] = belief.hidden(e);
    }
  }
  for (const Certificate& c : cuts) {
    for (EdgeId e : c.edges) {
      ++in_cuts[e];
      candidate[e] = belief.hidden(e);
    }
  }
  std::optional<EdgeId> best;
  int64_t best_score = std::numeric_limits<int64_t>::max();
  const int64_t np = static_cast<int64_t>(paths.size());
  const int64_t nc = static_cast<int64_t>(cuts.size());
  for (EdgeId e = 0; e < belief.size(); ++e) {
    if (!candidate[e]) continue;
    // Off kills the paths through e; On kills the cuts through e.
    int64_t score = (np - in_paths[e]) * (nc - in_cuts[e]);
    if (score < best_score) {
      best_score = score;
      best = e;
    }
  }
  return best;
}

std::optional<EdgeId> TreeHeuristicNext(const Instance& instance,
                                        const Belief& belief,
                                        int remaining_budget, int horizon,
                                        const SolverBackend& backend,
                                        std::chrono::milliseconds time_budget) {
  int effective = std::min(horizon, remaining_budget);
  if (effective < 1) {
    Fail(ErrorCode::kContractViolation, "tree heuristic has no budget left");
  }
  if (GetCertificateStatus(instance, belief).kind != Connectivity::kOpen) {
    Fail(ErrorCode::kContractViolation,
         "tree heuristic called on a decided state");
  }
  ExactConfig config;
  config.backend = &backend;
  config.time_budget = time_budget;
  ExactSolver solver(WithBudget(instance, effective), std::move(config),
                     belief);
  ExactResult result = solver.Run();
  if (result.status != SolveStatus::kOptimal) return std::nullopt;
  const NodeLabel& root = result.tree->labels[0];
  if (!root.is_query()) {
    Fail(ErrorCode::kInternal, "optimal tree does not query at its root");
  }
  return root.edge;
}

namespace {

using H1Cache = std::unordered_map<Belief, EdgeId, BeliefHash>;

EdgeId CachedH1(const Instance& instance, const Belief& belief,
                H1Cache& cache) {
  auto it = cache.find(belief);
  if (it != cache.end()) return it->second;
  if (cache.size() > (1u << 20)) cache.clear();
  EdgeId e = H1Next(instance, belief);
  cache.emplace(belief, e);
  return e;
}

bool IsOpen(const Instance& instance, const Belief& belief) {
  return GetCertificateStatus(instance, belief).kind == Connectivity::kOpen;
}

void CollectActions(const Instance& instance, const Belief& belief,
                    int depth_left, H1Cache& cache, std::set<EdgeId>& out) {
  if (depth_left <= 0 || !IsOpen(instance, belief)) return;
  EdgeId e = CachedH1(instance, belief, cache);
  out.insert(e);
  CollectActions(instance, belief.With(e, EdgeState::kOn), depth_left - 1,
                 cache, out);
  CollectActions(instance, belief.With(e, EdgeState::kOff), depth_left - 1,
                 cache, out);
}

std::vector<EdgeId> ActionSpaceCached(const Instance& instance,
                                      const Belief& belief, int horizon,
                                      H1Cache& cache) {
  std::set<EdgeId> actions;
  CollectActions(instance, belief, horizon, cache, actions);
  return {actions.begin(), actions.end()};
}

// Single-player UCT-style search with epsilon-greedy selection. Untried
// actions are expanded first (in edge-id order), one new node per
// simulation, followed by an H1 rollout.
class Mcts {
 public:
  Mcts(const Instance& instance, const MctsParams& params, H1Cache& cache)
      : instance_(instance), params_(params), cache_(cache),
        rng_(params.seed) {}

  EdgeId Search(const Belief& belief, int remaining) {
    nodes_.clear();
    NewNode(belief, remaining);
    if (nodes_[0].actions.empty()) {
      Fail(ErrorCode::kContractViolation, "MCTS called on a decided state");
    }
    for (int sim = 0; sim < params_.simulations; ++sim) Simulate();
    const Node& root = nodes_[0];
    int best = -1;
    double best_mean = -std::numeric_limits<double>::infinity();
    for (size_t a = 0; a < root.actions.size(); ++a) {
      if (root.visits[a] == 0) continue;
      double mean = root.total[a] / root.visits[a];
      if (mean > best_mean) {
        best_mean = mean;
        best = static_cast<int>(a);
      }
    }
    return root.actions[best < 0 ? 0 : best];
  }

 private:
  struct Node {
    Belief belief;
    int remaining = 0;
    std::vector<EdgeId> actions;  // Empty for terminal states.
    std::vector<int> visits;
    std::vector<double> total;
    std::vector<int> child_on;
    std::vector<int> child_off;
  };

  int NewNode(const Belief& belief, int remaining) {
    Node node;
    node.belief = belief;
    node.remaining = remaining;
    if (remaining > 0 && IsOpen(instance_, belief)) {
      node.actions =
          ActionSpaceCached(instance_, belief, params_.horizon, cache_);
    }
    size_t n = node.actions.size();
    node.visits.assign(n, 0);
    node.total.assign(n, 0.0);
    node.child_on.assign(n, -1);
    node.child_off.assign(n, -1);
    nodes_.push_back(std::move(node));
    return static_cast<int>(nodes_.size()) - 1;
  }

  int Select(const Node& node) {
    for (size_t a = 0; a < node.actions.size(); ++a) {
      if (node.visits[a] == 0) return static_cast<int>(a);
    }
    if (UniformDouble(rng_) < params_.epsilon) {
      return static_cast<int>(rng_() % node.actions.size());
    }
    int best = 0;
    for (size_t a = 1; a < node.actions.size(); ++a) {
      if (node.total[a] / node.visits[a] >
          node.total[best] / node.visits[best]) {
        best = static_cast<int>(a);
      }
    }
    return best;
  }

  int Rollout(Belief belief, int remaining) {
    int queries = 0;
    while (remaining > 0 && IsOpen(instance_, belief)) {
      EdgeId e = CachedH1(instance_, belief, cache_);
      ++queries;
      if (--remaining == 0) break;
      belief.Reveal(e, UniformDouble(rng_) < instance_.p ? EdgeState::kOn
                                                         : EdgeState::kOff);
    }
    return queries;
  }

  void Simulate() {
    struct Step {
      int node;
      int action;
      int queries_before;
    };
    std::vector<Step> steps;
    int cur = 0;
    int queries = 0;
    while (!nodes_[cur].actions.empty()) {
      int a = Select(nodes_[cur]);
      bool on = UniformDouble(rng_) < instance_.p;
      steps.push_back({cur, a, queries});
      ++queries;
      int child = on ? nodes_[cur].child_on[a] : nodes_[cur].child_off[a];
      if (child >= 0) {
        cur = child;
        continue;
      }
      EdgeId e = nodes_[cur].actions[a];
      Belief next = nodes_[cur].belief.With(
          e, on ? EdgeState::kOn : EdgeState::kOff);
      int remaining = nodes_[cur].remaining - 1;
      int created = NewNode(next, remaining);
      (on ? nodes_[cur].child_on : nodes_[cur].child_off)[a] = created;
      queries += Rollout(next, remaining);
      break;
    }
    for (const Step& s : steps) {
      Node& node = nodes_[s.node];
      ++node.visits[s.action];
      node.total[s.action] -= queries - s.queries_before;
    }
  }

  const Instance& instance_;
  MctsParams params_;
  H1Cache& cache_;
  std::mt19937_64 rng_;
  std::vector<Node> nodes_;
};

}  // namespace

std::vector<EdgeId> ActionSpace(const Instance& instance, const Belief& belief,
                                int horizon) {
  H1Cache cache;
  return ActionSpaceCached(instance, belief, horizon, cache);
}

EdgeId MctsNext(const Instance& instance, const Belief& belief,
                int remaining_budget, const MctsParams& params) {
  H1Cache cache;
  return Mcts(instance, params, cache).Search(belief, remaining_budget);
}

namespace {

struct DecisionKey {
  Belief belief;
  int remaining;
  bool operator==(const DecisionKey& other) const = default;
};

struct DecisionKeyHash {
  size_t operator()(const DecisionKey& k) const {
    return k.belief.Hash() * 31 + static_cast<size_t>(k.remaining);
  }
};

class HeuristicPolicy : public Policy {
 public:
  HeuristicPolicy(const Instance& instance, const HeuristicSpec& spec,
                  const HeuristicOptions& options)
      : instance_(instance),
        spec_(spec),
        options_(options),
        backend_(options.backend != nullptr ? options.backend
                                            : &DefaultBackend()) {}

  std::string name() const override { return spec_.ToString(); }

  Decision Next(const Belief& belief, int remaining_budget) override {
    if (remaining_budget <= 0 || !IsOpen(instance_, belief)) return {};
    DecisionKey key{belief, remaining_budget};
    if (auto it = decisions_.find(key); it != decisions_.end()) {
      return it->second;
    }
    Decision decision = Select(belief, remaining_budget);
    // Time-guarded choices depend on the clock; do not pin them.
    if (decision.note.find("time guard") == std::string::npos) {
      if (decisions_.size() > (1u << 20)) decisions_.clear();
      decisions_.emplace(std::move(key), decision);
    }
    return decision;
  }

 private:
  Decision Fallback(const Belief& belief, std::string_view why = "") {
    std::string note(kFallbackNote);
    if (!why.empty()) note += " (" + std::string(why) + ")";
    return {CachedH1(instance_, belief, h1_cache_), note};
  }

  Decision FromOptional(std::optional<EdgeId> edge, const Belief& belief) {
    if (edge) return {*edge, ""};
    return Fallback(belief);
  }

  const SampleSets& Samples(const Belief& belief) {
    if (!options_.regenerate_samples) {
      if (!initial_samples_) {
        initial_samples_ = GenerateSamples(
            instance_, Belief(instance_.num_edges()), options_.sample_horizon,
            options_.sample_target);
      }
      return *initial_samples_;
    }
    auto it = regenerated_.find(belief);
    if (it == regenerated_.end()) {
      it = regenerated_
               .emplace(belief, GenerateSamples(instance_, belief,
                                                options_.sample_horizon,
                                                options_.sample_target))
               .first;
    }
    return it->second;
  }

  Decision Select(const Belief& belief, int remaining) {
    switch (spec_.kind) {
      case HeuristicKind::kH1:
        return {CachedH1(instance_, belief, h1_cache_), ""};
      case HeuristicKind::kH2Both:
        return FromOptional(
            GreedyCountNext(CountVariant::kBoth, Samples(belief), belief),
            belief);
      case HeuristicKind::kH2Path:
        return FromOptional(
            GreedyCountNext(CountVariant::kPath, Samples(belief), belief),
            belief);
      case HeuristicKind::kH2Cut:
        return FromOptional(
            GreedyCountNext(CountVariant::kCut, Samples(belief), belief),
            belief);
      case HeuristicKind::kMinSC:
        return FromOptional(MinSetCoverNext(CoverVariant::kBoth,
                                            Samples(belief), instance_,
                                            belief, *backend_),
                            belief);
      case HeuristicKind::kMinSCPath:
        return FromOptional(MinSetCoverNext(CoverVariant::kPath,
                                            Samples(belief), instance_,
                                            belief, *backend_),
                            belief);
      case HeuristicKind::kMinSCCut:
        return FromOptional(MinSetCoverNext(CoverVariant::kCut,
                                            Samples(belief), instance_,
                                            belief, *backend_),
                            belief);
      case HeuristicKind::kAdaptiveSubmodular:
        return FromOptional(AdaptiveSubmodularNext(Samples(belief), belief),
                            belief);
      case HeuristicKind::kTree: {
        auto guard = options_.tree_time_guard.value_or(std::chrono::hours(72));
        auto edge = TreeHeuristicNext(instance_, belief, remaining,
                                      spec_.horizon, *backend_, guard);
        if (!edge) return Fallback(belief, "time guard");
        return {*edge, ""};
      }
      case HeuristicKind::kMcts: {
        MctsParams params{spec_.horizon, spec_.simulations, spec_.epsilon,
                          spec_.seed};
        return {Mcts(instance_, params, h1_cache_).Search(belief, remaining),
                ""};
      }
    }
    Fail(ErrorCode::kInternal, "unhandled heuristic kind");
  }

  Instance instance_;
  HeuristicSpec spec_;
  HeuristicOptions options_;
  const SolverBackend* backend_;
  H1Cache h1_cache_;
  std::optional<SampleSets> initial_samples_;
  std::unordered_map<Belief, SampleSets, BeliefHash> regenerated_;
  std::unordered_map<DecisionKey, Decision, DecisionKeyHash> decisions_;
};

}  // namespace

std::unique_ptr<Policy> MakeHeuristicPolicy(const Instance& instance,
                                            const HeuristicSpec& spec,
                                            const HeuristicOptions& options) {
  return std::make_unique<HeuristicPolicy>(instance, spec, options);
}

}  // namespace lqct
