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

#include "lqct/evaluation.h"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "lqct/error.h"
#include "lqct/graph_io.h"
#include "lqct/heuristics.h"

namespace lqct {
namespace {

void Record(EvaluationResult& result, int queries, Outcome outcome,
            double prob) {
  result.expected_queries += prob * queries;
  result.histogram[queries] += prob;
  result.total_probability += prob;
  switch (outcome) {
    case Outcome::kPath:
      result.path += prob;
      break;
    case Outcome::kCut:
      result.cut += prob;
      break;
    case Outcome::kLimit:
      result.limit += prob;
      break;
    case Outcome::kUnresolved:
      result.unresolved += prob;
      break;
  }
}

// Depth-first walk over the answers the policy actually consumes. The mass of
// a branch equals the total probability of the response vectors routed there.
void Walk(Policy& policy, const Instance& instance, Belief& belief,
          int queries, double prob, EvaluationResult& result) {
  Connectivity status = GetCertificateStatus(instance, belief).kind;
  if (status == Connectivity::kPathFound) {
    Record(result, queries, Outcome::kPath, prob);
    return;
  }
  if (status == Connectivity::kCutFound) {
    Record(result, queries, Outcome::kCut, prob);
    return;
  }
  Decision decision = policy.Next(belief, instance.budget - queries);
  CheckProposal(decision, belief, policy.name());
  if (!decision.edge) {
    Record(result, queries, Outcome::kUnresolved, prob);
    return;
  }
  if (queries + 1 == instance.budget) {
    Record(result, queries + 1, Outcome::kLimit, prob);
    return;
  }
  EdgeId e = *decision.edge;
  Belief on = belief.With(e, EdgeState::kOn);
  Walk(policy, instance, on, queries + 1, prob * instance.p, result);
  Belief off = belief.With(e, EdgeState::kOff);
  Walk(policy, instance, off, queries + 1, prob * (1.0 - instance.p), result);
}

}  // namespace

EvaluationResult EvaluateExhaustive(Policy& policy, const Instance& instance) {
  if (instance.budget > kExhaustiveBudgetLimit) {
    Fail(ErrorCode::kGuardExceeded,
         "exhaustive evaluation is limited to B <= " +
             std::to_string(kExhaustiveBudgetLimit));
  }
  EvaluationResult result;
  result.method = EvaluationMethod::kExhaustive;
  result.num_vectors = int64_t{1} << (instance.budget - 1);
  result.histogram.assign(instance.budget + 1, 0.0);
  Belief belief(instance.num_edges());
  Walk(policy, instance, belief, 0, 1.0, result);
  return result;
}

std::vector<ResponseVector> SampledResponseVectors(int budget, uint64_t seed) {
  const int prefix_bits = budget - 1 - kSampledSuffixBits;
  if (prefix_bits < 0) {
    Fail(ErrorCode::kInvalidInput, "sampled vectors need B >= 5");
  }
  std::vector<std::vector<bool>> prefixes;
  if (prefix_bits < 63 &&
      (uint64_t{1} << prefix_bits) < static_cast<uint64_t>(kSampledPrefixCount)) {
    for (uint64_t x = 0; x < (uint64_t{1} << prefix_bits); ++x) {
      std::vector<bool> bits(prefix_bits);
      for (int i = 0; i < prefix_bits; ++i) bits[i] = (x >> i) & 1;
      prefixes.push_back(std::move(bits));
    }
  } else {
    std::mt19937_64 rng(seed);
    std::set<std::vector<bool>> seen;
    while (static_cast<int>(prefixes.size()) < kSampledPrefixCount) {
      std::vector<bool> bits(prefix_bits);
      uint64_t word = 0;
      for (int i = 0; i < prefix_bits; ++i) {
        if (i % 64 == 0) word = rng();
        bits[i] = (word >> (i % 64)) & 1;
      }
      if (seen.insert(bits).second) prefixes.push_back(std::move(bits));
    }
  }
  std::vector<ResponseVector> vectors;
  vectors.reserve(prefixes.size() << kSampledSuffixBits);
  for (const auto& prefix : prefixes) {
    for (int suffix = 0; suffix < (1 << kSampledSuffixBits); ++suffix) {
      ResponseVector v(prefix.begin(), prefix.end());
      for (int i = 0; i < kSampledSuffixBits; ++i) {
        v.push_back((suffix >> (kSampledSuffixBits - 1 - i)) & 1);
      }
      vectors.push_back(std::move(v));
    }
  }
  return vectors;
}

EvaluationResult EvaluateSampled(Policy& policy, const Instance& instance,
                                 uint64_t seed) {
  if (instance.budget <= kSampledSuffixBits + 1) {
    return EvaluateExhaustive(policy, instance);
  }
  std::vector<ResponseVector> vectors =
      SampledResponseVectors(instance.budget, seed);
  EvaluationResult result;
  result.method = EvaluationMethod::kSampled;
  result.seed = seed;
  result.num_vectors = static_cast<int64_t>(vectors.size());
  result.histogram.assign(instance.budget + 1, 0.0);
  double weight_sum = 0.0;
  for (const ResponseVector& v : vectors) {
    weight_sum += ResponseProbability(v, instance.p);
  }
  for (const ResponseVector& v : vectors) {
    Episode episode = RunPolicy(policy, instance, v);
    Record(result, episode.queries, episode.outcome,
           ResponseProbability(v, instance.p) / weight_sum);
  }
  return result;
}

namespace {

class Oracle {
 public:
  explicit Oracle(const Instance& instance) : instance_(instance) {}

  double Value(Belief& belief, uint32_t code, int budget) {
    if (budget == 0) return 0.0;
    uint64_t key = static_cast<uint64_t>(code) * 64 + budget;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    double best = 0.0;
    if (GetCertificateStatus(instance_, belief).kind == Connectivity::kOpen) {
      best = std::numeric_limits<double>::infinity();
      uint32_t place = 1;
      for (EdgeId e = 0; e < belief.size(); ++e, place *= 3) {
        if (!belief.hidden(e)) continue;
        Belief on = belief.With(e, EdgeState::kOn);
        Belief off = belief.With(e, EdgeState::kOff);
        double v = 1.0 + instance_.p * Value(on, code + place, budget - 1) +
                   (1.0 - instance_.p) * Value(off, code + 2 * place, budget - 1);
        best = std::min(best, v);
      }
    }
    memo_.emplace(key, best);
    return best;
  }

 private:
  const Instance& instance_;
  std::unordered_map<uint64_t, double> memo_;
};

}  // namespace

double DpOracle(const Instance& instance) {
  if (instance.num_edges() > kOracleEdgeLimit) {
    Fail(ErrorCode::kGuardExceeded,
         "dp oracle is limited to " + std::to_string(kOracleEdgeLimit) +
             " edges");
  }
  Belief belief(instance.num_edges());
  return Oracle(instance).Value(belief, 0, instance.budget);
}

std::string HistogramCsv(const EvaluationResult& result) {
  std::string out = "count,frequency\n";
  char buf[64];
  for (size_t k = 0; k < result.histogram.size(); ++k) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g\n", k, result.histogram[k]);
    out += buf;
  }
  return out;
}

MedianSeedResult SelectMedianSeed(std::shared_ptr<const Graph> graph, double p,
                                  int budget, uint64_t first_seed,
                                  uint64_t last_seed) {
  if (last_seed < first_seed) {
    Fail(ErrorCode::kInvalidInput, "empty seed range");
  }
  MedianSeedResult result;
  std::vector<std::pair<NodeId, NodeId>> endpoints;
  int b = std::max(1, std::min(budget, graph->num_edges()));
  for (uint64_t seed = first_seed; seed <= last_seed; ++seed) {
    auto [s, t] = PickEndpoints(*graph, seed);
    Instance instance = MakeInstance(graph, s, t, p, b);
    auto h1 = MakeHeuristicPolicy(instance, {HeuristicKind::kH1});
    result.costs.push_back(EvaluateExhaustive(*h1, instance).expected_queries);
    endpoints.push_back({s, t});
  }
  std::vector<size_t> order(result.costs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return result.costs[a] < result.costs[b];
  });
  size_t median = order[(order.size() - 1) / 2];
  result.seed = first_seed + median;
  result.source = endpoints[median].first;
  result.target = endpoints[median].second;
  result.cost = result.costs[median];
  return result;
}

}  // namespace lqct
