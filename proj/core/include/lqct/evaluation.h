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

#ifndef LQCT_EVALUATION_H_
#define LQCT_EVALUATION_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "lqct/graph.h"
#include "lqct/policy.h"

namespace lqct {

inline constexpr int kExhaustiveBudgetLimit = 25;
inline constexpr int kOracleEdgeLimit = 14;
inline constexpr int kSampledPrefixCount = 1000;
inline constexpr int kSampledSuffixBits = 4;

enum class EvaluationMethod : uint8_t { kExhaustive, kSampled };

struct EvaluationResult {
  double expected_queries = 0.0;
  EvaluationMethod method = EvaluationMethod::kExhaustive;
  int64_t num_vectors = 0;
  uint64_t seed = 0;
  // Probability mass per episode outcome.
  double path = 0.0;
  double cut = 0.0;
  double limit = 0.0;
  double unresolved = 0.0;
  // histogram[k] is the probability mass of episodes issuing k queries.
  std::vector<double> histogram;
  double total_probability = 0.0;
};

// Exact expectation over all 2^(B-1) response vectors. Vectors that agree on
// the answers an episode consumes share one traversal. Throws kGuardExceeded
// above kExhaustiveBudgetLimit.
EvaluationResult EvaluateExhaustive(Policy& policy, const Instance& instance);

// The response vectors used by EvaluateSampled: distinct random prefixes of
// length B-5 (all of them when fewer than 1000 exist), each padded with every
// 4-bit suffix. Requires B > 5.
std::vector<ResponseVector> SampledResponseVectors(int budget, uint64_t seed);

// Probability-weighted mean over SampledResponseVectors; B <= 5 falls back to
// EvaluateExhaustive.
EvaluationResult EvaluateSampled(Policy& policy, const Instance& instance,
                                 uint64_t seed = 0);

// Optimal expected query count by memoized recursion over belief states.
// Throws kGuardExceeded for more than kOracleEdgeLimit edges.
double DpOracle(const Instance& instance);

// "count,frequency" rows for k = 0..B.
std::string HistogramCsv(const EvaluationResult& result);

struct MedianSeedResult {
  uint64_t seed = 0;
  NodeId source = 0;
  NodeId target = 0;
  double cost = 0.0;
  std::vector<double> costs;  // Indexed by seed - first_seed.
};

// Draws endpoints for each seed in [first_seed, last_seed], evaluates H1 at
// budget min(budget, |E|) exhaustively, and returns the seed with the median
// cost (the lower median, smallest seed among equal costs).
MedianSeedResult SelectMedianSeed(std::shared_ptr<const Graph> graph, double p,
                                  int budget = 10, uint64_t first_seed = 0,
                                  uint64_t last_seed = 10);

}  // namespace lqct

#endif  // LQCT_EVALUATION_H_
