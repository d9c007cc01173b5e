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

#ifndef LQCT_POLICY_H_
#define LQCT_POLICY_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lqct/graph.h"
#include "lqct/policy_tree.h"

namespace lqct {

// Answers to the first B-1 queries of an episode; true means On. The B-th
// query, if issued, ends the episode without an answer being consumed.
using ResponseVector = std::vector<bool>;

double ResponseProbability(const ResponseVector& bits, double p);

struct Decision {
  std::optional<EdgeId> edge;  // nullopt: the policy stops.
  std::string note;            // Free-form tag, e.g. a fallback marker.
};

// An adaptive policy maps the current belief and the remaining budget to the
// next query. Implementations must be deterministic: equal arguments give
// equal decisions.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::string name() const = 0;
  virtual Decision Next(const Belief& belief, int remaining_budget) = 0;
};

enum class Outcome : uint8_t {
  kPath,        // On edges form an s->t path.
  kCut,         // Off edges form a cut.
  kLimit,       // The B-th query was issued; its answer is not observed.
  kUnresolved,  // The policy stopped while connectivity was still open.
};

std::string_view OutcomeName(Outcome outcome);

struct TranscriptStep {
  EdgeId edge = -1;
  std::optional<EdgeState> answer;  // Absent for the budget-ending query.
  std::string note;
};

struct Episode {
  int queries = 0;
  Outcome outcome = Outcome::kUnresolved;
  std::vector<TranscriptStep> transcript;
  Belief belief;
  CertificateStatus status;
};

// Plays `policy` against the answers in `responses` (length exactly B-1).
// Throws kContractViolation when the policy proposes a revealed edge.
Episode RunPolicy(Policy& policy, const Instance& instance,
                  const ResponseVector& responses);

// Validates a single proposal against the belief; shared by every runner.
void CheckProposal(const Decision& decision, const Belief& belief,
                   std::string_view policy_name);

// Follows a policy tree using the revealed answers. A Query node whose edge
// is already revealed is skipped along the matching branch.
class TreePolicy : public Policy {
 public:
  explicit TreePolicy(PolicyTree tree) : tree_(std::move(tree)) {}

  std::string name() const override { return "tree"; }
  Decision Next(const Belief& belief, int remaining_budget) override;

  const PolicyTree& tree() const { return tree_; }

 private:
  PolicyTree tree_;
};

}  // namespace lqct

#endif  // LQCT_POLICY_H_
