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

#include "lqct/policy.h"

#include <string>

#include "lqct/error.h"

namespace lqct {

double ResponseProbability(const ResponseVector& bits, double p) {
  double prob = 1.0;
  for (bool on : bits) prob *= on ? p : 1.0 - p;
  return prob;
}

std::string_view OutcomeName(Outcome outcome) {
  switch (outcome) {
    case Outcome::kPath:
      return "path";
    case Outcome::kCut:
      return "cut";
    case Outcome::kLimit:
      return "limit";
    case Outcome::kUnresolved:
      return "unresolved";
  }
  return "unknown";
}

void CheckProposal(const Decision& decision, const Belief& belief,
                   std::string_view policy_name) {
  if (!decision.edge) return;
  EdgeId e = *decision.edge;
  if (e < 0 || e >= belief.size()) {
    Fail(ErrorCode::kContractViolation,
         std::string(policy_name) + " proposed unknown edge " +
             std::to_string(e));
  }
  if (!belief.hidden(e)) {
    Fail(ErrorCode::kContractViolation,
         std::string(policy_name) + " proposed already revealed edge " +
             std::to_string(e));
  }
}

Episode RunPolicy(Policy& policy, const Instance& instance,
                  const ResponseVector& responses) {
  if (static_cast<int>(responses.size()) != instance.budget - 1) {
    Fail(ErrorCode::kInvalidInput,
         "response vector has length " + std::to_string(responses.size()) +
             ", expected B-1 = " + std::to_string(instance.budget - 1));
  }
  Episode episode;
  episode.belief = Belief(instance.num_edges());
  while (true) {
    episode.status = GetCertificateStatus(instance, episode.belief);
    if (episode.status.kind == Connectivity::kPathFound) {
      episode.outcome = Outcome::kPath;
      return episode;
    }
    if (episode.status.kind == Connectivity::kCutFound) {
      episode.outcome = Outcome::kCut;
      return episode;
    }
    Decision decision =
        policy.Next(episode.belief, instance.budget - episode.queries);
    CheckProposal(decision, episode.belief, policy.name());
    if (!decision.edge) {
      episode.outcome = Outcome::kUnresolved;
      return episode;
    }
    TranscriptStep step{*decision.edge, std::nullopt, decision.note};
    ++episode.queries;
    if (episode.queries == instance.budget) {
      episode.transcript.push_back(std::move(step));
      episode.outcome = Outcome::kLimit;
      return episode;
    }
    step.answer =
        responses[episode.queries - 1] ? EdgeState::kOn : EdgeState::kOff;
    episode.belief.Reveal(step.edge, *step.answer);
    episode.transcript.push_back(std::move(step));
  }
}

Decision TreePolicy::Next(const Belief& belief, int /*remaining_budget*/) {
  const TreeStructure& s = tree_.structure;
  TreeNodeId v = 0;
  while (true) {
    const NodeLabel& label = tree_.labels[v];
    if (!label.is_query()) return {};
    if (belief.hidden(label.edge)) return {label.edge, ""};
    if (s.is_leaf(v)) return {};
    v = belief.state(label.edge) == EdgeState::kOn ? s.node(v).left
                                                   : s.node(v).right;
  }
}

}  // namespace lqct
