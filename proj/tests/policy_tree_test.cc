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

#include "lqct/policy_tree.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lqct/error.h"
#include "lqct/policy.h"
#include "test_util.h"

namespace lqct {
namespace {

using ::lqct::testing::TriangleInstance;

constexpr char kTriangleTree[] = "Q:a(DONE,Q:b(Q:c(DONE,DONE),DONE))";

Certificate Path(std::vector<EdgeId> edges) {
  return {CertificateKind::kPath, std::move(edges)};
}
Certificate Cut(std::vector<EdgeId> edges) {
  return {CertificateKind::kCut, std::move(edges)};
}

// Triangle edge ids: a = 0, b = 1, c = 2.
const std::vector<Certificate> kAllPaths = {Path({0}), Path({1, 2})};
const std::vector<Certificate> kAllCuts = {Cut({0, 1}), Cut({0, 2})};

TEST(TreeStructureTest, CompleteTreesAreBreadthFirst) {
  TreeStructure s = TreeStructure::Complete(3);
  ASSERT_EQ(s.size(), 7);
  EXPECT_EQ(s.node(0).left, 1);
  EXPECT_EQ(s.node(0).right, 2);
  EXPECT_EQ(s.node(2).left, 5);
  EXPECT_EQ(s.node(6).depth, 2);
  EXPECT_TRUE(s.is_left_child(3));
  EXPECT_TRUE(s.is_right_child(6));
  EXPECT_EQ(s.Route(5), (std::vector<TreeNodeId>{0, 2, 5}));
  EXPECT_EQ(s.max_depth(), 2);
}

TEST(TreeStructureTest, ExpansionRenumbersCanonically) {
  TreeStructure s = TreeStructure::Complete(2);
  auto grown = s.Expanded(std::vector<TreeNodeId>{2});
  ASSERT_EQ(grown.structure.size(), 5);
  EXPECT_EQ(grown.structure.node(2).left, 3);
  EXPECT_EQ(grown.old_to_new, (std::vector<TreeNodeId>{0, 1, 2}));
  auto again = grown.structure.Expanded(std::vector<TreeNodeId>{1, 3});
  // The left child's new children precede the deeper node's children.
  EXPECT_EQ(again.structure.node(1).left, 3);
  EXPECT_EQ(again.old_to_new[3], 5);
  EXPECT_THROW(s.Expanded(std::vector<TreeNodeId>{0}), Error);
}

TEST(NodeReachProbTest, Examples) {
  TreeStructure s = TreeStructure::Complete(6);
  EXPECT_DOUBLE_EQ(NodeReachProb(s, 0, 0.3), 1.0);
  // Three On turns then two Off turns.
  TreeNodeId v = 0;
  for (int k = 0; k < 3; ++k) v = s.node(v).left;
  for (int k = 0; k < 2; ++k) v = s.node(v).right;
  EXPECT_DOUBLE_EQ(NodeReachProb(s, v, 0.5), 0.03125);
  EXPECT_DOUBLE_EQ(NodeReachProb(s, 2, 0.25), 0.75);
  EXPECT_THROW(NodeReachProb(s, 999, 0.5), Error);
}

TEST(ExpectedCostTest, Examples) {
  auto g = testing::TriangleGraph();
  EXPECT_DOUBLE_EQ(ExpectedCost(ParseTree(kTriangleTree, *g, 0.5)), 1.75);
  EXPECT_DOUBLE_EQ(ExpectedCost(ParseTree("DONE", *g, 0.5)), 0.0);
  EXPECT_DOUBLE_EQ(
      ExpectedCost(ParseTree("Q:a(DONE,Q:b(DONE,DONE))", *g, 0.5)), 1.5);
}

TEST(SerializationTest, RoundTripIsBitExact) {
  auto g = testing::TriangleGraph();
  for (const char* text :
       {kTriangleTree, "DONE", "Q:a(DONE(DONE,DONE),Q:b)",
        "Q:b(Q:a(LIMIT,LIMIT),Q:c(DONE,Q:a))"}) {
    EXPECT_EQ(SerializeTree(ParseTree(text, *g, 0.5), *g), text);
  }
  EXPECT_THROW(ParseTree("Q:z", *g, 0.5), Error);
  EXPECT_THROW(ParseTree("Q:a(DONE)", *g, 0.5), Error);
  EXPECT_THROW(ParseTree("DONE,", *g, 0.5), Error);
}

TEST(SerializationTest, RandomTreesRoundTrip) {
  auto g = testing::TriangleGraph();
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    TreeStructure s;
    for (int grow = 0; grow < 4; ++grow) {
      std::vector<TreeNodeId> leaves;
      for (TreeNodeId v = 0; v < s.size(); ++v) {
        if (s.is_leaf(v) && rng() % 2) leaves.push_back(v);
      }
      s = s.Expanded(leaves).structure;
    }
    PolicyTree tree{s, {}, 0.5};
    for (TreeNodeId v = 0; v < s.size(); ++v) {
      int pick = static_cast<int>(rng() % 5);
      tree.labels.push_back(pick < 3 ? NodeLabel::Query(pick)
                            : pick == 3 ? NodeLabel::Done()
                                        : NodeLabel::Limit());
    }
    std::string text = SerializeTree(tree, *g);
    PolicyTree back = ParseTree(text, *g, 0.5);
    EXPECT_EQ(back, tree);
    EXPECT_EQ(SerializeTree(back, *g), text);
  }
}

TEST(RunPolicyTest, TriangleTreeEpisodes) {
  Instance instance = TriangleInstance();
  TreePolicy policy(ParseTree(kTriangleTree, *instance.graph, 0.5));

  Episode on = RunPolicy(policy, instance, {true, true});
  EXPECT_EQ(on.queries, 1);
  EXPECT_EQ(on.outcome, Outcome::kPath);

  Episode off = RunPolicy(policy, instance, {false, false});
  EXPECT_EQ(off.queries, 2);
  EXPECT_EQ(off.outcome, Outcome::kCut);
  ASSERT_EQ(off.transcript.size(), 2u);
  EXPECT_EQ(off.transcript[1].edge, 1);
  EXPECT_EQ(off.transcript[1].answer, EdgeState::kOff);

  // The third query decides either way; its answer is not part of the
  // response vector.
  Episode mixed = RunPolicy(policy, instance, {false, true});
  EXPECT_EQ(mixed.queries, 3);
  EXPECT_EQ(mixed.outcome, Outcome::kLimit);
  EXPECT_FALSE(mixed.transcript.back().answer.has_value());

  EXPECT_THROW(RunPolicy(policy, instance, {true}), Error);
}

class RepeatingPolicy : public Policy {
 public:
  std::string name() const override { return "repeat"; }
  Decision Next(const Belief&, int) override { return {0, ""}; }
};

TEST(RunPolicyTest, ProposingARevealedEdgeIsAContractViolation) {
  Instance instance = TriangleInstance();
  RepeatingPolicy policy;
  try {
    RunPolicy(policy, instance, {false, false});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kContractViolation);
  }
}

TEST(ValidateDoneClaimsTest, TriangleDoneClaims) {
  auto g = testing::TriangleGraph();
  PolicyTree correct = ParseTree("Q:a(DONE(DONE,DONE),Q:b)", *g, 0.5);
  EXPECT_TRUE(ValidateDoneClaims(correct, kAllPaths, kAllCuts).empty());

  PolicyTree incorrect = ParseTree("Q:a(DONE,DONE)", *g, 0.5);
  auto violations = ValidateDoneClaims(incorrect, kAllPaths, kAllCuts);
  ASSERT_EQ(violations.size(), 1u);
  EXPECT_EQ(violations[0].node, 2);
  EXPECT_EQ(violations[0].path_index, 1);  // (b,c) survives a = Off.

  PolicyTree done = ParseTree("DONE", *g, 0.5);
  EXPECT_TRUE(ValidateDoneClaims(done, {}, kAllCuts).empty());
}

TEST(WellFormedTest, DetectsStructuralProblems) {
  auto g = testing::TriangleGraph();
  EXPECT_TRUE(CheckWellFormed(ParseTree(kTriangleTree, *g, 0.5), 3).empty());
  EXPECT_FALSE(CheckWellFormed(ParseTree("Q:a(Q:a,DONE)", *g, 0.5), 3).empty());
  EXPECT_FALSE(
      CheckWellFormed(ParseTree("DONE(Q:a,DONE)", *g, 0.5), 3).empty());
  EXPECT_FALSE(CheckWellFormed(ParseTree("LIMIT", *g, 0.5), 3).empty());
  EXPECT_FALSE(CheckWellFormed(ParseTree(kTriangleTree, *g, 0.5), 2).empty());
}

TEST(PrunedTest, DropsDoneSubtrees) {
  auto g = testing::TriangleGraph();
  PolicyTree tree = ParseTree(
      "Q:a(DONE(DONE,DONE),Q:b(Q:c(DONE,DONE),DONE(DONE,DONE)))", *g, 0.5);
  EXPECT_EQ(SerializeTree(Pruned(tree), *g), kTriangleTree);
  EXPECT_DOUBLE_EQ(ExpectedCost(Pruned(tree)), ExpectedCost(tree));
}

TEST(ResponseVectorTest, ProbabilitiesSumToOne) {
  for (double p : {0.1, 0.3, 0.5, 0.77}) {
    for (int bits = 0; bits <= 10; ++bits) {
      double total = 0.0;
      for (uint32_t x = 0; x < (1u << bits); ++x) {
        ResponseVector r(bits);
        for (int i = 0; i < bits; ++i) r[i] = (x >> i) & 1;
        total += ResponseProbability(r, p);
      }
      EXPECT_NEAR(total, 1.0, 1e-12);
    }
  }
}

// A random correct-by-construction policy: query a random hidden edge until
// the state is decided or the budget ends.
PolicyTree RandomPolicyTree(const Instance& instance, std::mt19937_64& rng) {
  TreeStructureBuilder builder;
  std::vector<NodeLabel> labels;
  std::function<void(int, Belief, int)> grow = [&](int id, Belief belief,
                                                   int depth) {
    if (static_cast<int>(labels.size()) <= id) labels.resize(id + 1);
    if (GetCertificateStatus(instance, belief).kind != Connectivity::kOpen) {
      labels[id] = NodeLabel::Done();
      return;
    }
    if (depth == instance.budget) {
      labels[id] = NodeLabel::Limit();
      return;
    }
    std::vector<EdgeId> hidden;
    for (EdgeId e = 0; e < belief.size(); ++e) {
      if (belief.hidden(e)) hidden.push_back(e);
    }
    EdgeId e = hidden[rng() % hidden.size()];
    labels[id] = NodeLabel::Query(e);
    if (depth + 1 > instance.budget) return;
    auto [l, r] = builder.AddChildren(id);
    grow(l, belief.With(e, EdgeState::kOn), depth + 1);
    grow(r, belief.With(e, EdgeState::kOff), depth + 1);
  };
  grow(0, Belief(instance.num_edges()), 0);
  std::vector<TreeNodeId> mapping;
  PolicyTree tree;
  tree.p = instance.p;
  tree.structure = std::move(builder).Build(&mapping);
  tree.labels.resize(labels.size());
  for (size_t k = 0; k < labels.size(); ++k) tree.labels[mapping[k]] = labels[k];
  return tree;
}

TEST(PolicyTreePropertyTest, ExpectedCostMatchesEpisodeAverage) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    double p = (trial % 3 + 1) * 0.25;
    Instance instance = testing::RandomInstance(rng, 4 + trial % 3,
                                                4 + trial % 7, trial % 2, p,
                                                2 + trial % 11);
    if (instance.budget > 12) continue;
    PolicyTree tree = RandomPolicyTree(instance, rng);
    ASSERT_TRUE(CheckWellFormed(tree, instance.budget).empty());
    EXPECT_NEAR(ExpectedCost(tree),
                testing::ExpectedQueriesByVectors(tree, instance), 1e-12);
  }
}

TEST(PolicyTreePropertyTest, CorrectTreesStopOnRealCertificates) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    Instance instance = testing::RandomInstance(rng, 4, 3 + trial % 6,
                                                trial % 2, 0.5, 6);
    std::vector<Certificate> paths;
    std::vector<Certificate> cuts;
    for (auto& p : testing::AllSimplePaths(instance)) paths.push_back(Path(p));
    for (auto& c : testing::AllMinimalCuts(instance)) cuts.push_back(Cut(c));
    PolicyTree tree = RandomPolicyTree(instance, rng);
    ASSERT_TRUE(ValidateDoneClaims(tree, paths, cuts).empty());
    for (TreeNodeId v = 0; v < tree.structure.size(); ++v) {
      if (!IsFirstDone(tree, v)) continue;
      Belief belief(instance.num_edges());
      for (auto [e, st] : RouteObservations(tree, v)) belief.Reveal(e, st);
      EXPECT_NE(GetCertificateStatus(instance, belief).kind,
                Connectivity::kOpen);
    }
  }
}

}  // namespace
}  // namespace lqct
