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

#include "lqct/graph.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "lqct/error.h"
#include "test_util.h"

namespace lqct {
namespace {

using ::lqct::testing::TriangleInstance;

class TriangleTest : public ::testing::Test {
 protected:
  Instance instance_ = TriangleInstance();
  EdgeId a_ = *instance_.graph->FindEdge("a");
  EdgeId b_ = *instance_.graph->FindEdge("b");
  EdgeId c_ = *instance_.graph->FindEdge("c");
  Belief fresh_{3};
};

TEST_F(TriangleTest, AllHiddenIsOpen) {
  CertificateStatus status = GetCertificateStatus(instance_, fresh_);
  EXPECT_EQ(status.kind, Connectivity::kOpen);
  EXPECT_FALSE(status.certificate.has_value());
}

TEST_F(TriangleTest, SingleOnEdgeIsAPath) {
  CertificateStatus status =
      GetCertificateStatus(instance_, fresh_.With(a_, EdgeState::kOn));
  ASSERT_EQ(status.kind, Connectivity::kPathFound);
  EXPECT_EQ(status.certificate->edges, std::vector<EdgeId>{a_});
}

TEST_F(TriangleTest, TwoOffEdgesFormACut) {
  Belief belief = fresh_.With(a_, EdgeState::kOff).With(b_, EdgeState::kOff);
  CertificateStatus status = GetCertificateStatus(instance_, belief);
  ASSERT_EQ(status.kind, Connectivity::kCutFound);
  EXPECT_EQ(status.certificate->edges, (std::vector<EdgeId>{a_, b_}));
}

TEST_F(TriangleTest, MinHiddenPath) {
  auto path = MinHiddenPath(instance_, fresh_);
  ASSERT_TRUE(path.has_value());
  EXPECT_EQ(path->certificate.edges, std::vector<EdgeId>{a_});
  EXPECT_EQ(path->hidden_count, 1);

  path = MinHiddenPath(instance_, fresh_.With(a_, EdgeState::kOff));
  ASSERT_TRUE(path.has_value());
  EXPECT_EQ(path->certificate.edges, (std::vector<EdgeId>{b_, c_}));
  EXPECT_EQ(path->hidden_count, 2);

  EXPECT_FALSE(MinHiddenPath(instance_, fresh_.With(a_, EdgeState::kOff)
                                            .With(b_, EdgeState::kOff))
                   .has_value());
}

TEST_F(TriangleTest, MinHiddenCutPrefersSmallestSourceSide) {
  auto cut = MinHiddenCut(instance_, fresh_);
  ASSERT_TRUE(cut.has_value());
  EXPECT_EQ(cut->certificate.edges, (std::vector<EdgeId>{a_, b_}));
  EXPECT_EQ(cut->hidden_count, 2);

  cut = MinHiddenCut(instance_, fresh_.With(a_, EdgeState::kOff));
  ASSERT_TRUE(cut.has_value());
  EXPECT_EQ(cut->certificate.edges, (std::vector<EdgeId>{a_, b_}));
  EXPECT_EQ(cut->hidden_count, 1);

  EXPECT_FALSE(
      MinHiddenCut(instance_, fresh_.With(a_, EdgeState::kOn)).has_value());
}

TEST(GraphTest, SameEndpointsIsAnEmptyPath) {
  auto g = testing::TriangleGraph();
  Instance instance = MakeInstance(g, 0, 0, 0.5, 1);
  CertificateStatus status = GetCertificateStatus(instance, Belief(3));
  ASSERT_EQ(status.kind, Connectivity::kPathFound);
  EXPECT_TRUE(status.certificate->edges.empty());
  EXPECT_EQ(MinHiddenPath(instance, Belief(3))->hidden_count, 0);
  EXPECT_FALSE(MinHiddenCut(instance, Belief(3)).has_value());
}

TEST(GraphTest, DisconnectedEndpointsIsAnEmptyCut) {
  Graph::Builder b(false);
  b.AddEdge("a", "s", "x");
  b.AddNode("t");
  auto g = std::make_shared<const Graph>(std::move(b).Build());
  Instance instance =
      MakeInstance(g, *g->FindNode("s"), *g->FindNode("t"), 0.5, 1);
  CertificateStatus status = GetCertificateStatus(instance, Belief(1));
  ASSERT_EQ(status.kind, Connectivity::kCutFound);
  EXPECT_TRUE(status.certificate->edges.empty());
  EXPECT_EQ(MinHiddenCut(instance, Belief(1))->hidden_count, 0);
}

TEST(GraphTest, DirectedCutsOnlyCountForwardArcs) {
  // s->x, x->t and a back arc t->s that never helps reach t.
  Graph::Builder b(true);
  b.AddEdge("f1", "s", "x");
  b.AddEdge("f2", "x", "t");
  b.AddEdge("back", "t", "s");
  auto g = std::make_shared<const Graph>(std::move(b).Build());
  Instance instance =
      MakeInstance(g, *g->FindNode("s"), *g->FindNode("t"), 0.5, 3);
  auto cut = MinHiddenCut(instance, Belief(3));
  ASSERT_TRUE(cut.has_value());
  EXPECT_EQ(cut->hidden_count, 1);
  EXPECT_EQ(cut->certificate.edges, std::vector<EdgeId>{0});
  Belief off(3);
  off.Reveal(1, EdgeState::kOff);
  EXPECT_EQ(GetCertificateStatus(instance, off).kind, Connectivity::kCutFound);
}

TEST(GraphTest, BuilderRejectsMalformedEdges) {
  Graph::Builder b(false);
  b.AddEdge("a", "s", "t");
  EXPECT_THROW(b.AddEdge("a", "s", "x"), Error);    // Duplicate id.
  EXPECT_THROW(b.AddEdge("p", "t", "s"), Error);    // Parallel.
  EXPECT_THROW(b.AddEdge("loop", "s", "s"), Error); // Self-loop.
  EXPECT_THROW(b.AddEdge("bad(", "s", "y"), Error); // Reserved character.
}

TEST(GraphTest, InstanceValidation) {
  auto g = testing::TriangleGraph();
  EXPECT_THROW(MakeInstance(g, 0, 1, 0.0, 1), Error);
  EXPECT_THROW(MakeInstance(g, 0, 1, 1.0, 1), Error);
  EXPECT_THROW(MakeInstance(g, 0, 1, 0.5, 0), Error);
  EXPECT_THROW(MakeInstance(g, 0, 1, 0.5, 4), Error);
  EXPECT_THROW(MakeInstance(g, 0, 9, 0.5, 1), Error);
}

TEST(GraphTest, RevealIsOneWay) {
  Belief belief(2);
  belief.Reveal(0, EdgeState::kOn);
  try {
    belief.Reveal(0, EdgeState::kOff);
    FAIL() << "second reveal accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kContractViolation);
  }
  EXPECT_THROW(belief.Reveal(1, EdgeState::kHidden), Error);
  EXPECT_THROW(belief.Reveal(5, EdgeState::kOn), Error);
}

// Random small graphs and beliefs checked against the brute-force oracles.
class GraphPropertyTest : public ::testing::TestWithParam<bool> {};

TEST_P(GraphPropertyTest, MinPathAndMinCutMeetInAHiddenEdge) {
  std::mt19937_64 rng(GetParam() ? 11 : 12);
  int checked = 0;
  for (int trial = 0; checked < 1000; ++trial) {
    Instance instance =
        testing::RandomInstance(rng, 3 + trial % 5, 2 + trial % 9, GetParam(),
                                0.5, 1);
    Belief belief = testing::RandomBelief(rng, instance.num_edges(), 0.4);
    auto path = MinHiddenPath(instance, belief);
    auto cut = MinHiddenCut(instance, belief);
    if (!path || !cut) continue;
    ++checked;
    std::vector<EdgeId> shared;
    for (EdgeId e : path->certificate.edges) {
      if (std::count(cut->certificate.edges.begin(),
                     cut->certificate.edges.end(), e)) {
        shared.push_back(e);
      }
    }
    ASSERT_FALSE(shared.empty()) << "trial " << trial;
    for (EdgeId e : shared) EXPECT_TRUE(belief.hidden(e));
  }
}

TEST_P(GraphPropertyTest, SearchesMatchBruteForce) {
  std::mt19937_64 rng(GetParam() ? 21 : 22);
  for (int trial = 0; trial < 400; ++trial) {
    Instance instance = testing::RandomInstance(
        rng, 3 + trial % 4, 1 + trial % 10, GetParam(), 0.5, 1);
    Belief belief = testing::RandomBelief(rng, instance.num_edges(), 0.5);
    Connectivity expected = testing::ReferenceStatus(instance, belief);
    CertificateStatus status = GetCertificateStatus(instance, belief);
    ASSERT_EQ(status.kind, expected) << "trial " << trial;

    auto path = MinHiddenPath(instance, belief);
    auto cut = MinHiddenCut(instance, belief);
    EXPECT_EQ(!path.has_value(), expected == Connectivity::kCutFound);
    EXPECT_EQ(!cut.has_value(), expected == Connectivity::kPathFound);
    auto ref_path = testing::ReferenceMinHiddenPath(instance, belief);
    auto ref_cut = testing::ReferenceMinHiddenCut(instance, belief);
    ASSERT_EQ(path.has_value(), ref_path.has_value());
    ASSERT_EQ(cut.has_value(), ref_cut.has_value());
    if (path) {
      EXPECT_EQ(path->hidden_count, *ref_path);
      EXPECT_TRUE(IsPathOf(instance, path->certificate.edges));
      EXPECT_TRUE(IsLive(path->certificate, belief));
    }
    if (cut) {
      EXPECT_EQ(cut->hidden_count, *ref_cut);
      EXPECT_TRUE(IsCutOf(instance, cut->certificate.edges));
      EXPECT_TRUE(IsLive(cut->certificate, belief));
    }
    if (status.certificate) {
      EdgeState needed = status.kind == Connectivity::kPathFound
                             ? EdgeState::kOn
                             : EdgeState::kOff;
      for (EdgeId e : status.certificate->edges) {
        EXPECT_EQ(belief.state(e), needed);
      }
    }
  }
}

TEST_P(GraphPropertyTest, StatusIsMonotoneAndFullRevealIsDecided) {
  std::mt19937_64 rng(GetParam() ? 31 : 32);
  for (int trial = 0; trial < 200; ++trial) {
    Instance instance = testing::RandomInstance(
        rng, 3 + trial % 5, 1 + trial % 10, GetParam(), 0.5, 1);
    std::vector<EdgeId> order(instance.num_edges());
    for (EdgeId e = 0; e < instance.num_edges(); ++e) order[e] = e;
    std::shuffle(order.begin(), order.end(), rng);
    Belief belief(instance.num_edges());
    Connectivity previous = GetCertificateStatus(instance, belief).kind;
    for (EdgeId e : order) {
      belief.Reveal(e, rng() % 2 ? EdgeState::kOn : EdgeState::kOff);
      Connectivity now = GetCertificateStatus(instance, belief).kind;
      if (previous != Connectivity::kOpen) EXPECT_EQ(now, previous);
      previous = now;
    }
    EXPECT_NE(previous, Connectivity::kOpen);
  }
}

INSTANTIATE_TEST_SUITE_P(Directedness, GraphPropertyTest, ::testing::Bool(),
                         [](const auto& info) {
                           return info.param ? "Directed" : "Undirected";
                         });

}  // namespace
}  // namespace lqct
