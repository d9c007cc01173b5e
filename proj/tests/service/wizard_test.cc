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

#include "lqct/wizard.h"

#include <gtest/gtest.h>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <random>
#include <thread>

#include "lqct/evaluation.h"
#include "lqct/graph_io.h"
#include "lqct/heuristics.h"
#include "lqct/policy.h"
#include "test_util.h"

namespace lqct {
namespace {

constexpr char kTriangle[] = "undirected\na s t\nb s x\nc x t\n";

CreateRequest TriangleRequest(int budget = 3, std::string heuristic = "h1") {
  CreateRequest r;
  r.graph_text = kTriangle;
  r.source = "s";
  r.target = "t";
  r.budget = budget;
  r.heuristic = std::move(heuristic);
  return r;
}

Wizard MemoryWizard(WizardOptions options = {}) {
  return Wizard(std::make_shared<MemorySessionStore>(), options);
}

WizardErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const WizardError& e) {
    return e.code();
  }
  ADD_FAILURE() << "no WizardError";
  return WizardErrorCode::kInvalidRequest;
}

TEST(WizardTest, TriangleCutInTwoAnswers) {
  Wizard wizard = MemoryWizard();
  SessionState s = wizard.Create(TriangleRequest());
  EXPECT_EQ(s.status, SessionStatus::kOpen);
  EXPECT_TRUE(s.transcript.empty());
  ASSERT_TRUE(s.pending.has_value());
  EXPECT_EQ(s.pending->edge, "a");
  EXPECT_EQ(s.version, 1);

  s = wizard.Answer(s.id, "a", EdgeState::kOff);
  ASSERT_TRUE(s.pending.has_value());
  EXPECT_EQ(s.pending->edge, "b");
  EXPECT_EQ(s.remaining_budget, 2);

  s = wizard.Answer(s.id, "b", EdgeState::kOff);
  EXPECT_EQ(s.status, SessionStatus::kCutFound);
  EXPECT_FALSE(s.pending.has_value());
  EXPECT_EQ(s.certificate, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(s.transcript.size(), 2u);
  EXPECT_EQ(s.version, 3);
  EXPECT_EQ(CodeOf([&] { wizard.Answer(s.id, "c", EdgeState::kOn); }),
            WizardErrorCode::kSessionClosed);
}

TEST(WizardTest, PathAfterOneAnswer) {
  Wizard wizard = MemoryWizard();
  SessionState s = wizard.Create(TriangleRequest());
  s = wizard.Answer(s.id, "a", EdgeState::kOn);
  EXPECT_EQ(s.status, SessionStatus::kPathFound);
  EXPECT_EQ(s.certificate, std::vector<std::string>{"a"});
  EXPECT_FALSE(wizard.Get(s.id).pending.has_value());
}

TEST(WizardTest, DegenerateSessionsStartClosed) {
  Wizard wizard = MemoryWizard();
  CreateRequest same = TriangleRequest();
  same.target = "s";
  SessionState s = wizard.Create(same);
  EXPECT_EQ(s.status, SessionStatus::kPathFound);
  EXPECT_FALSE(s.pending.has_value());
  EXPECT_TRUE(s.certificate.empty());

  SessionState zero = wizard.Create(TriangleRequest(0));
  EXPECT_EQ(zero.status, SessionStatus::kBudgetExhausted);
  EXPECT_FALSE(zero.pending.has_value());
}

TEST(WizardTest, BudgetRunsOut) {
  Wizard wizard = MemoryWizard();
  SessionState s = wizard.Create(TriangleRequest(2));
  s = wizard.Answer(s.id, "a", EdgeState::kOff);
  s = wizard.Answer(s.id, "b", EdgeState::kOn);
  EXPECT_EQ(s.status, SessionStatus::kBudgetExhausted);
  EXPECT_EQ(s.remaining_budget, 0);
}

TEST(WizardTest, RequestErrors) {
  Wizard wizard = MemoryWizard();
  SessionState s = wizard.Create(TriangleRequest());
  EXPECT_EQ(CodeOf([&] { wizard.Answer(s.id, "c", EdgeState::kOff); }),
            WizardErrorCode::kNotPending);
  EXPECT_EQ(CodeOf([&] { wizard.Answer(s.id, "a", EdgeState::kOff, 7); }),
            WizardErrorCode::kVersionConflict);
  EXPECT_EQ(CodeOf([&] { wizard.Get("missing"); }),
            WizardErrorCode::kNotFound);
  EXPECT_EQ(CodeOf([&] { wizard.Answer("missing", "a", EdgeState::kOn); }),
            WizardErrorCode::kNotFound);
  EXPECT_EQ(CodeOf([&] { wizard.Answer(s.id, "a", EdgeState::kHidden); }),
            WizardErrorCode::kInvalidRequest);
  EXPECT_EQ(CodeOf([&] { wizard.Create(TriangleRequest(3, "h7")); }),
            WizardErrorCode::kInvalidRequest);
  EXPECT_EQ(CodeOf([&] { wizard.Create(TriangleRequest(-1)); }),
            WizardErrorCode::kInvalidRequest);
  CreateRequest bad_node = TriangleRequest();
  bad_node.target = "nowhere";
  EXPECT_EQ(CodeOf([&] { wizard.Create(bad_node); }),
            WizardErrorCode::kInvalidRequest);
  CreateRequest bad_graph = TriangleRequest();
  bad_graph.graph_text = "undirected\na s\n";
  EXPECT_EQ(CodeOf([&] { wizard.Create(bad_graph); }),
            WizardErrorCode::kInvalidRequest);
  // Failed requests leave the session untouched.
  EXPECT_EQ(wizard.Get(s.id).version, 1);
  EXPECT_EQ(wizard.List().size(), 1u);
}

TEST(WizardTest, SnapshotsRoundTripThroughJson) {
  Wizard wizard = MemoryWizard();
  SessionState s = wizard.Create(TriangleRequest(3, "mcts:2,50,0.2,1"));
  s = wizard.Answer(s.id, s.pending->edge, EdgeState::kOff);
  SessionState back = SessionState::FromJson(s.ToJson());
  EXPECT_EQ(back.ToJson(), s.ToJson());
  EXPECT_FALSE(s.ToJson(false).contains("graph"));
}

TEST(WizardTest, SessionsSurviveRestart) {
  std::string path =
      (std::filesystem::temp_directory_path() / "lqct_wizard_test.db").string();
  std::filesystem::remove(path);
  std::string id;
  {
    Wizard wizard(std::make_shared<SqliteSessionStore>(path));
    SessionState s = wizard.Create(TriangleRequest());
    id = s.id;
    wizard.Answer(id, "a", EdgeState::kOff);
  }
  Wizard reopened(std::make_shared<SqliteSessionStore>(path));
  SessionState s = reopened.Get(id);
  EXPECT_EQ(s.version, 2);
  ASSERT_TRUE(s.pending.has_value());
  EXPECT_EQ(s.pending->edge, "b");
  s = reopened.Answer(id, "b", EdgeState::kOff);
  EXPECT_EQ(s.status, SessionStatus::kCutFound);
  EXPECT_EQ(reopened.List().size(), 1u);
  std::filesystem::remove(path);
}

TEST(WizardTest, ConcurrentAnswersAreSerialized) {
  Wizard wizard = MemoryWizard();
  for (int round = 0; round < 20; ++round) {
    SessionState s = wizard.Create(TriangleRequest());
    std::atomic<int> ok{0}, conflicts{0};
    std::vector<std::thread> threads;
    for (int k = 0; k < 4; ++k) {
      threads.emplace_back([&] {
        try {
          wizard.Answer(s.id, "a", EdgeState::kOff, s.version);
          ++ok;
        } catch (const WizardError& e) {
          if (e.code() == WizardErrorCode::kVersionConflict) ++conflicts;
        }
      });
    }
    for (auto& t : threads) t.join();
    EXPECT_EQ(ok.load(), 1);
    EXPECT_EQ(conflicts.load(), 3);
    EXPECT_EQ(wizard.Get(s.id).transcript.size(), 1u);
  }
}

TEST(WizardTest, TimeGuardFallsBackToH1AndIsRecorded) {
  WizardOptions options;
  options.tree_time_guard = std::chrono::milliseconds(0);
  Wizard wizard = MemoryWizard(options);
  SessionState s = wizard.Create(TriangleRequest(3, "tree:3"));
  ASSERT_TRUE(s.pending.has_value());
  EXPECT_EQ(s.pending->edge, "a");
  EXPECT_EQ(s.pending->note, "fallback:h1 (time guard)");
  s = wizard.Answer(s.id, "a", EdgeState::kOff);
  EXPECT_EQ(s.transcript[0].note, "fallback:h1 (time guard)");
}

// Drives every answer pattern through the wizard and compares with the
// offline runner: same proposals, and the mean session length equals the
// exhaustive evaluation.
TEST(WizardPropertyTest, SessionsReplayTheOfflinePolicy) {
  std::mt19937_64 rng(61);
  for (const char* heuristic : {"h1", "h2-both", "minsc", "adasub", "tree:2"}) {
    Instance instance = testing::RandomInstance(rng, 6, 8, false, 0.5, 4);
    CreateRequest req;
    req.graph_text = SerializeGraph(*instance.graph);
    req.source = instance.graph->node_name(instance.source);
    req.target = instance.graph->node_name(instance.target);
    req.budget = instance.budget;
    req.heuristic = heuristic;
    Wizard wizard = MemoryWizard();
    auto policy = MakeHeuristicPolicy(instance, ParseHeuristicSpec(heuristic));
    double mean = 0.0;
    const int bits = instance.budget - 1;
    for (uint32_t x = 0; x < (1u << bits); ++x) {
      ResponseVector r(bits);
      for (int i = 0; i < bits; ++i) r[i] = (x >> i) & 1;
      Episode episode = RunPolicy(*policy, instance, r);
      SessionState s = wizard.Create(req);
      size_t step = 0;
      while (s.status == SessionStatus::kOpen) {
        bool on = step < r.size() ? r[step] : true;
        s = wizard.Answer(s.id, s.pending->edge,
                          on ? EdgeState::kOn : EdgeState::kOff);
        ++step;
      }
      ASSERT_EQ(s.transcript.size(), episode.transcript.size()) << heuristic;
      for (size_t k = 0; k < s.transcript.size(); ++k) {
        EXPECT_EQ(s.transcript[k].edge,
                  instance.graph->edge_name(episode.transcript[k].edge));
      }
      mean += ResponseProbability(r, instance.p) * s.transcript.size();
    }
    EXPECT_NEAR(mean, EvaluateExhaustive(*policy, instance).expected_queries,
                1e-12)
        << heuristic;
  }
}

}  // namespace
}  // namespace lqct
