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

#ifndef LQCT_WIZARD_H_
#define LQCT_WIZARD_H_

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "lqct/graph.h"
#include "lqct/session_store.h"

namespace lqct {

// Machine-readable failures surfaced by the wizard API.
enum class WizardErrorCode {
  kInvalidRequest,
  kNotFound,
  kNotPending,
  kSessionClosed,
  kVersionConflict,
};

std::string_view WizardErrorCodeName(WizardErrorCode code);

class WizardError : public std::runtime_error {
 public:
  WizardError(WizardErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  WizardErrorCode code() const { return code_; }

 private:
  WizardErrorCode code_;
};

enum class SessionStatus { kOpen, kPathFound, kCutFound, kBudgetExhausted };

std::string_view SessionStatusName(SessionStatus status);

struct TranscriptEntry {
  std::string edge;
  EdgeState answer = EdgeState::kHidden;  // kOn or kOff.
  std::string timestamp;                  // ISO 8601, UTC.
  std::string note;                       // Heuristic remark, e.g. fallbacks.
};

struct Proposal {
  std::string edge;
  std::string note;
};

// Everything needed to resume a session; serialized as the stored body and
// as API responses.
struct SessionState {
  static constexpr int kSchemaVersion = 1;

  std::string id;
  int64_t version = 0;
  std::string graph_text;
  std::string source;
  std::string target;
  int budget = 0;
  double p = 0.5;
  std::string heuristic;
  std::string created_at;
  SessionStatus status = SessionStatus::kOpen;
  int remaining_budget = 0;
  std::optional<Proposal> pending;
  std::vector<TranscriptEntry> transcript;
  std::vector<std::string> certificate;  // Edge names once decided.

  // `include_graph` controls whether the graph text is embedded.
  nlohmann::json ToJson(bool include_graph = true) const;
  static SessionState FromJson(const nlohmann::json& body);
};

struct CreateRequest {
  std::string graph_text;
  std::string source;
  std::string target;
  int budget = 0;
  double p = 0.5;
  std::string heuristic = "h1";
};

struct WizardOptions {
  // Per-step guard for tree:<B'> proposals; breaches fall back to h1.
  std::chrono::milliseconds tree_time_guard{5000};
};

class Wizard {
 public:
  explicit Wizard(std::shared_ptr<SessionStore> store,
                  WizardOptions options = {});
  ~Wizard();

  SessionState Create(const CreateRequest& request);
  SessionState Get(const std::string& id) const;
  // `answer` must be kOn or kOff. When `expected_version` is set it must equal
  // the stored version.
  SessionState Answer(const std::string& id, const std::string& edge,
                      EdgeState answer,
                      std::optional<int64_t> expected_version = std::nullopt);
  std::vector<SessionState> List() const;

 private:
  struct Live;

  std::shared_ptr<Live> LiveFor(const SessionState& state);
  std::shared_ptr<std::mutex> LockFor(const std::string& id);
  void Advance(SessionState& state, Live& live);

  std::shared_ptr<SessionStore> store_;
  WizardOptions options_;
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<std::mutex>> locks_;
  std::map<std::string, std::shared_ptr<Live>> live_;
};

}  // namespace lqct

#endif  // LQCT_WIZARD_H_
