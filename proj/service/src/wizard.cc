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

#include <ctime>
#include <random>

#include "lqct/error.h"
#include "lqct/graph_io.h"
#include "lqct/heuristics.h"
#include "lqct/policy.h"

namespace lqct {

using nlohmann::json;

std::string_view WizardErrorCodeName(WizardErrorCode code) {
  switch (code) {
    case WizardErrorCode::kInvalidRequest:
      return "invalid_request";
    case WizardErrorCode::kNotFound:
      return "not_found";
    case WizardErrorCode::kNotPending:
      return "not_pending";
    case WizardErrorCode::kSessionClosed:
      return "session_closed";
    case WizardErrorCode::kVersionConflict:
      return "version_conflict";
  }
  return "unknown";
}

std::string_view SessionStatusName(SessionStatus status) {
  switch (status) {
    case SessionStatus::kOpen:
      return "open";
    case SessionStatus::kPathFound:
      return "path_found";
    case SessionStatus::kCutFound:
      return "cut_found";
    case SessionStatus::kBudgetExhausted:
      return "budget_exhausted";
  }
  return "unknown";
}

namespace {

[[noreturn]] void Reject(WizardErrorCode code, const std::string& message) {
  throw WizardError(code, message);
}

SessionStatus ParseStatus(std::string_view name) {
  for (auto s : {SessionStatus::kOpen, SessionStatus::kPathFound,
                 SessionStatus::kCutFound, SessionStatus::kBudgetExhausted}) {
    if (SessionStatusName(s) == name) return s;
  }
  Fail(ErrorCode::kInvalidInput, "unknown session status " + std::string(name));
}

std::string NowIso8601() {
  auto now = std::chrono::system_clock::now();
  std::time_t secs = std::chrono::system_clock::to_time_t(now);
  auto millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                    now.time_since_epoch())
                    .count() %
                1000;
  std::tm utc{};
  gmtime_r(&secs, &utc);
  char date[32];
  std::strftime(date, sizeof(date), "%Y-%m-%dT%H:%M:%S", &utc);
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%s.%03dZ", date, static_cast<int>(millis));
  return buf;
}

std::string NewSessionId() {
  static std::mutex mu;
  static std::mt19937_64 rng{std::random_device{}()};
  std::lock_guard lock(mu);
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(rng()));
  return buf;
}

}  // namespace

json SessionState::ToJson(bool include_graph) const {
  json out;
  out["schema"] = kSchemaVersion;
  out["id"] = id;
  out["version"] = version;
  if (include_graph) out["graph"] = graph_text;
  out["source"] = source;
  out["target"] = target;
  out["budget"] = budget;
  out["p"] = p;
  out["heuristic"] = heuristic;
  out["created_at"] = created_at;
  out["status"] = SessionStatusName(status);
  out["remaining_budget"] = remaining_budget;
  out["pending"] = pending ? json{{"edge", pending->edge},
                                  {"note", pending->note}}
                           : json(nullptr);
  json entries = json::array();
  for (const TranscriptEntry& t : transcript) {
    entries.push_back({{"edge", t.edge},
                       {"answer", t.answer == EdgeState::kOn ? "on" : "off"},
                       {"timestamp", t.timestamp},
                       {"note", t.note}});
  }
  out["transcript"] = std::move(entries);
  if (status == SessionStatus::kPathFound ||
      status == SessionStatus::kCutFound) {
    out["certificate"] = {
        {"kind", status == SessionStatus::kPathFound ? "path" : "cut"},
        {"edges", certificate}};
  } else {
    out["certificate"] = nullptr;
  }
  return out;
}

SessionState SessionState::FromJson(const json& body) {
  if (body.value("schema", 0) != kSchemaVersion) {
    Fail(ErrorCode::kInvalidInput, "unsupported session schema");
  }
  SessionState s;
  s.id = body.at("id").get<std::string>();
  s.version = body.at("version").get<int64_t>();
  s.graph_text = body.at("graph").get<std::string>();
  s.source = body.at("source").get<std::string>();
  s.target = body.at("target").get<std::string>();
  s.budget = body.at("budget").get<int>();
  s.p = body.at("p").get<double>();
  s.heuristic = body.at("heuristic").get<std::string>();
  s.created_at = body.at("created_at").get<std::string>();
  s.status = ParseStatus(body.at("status").get<std::string>());
  s.remaining_budget = body.at("remaining_budget").get<int>();
  if (!body.at("pending").is_null()) {
    s.pending = Proposal{body["pending"].at("edge").get<std::string>(),
                         body["pending"].value("note", "")};
  }
  for (const json& t : body.at("transcript")) {
    s.transcript.push_back(
        {t.at("edge").get<std::string>(),
         t.at("answer").get<std::string>() == "on" ? EdgeState::kOn
                                                   : EdgeState::kOff,
         t.value("timestamp", ""), t.value("note", "")});
  }
  if (!body.at("certificate").is_null()) {
    s.certificate =
        body["certificate"].at("edges").get<std::vector<std::string>>();
  }
  return s;
}

// Parsed instance and heuristic for one session, kept across requests.
struct Wizard::Live {
  Instance instance;
  std::unique_ptr<Policy> policy;
};

Wizard::Wizard(std::shared_ptr<SessionStore> store, WizardOptions options)
    : store_(std::move(store)), options_(options) {}

Wizard::~Wizard() = default;

std::shared_ptr<Wizard::Live> Wizard::LiveFor(const SessionState& state) {
  {
    std::lock_guard lock(mu_);
    if (auto it = live_.find(state.id); it != live_.end()) return it->second;
  }
  auto live = std::make_shared<Live>();
  auto graph = std::make_shared<const Graph>(ParseGraph(state.graph_text));
  // A zero budget is valid for a session (it is over at once) but not for an
  // instance, which always allows one query.
  live->instance = MakeNamedInstance(graph, state.source, state.target,
                                     state.p, std::max(1, state.budget));
  HeuristicOptions options;
  options.tree_time_guard = options_.tree_time_guard;
  live->policy = MakeHeuristicPolicy(
      live->instance, ParseHeuristicSpec(state.heuristic), options);
  std::lock_guard lock(mu_);
  return live_.try_emplace(state.id, std::move(live)).first->second;
}

std::shared_ptr<std::mutex> Wizard::LockFor(const std::string& id) {
  std::lock_guard lock(mu_);
  auto& slot = locks_[id];
  if (!slot) slot = std::make_shared<std::mutex>();
  return slot;
}

// Recomputes status, certificate and the next proposal from the transcript.
void Wizard::Advance(SessionState& state, Live& live) {
  const Instance& instance = live.instance;
  const Graph& graph = *instance.graph;
  Belief belief(instance.num_edges());
  for (const TranscriptEntry& t : state.transcript) {
    belief.Reveal(*graph.FindEdge(t.edge), t.answer);
  }
  state.remaining_budget =
      state.budget - static_cast<int>(state.transcript.size());
  state.pending.reset();
  state.certificate.clear();
  CertificateStatus status = GetCertificateStatus(instance, belief);
  if (status.kind != Connectivity::kOpen) {
    state.status = status.kind == Connectivity::kPathFound
                       ? SessionStatus::kPathFound
                       : SessionStatus::kCutFound;
    for (EdgeId e : status.certificate->edges) {
      state.certificate.push_back(graph.edge_name(e));
    }
    return;
  }
  if (state.remaining_budget <= 0) {
    state.status = SessionStatus::kBudgetExhausted;
    return;
  }
  state.status = SessionStatus::kOpen;
  Decision d = live.policy->Next(belief, state.remaining_budget);
  if (!d.edge) {
    Fail(ErrorCode::kInternal, "heuristic made no proposal on an open state");
  }
  CheckProposal(d, belief, live.policy->name());
  state.pending = Proposal{graph.edge_name(*d.edge), d.note};
}

SessionState Wizard::Create(const CreateRequest& request) {
  SessionState state;
  state.graph_text = request.graph_text;
  state.source = request.source;
  state.target = request.target;
  state.budget = request.budget;
  state.p = request.p;
  state.heuristic = request.heuristic;
  state.created_at = NowIso8601();
  if (request.budget < 0) {
    Reject(WizardErrorCode::kInvalidRequest, "budget must be non-negative");
  }
  std::shared_ptr<Live> live;
  try {
    // Normalize the spec so stored sessions always hold the canonical form.
    state.heuristic = ParseHeuristicSpec(request.heuristic).ToString();
    state.id = NewSessionId();
    live = LiveFor(state);
    Advance(state, *live);
  } catch (const Error& e) {
    {
      std::lock_guard lock(mu_);
      live_.erase(state.id);
    }
    if (e.code() == ErrorCode::kInternal) throw;
    Reject(WizardErrorCode::kInvalidRequest, e.what());
  }
  state.version = 1;
  if (!store_->Insert({state.id, state.version, state.ToJson().dump()})) {
    Fail(ErrorCode::kInternal, "session id collision");
  }
  return state;
}

SessionState Wizard::Get(const std::string& id) const {
  auto stored = store_->Load(id);
  if (!stored) Reject(WizardErrorCode::kNotFound, "no session " + id);
  SessionState state = SessionState::FromJson(json::parse(stored->body));
  state.version = stored->version;
  return state;
}

SessionState Wizard::Answer(const std::string& id, const std::string& edge,
                            EdgeState answer,
                            std::optional<int64_t> expected_version) {
  if (answer != EdgeState::kOn && answer != EdgeState::kOff) {
    Reject(WizardErrorCode::kInvalidRequest, "answer must be on or off");
  }
  auto lock_ptr = LockFor(id);
  std::lock_guard session_lock(*lock_ptr);
  SessionState state = Get(id);
  if (expected_version && *expected_version != state.version) {
    Reject(WizardErrorCode::kVersionConflict,
           "session is at version " + std::to_string(state.version));
  }
  if (state.status != SessionStatus::kOpen) {
    Reject(WizardErrorCode::kSessionClosed,
           "session is " + std::string(SessionStatusName(state.status)));
  }
  if (!state.pending || state.pending->edge != edge) {
    Reject(WizardErrorCode::kNotPending,
           "edge '" + edge + "' is not the pending proposal" +
               (state.pending ? " ('" + state.pending->edge + "')" : ""));
  }
  std::shared_ptr<Live> live = LiveFor(state);
  state.transcript.push_back({edge, answer, NowIso8601(), state.pending->note});
  Advance(state, *live);
  const int64_t expected = state.version++;
  if (!store_->Update(id, expected, state.ToJson().dump())) {
    Reject(WizardErrorCode::kVersionConflict, "session changed concurrently");
  }
  return state;
}

std::vector<SessionState> Wizard::List() const {
  std::vector<SessionState> out;
  for (const StoredSession& s : store_->List()) {
    SessionState state = SessionState::FromJson(json::parse(s.body));
    state.version = s.version;
    out.push_back(std::move(state));
  }
  return out;
}

}  // namespace lqct
