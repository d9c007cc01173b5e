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

#include "lqct/http_api.h"

#include <fstream>
#include <sstream>

#include "httplib.h"
#include "lqct/error.h"

namespace lqct {

using nlohmann::json;

namespace {

int HttpStatusFor(WizardErrorCode code) {
  switch (code) {
    case WizardErrorCode::kInvalidRequest:
      return 400;
    case WizardErrorCode::kNotFound:
      return 404;
    case WizardErrorCode::kNotPending:
    case WizardErrorCode::kSessionClosed:
    case WizardErrorCode::kVersionConflict:
      return 409;
  }
  return 500;
}

void Reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void ReplyError(httplib::Response& res, int status, std::string_view code,
                const std::string& message) {
  Reply(res, status, {{"error", {{"code", code}, {"message", message}}}});
}

[[noreturn]] void Invalid(const std::string& message) {
  throw WizardError(WizardErrorCode::kInvalidRequest, message);
}

json ParseBody(const httplib::Request& req) {
  json body = json::parse(req.body, nullptr, /*allow_exceptions=*/false);
  if (body.is_discarded() || !body.is_object()) {
    Invalid("request body must be a JSON object");
  }
  return body;
}

template <typename T>
T Field(const json& body, const char* name) {
  if (!body.contains(name)) Invalid(std::string("missing field '") + name + "'");
  try {
    return body[name].get<T>();
  } catch (const json::exception&) {
    Invalid(std::string("field '") + name + "' has the wrong type");
  }
}

CreateRequest ParseCreate(const json& body) {
  CreateRequest req;
  const json& graph = body.contains("graph") ? body["graph"] : json();
  if (graph.is_object() && graph.contains("text")) {
    req.graph_text = Field<std::string>(graph, "text");
  } else if (graph.is_object() && graph.contains("path")) {
    std::string path = Field<std::string>(graph, "path");
    std::ifstream in(path);
    if (!in) Invalid("cannot open graph file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    req.graph_text = buf.str();
  } else {
    Invalid("field 'graph' must be {\"text\": ...} or {\"path\": ...}");
  }
  req.source = Field<std::string>(body, "source");
  req.target = Field<std::string>(body, "target");
  req.budget = Field<int>(body, "budget");
  if (body.contains("p")) req.p = Field<double>(body, "p");
  if (body.contains("heuristic")) {
    req.heuristic = Field<std::string>(body, "heuristic");
  }
  return req;
}

// Runs `handler`, translating failures into error documents.
template <typename F>
void Guarded(httplib::Response& res, F&& handler) {
  try {
    handler();
  } catch (const WizardError& e) {
    ReplyError(res, HttpStatusFor(e.code()), WizardErrorCodeName(e.code()),
               e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidInput) {
      ReplyError(res, 400, "invalid_request", e.what());
    } else {
      ReplyError(res, 500, "internal", e.what());
    }
  } catch (const std::exception& e) {
    ReplyError(res, 500, "internal", e.what());
  }
}

}  // namespace

WizardHttpServer::WizardHttpServer(Wizard& wizard)
    : wizard_(wizard), server_(std::make_unique<httplib::Server>()) {
  httplib::Server& s = *server_;

  s.Post("/sessions", [this](const httplib::Request& req,
                             httplib::Response& res) {
    Guarded(res, [&] {
      SessionState state = wizard_.Create(ParseCreate(ParseBody(req)));
      Reply(res, 201, state.ToJson());
    });
  });

  s.Get("/sessions", [this](const httplib::Request&, httplib::Response& res) {
    Guarded(res, [&] {
      json list = json::array();
      for (const SessionState& state : wizard_.List()) {
        list.push_back(state.ToJson(/*include_graph=*/false));
      }
      Reply(res, 200, {{"sessions", std::move(list)}});
    });
  });

  s.Get(R"(/sessions/([^/]+))",
        [this](const httplib::Request& req, httplib::Response& res) {
          Guarded(res, [&] {
            Reply(res, 200, wizard_.Get(req.matches[1]).ToJson());
          });
        });

  s.Post(R"(/sessions/([^/]+)/answer)",
         [this](const httplib::Request& req, httplib::Response& res) {
           Guarded(res, [&] {
             json body = ParseBody(req);
             std::string edge = Field<std::string>(body, "edge");
             std::string answer = Field<std::string>(body, "answer");
             if (answer != "on" && answer != "off") {
               Invalid("field 'answer' must be \"on\" or \"off\"");
             }
             std::optional<int64_t> version;
             if (body.contains("version")) {
               version = Field<int64_t>(body, "version");
             }
             SessionState state = wizard_.Answer(
                 req.matches[1], edge,
                 answer == "on" ? EdgeState::kOn : EdgeState::kOff, version);
             Reply(res, 200, state.ToJson());
           });
         });

  s.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) {
      ReplyError(res, res.status, res.status == 404 ? "not_found" : "invalid_request",
                 "no such route");
    }
  });
}

WizardHttpServer::~WizardHttpServer() { Stop(); }

int WizardHttpServer::BindToAnyPort(const std::string& host) {
  return server_->bind_to_any_port(host);
}

bool WizardHttpServer::Bind(const std::string& host, int port) {
  return server_->bind_to_port(host, port);
}

bool WizardHttpServer::Listen() { return server_->listen_after_bind(); }

void WizardHttpServer::Stop() {
  if (server_) server_->stop();
}

bool WizardHttpServer::is_running() const { return server_->is_running(); }

}  // namespace lqct
