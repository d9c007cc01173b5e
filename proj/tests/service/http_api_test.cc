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

#include <gtest/gtest.h>

#include <thread>

#include "httplib.h"

namespace lqct {
namespace {

using nlohmann::json;

constexpr char kTriangle[] = "undirected\na s t\nb s x\nc x t\n";

class HttpApiTest : public ::testing::Test {
 protected:
  void SetUp() override {
    wizard_ = std::make_unique<Wizard>(std::make_shared<MemorySessionStore>());
    server_ = std::make_unique<WizardHttpServer>(*wizard_);
    port_ = server_->BindToAnyPort("127.0.0.1");
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_->Listen(); });
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
    for (int k = 0; k < 200 && !server_->is_running(); ++k) {
      std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
  }

  void TearDown() override {
    server_->Stop();
    thread_.join();
  }

  std::pair<int, json> Post(const std::string& path, const std::string& body) {
    auto res = client_->Post(path, body, "application/json");
    EXPECT_TRUE(res);
    return {res->status, json::parse(res->body)};
  }
  std::pair<int, json> Post(const std::string& path, const json& body) {
    return Post(path, body.dump());
  }
  std::pair<int, json> Get(const std::string& path) {
    auto res = client_->Get(path);
    EXPECT_TRUE(res);
    return {res->status, json::parse(res->body)};
  }

  json CreateTriangle() {
    auto [status, body] = Post("/sessions", json{{"graph", {{"text", kTriangle}}},
                                                 {"source", "s"},
                                                 {"target", "t"},
                                                 {"budget", 3},
                                                 {"heuristic", "h1"}});
    EXPECT_EQ(status, 201);
    return body;
  }

  std::unique_ptr<Wizard> wizard_;
  std::unique_ptr<WizardHttpServer> server_;
  std::unique_ptr<httplib::Client> client_;
  std::thread thread_;
  int port_ = 0;
};

TEST_F(HttpApiTest, TriangleSessionEndsInACut) {
  json s = CreateTriangle();
  EXPECT_EQ(s["status"], "open");
  EXPECT_EQ(s["pending"]["edge"], "a");
  EXPECT_EQ(s["transcript"].size(), 0u);
  const std::string id = s["id"];

  auto [st1, after_a] =
      Post("/sessions/" + id + "/answer", json{{"edge", "a"}, {"answer", "off"}});
  EXPECT_EQ(st1, 200);
  EXPECT_EQ(after_a["pending"]["edge"], "b");

  // A reload mid-session returns the identical snapshot.
  auto [st_get, snapshot] = Get("/sessions/" + id);
  EXPECT_EQ(st_get, 200);
  EXPECT_EQ(snapshot, after_a);

  auto [st2, done] = Post("/sessions/" + id + "/answer",
                          json{{"edge", "b"}, {"answer", "off"}, {"version", 2}});
  EXPECT_EQ(st2, 200);
  EXPECT_EQ(done["status"], "cut_found");
  EXPECT_TRUE(done["pending"].is_null());
  EXPECT_EQ(done["certificate"]["kind"], "cut");
  EXPECT_EQ(done["certificate"]["edges"], json({"a", "b"}));
  EXPECT_EQ(done["transcript"].size(), 2u);
  EXPECT_EQ(done["transcript"][1]["answer"], "off");
}

TEST_F(HttpApiTest, ErrorsCarryMachineReadableCodes) {
  json s = CreateTriangle();
  const std::string id = s["id"];
  auto expect_error = [](const std::pair<int, json>& r, int status,
                         const char* code) {
    EXPECT_EQ(r.first, status);
    EXPECT_EQ(r.second["error"]["code"], code) << r.second.dump();
    EXPECT_TRUE(r.second["error"]["message"].is_string());
  };
  expect_error(Get("/sessions/nope"), 404, "not_found");
  expect_error(Post("/sessions/" + id + "/answer",
                    json{{"edge", "c"}, {"answer", "on"}}),
               409, "not_pending");
  expect_error(Post("/sessions/" + id + "/answer",
                    json{{"edge", "a"}, {"answer", "on"}, {"version", 9}}),
               409, "version_conflict");
  expect_error(Post("/sessions/" + id + "/answer",
                    json{{"edge", "a"}, {"answer", "maybe"}}),
               400, "invalid_request");
  expect_error(Post("/sessions/" + id + "/answer", std::string("{not json")),
               400, "invalid_request");
  expect_error(Post("/sessions", json{{"source", "s"}}), 400,
               "invalid_request");
  expect_error(Post("/sessions", json{{"graph", {{"text", kTriangle}}},
                                      {"source", "s"},
                                      {"target", "t"},
                                      {"budget", "three"}}),
               400, "invalid_request");
  expect_error(Post("/sessions", json{{"graph", {{"path", "/no/such/file"}}},
                                      {"source", "s"},
                                      {"target", "t"},
                                      {"budget", 3}}),
               400, "invalid_request");
  Post("/sessions/" + id + "/answer", json{{"edge", "a"}, {"answer", "on"}});
  expect_error(Post("/sessions/" + id + "/answer",
                    json{{"edge", "b"}, {"answer", "on"}}),
               409, "session_closed");
  expect_error(Get("/nowhere"), 404, "not_found");
}

TEST_F(HttpApiTest, ListsSessionsWithoutGraphs) {
  CreateTriangle();
  CreateTriangle();
  auto [status, body] = Get("/sessions");
  EXPECT_EQ(status, 200);
  ASSERT_EQ(body["sessions"].size(), 2u);
  for (const json& s : body["sessions"]) {
    EXPECT_FALSE(s.contains("graph"));
    EXPECT_EQ(s["status"], "open");
  }
}

TEST_F(HttpApiTest, GraphsLoadFromFiles) {
  auto [status, body] = Post(
      "/sessions", json{{"graph", {{"path", std::string(LQCT_DATA_DIR) +
                                                "/triangle.graph"}}},
                        {"source", "s"},
                        {"target", "t"},
                        {"budget", 0}});
  EXPECT_EQ(status, 201);
  EXPECT_EQ(body["status"], "budget_exhausted");
  EXPECT_EQ(body["p"], 0.5);
}

}  // namespace
}  // namespace lqct
