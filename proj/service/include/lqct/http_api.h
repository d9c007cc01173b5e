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

#ifndef LQCT_HTTP_API_H_
#define LQCT_HTTP_API_H_

#include <memory>
#include <string>

#include "lqct/wizard.h"

namespace httplib {
class Server;
}  // namespace httplib

namespace lqct {

// JSON-over-HTTP front end for a Wizard:
//   POST /sessions               create a session
//   GET  /sessions               list sessions (without graph text)
//   GET  /sessions/{id}          full snapshot
//   POST /sessions/{id}/answer   answer the pending proposal
// Failures use {"error": {"code": ..., "message": ...}}.
class WizardHttpServer {
 public:
  explicit WizardHttpServer(Wizard& wizard);
  ~WizardHttpServer();
  WizardHttpServer(const WizardHttpServer&) = delete;
  WizardHttpServer& operator=(const WizardHttpServer&) = delete;

  // Returns the chosen port, or -1 on failure.
  int BindToAnyPort(const std::string& host);
  bool Bind(const std::string& host, int port);
  // Serves until Stop(); returns false if the socket failed.
  bool Listen();
  void Stop();
  bool is_running() const;

 private:
  Wizard& wizard_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace lqct

#endif  // LQCT_HTTP_API_H_
