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

#ifndef LQCT_SESSION_STORE_H_
#define LQCT_SESSION_STORE_H_

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

struct sqlite3;

namespace lqct {

// One persisted session: an opaque JSON body plus a version counter used for
// optimistic concurrency.
struct StoredSession {
  std::string id;
  int64_t version = 0;
  std::string body;
};

class SessionStore {
 public:
  virtual ~SessionStore() = default;

  // Returns false when the id already exists.
  virtual bool Insert(const StoredSession& session) = 0;
  virtual std::optional<StoredSession> Load(const std::string& id) const = 0;
  // Replaces the body and bumps the version only if the stored version still
  // equals `expected_version`. Returns false otherwise.
  virtual bool Update(const std::string& id, int64_t expected_version,
                      const std::string& body) = 0;
  // All sessions ordered by id.
  virtual std::vector<StoredSession> List() const = 0;
};

class MemorySessionStore : public SessionStore {
 public:
  bool Insert(const StoredSession& session) override;
  std::optional<StoredSession> Load(const std::string& id) const override;
  bool Update(const std::string& id, int64_t expected_version,
              const std::string& body) override;
  std::vector<StoredSession> List() const override;

 private:
  mutable std::mutex mu_;
  std::map<std::string, StoredSession> sessions_;
};

// Sessions in a single SQLite table, so they survive restarts.
class SqliteSessionStore : public SessionStore {
 public:
  explicit SqliteSessionStore(const std::string& path);
  ~SqliteSessionStore() override;
  SqliteSessionStore(const SqliteSessionStore&) = delete;
  SqliteSessionStore& operator=(const SqliteSessionStore&) = delete;

  bool Insert(const StoredSession& session) override;
  std::optional<StoredSession> Load(const std::string& id) const override;
  bool Update(const std::string& id, int64_t expected_version,
              const std::string& body) override;
  std::vector<StoredSession> List() const override;

 private:
  mutable std::mutex mu_;
  sqlite3* db_ = nullptr;
};

}  // namespace lqct

#endif  // LQCT_SESSION_STORE_H_
