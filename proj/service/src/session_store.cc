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

#include "lqct/session_store.h"

#include <sqlite3.h>

#include "lqct/error.h"

namespace lqct {

bool MemorySessionStore::Insert(const StoredSession& session) {
  std::lock_guard lock(mu_);
  return sessions_.emplace(session.id, session).second;
}

std::optional<StoredSession> MemorySessionStore::Load(
    const std::string& id) const {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) return std::nullopt;
  return it->second;
}

bool MemorySessionStore::Update(const std::string& id,
                                int64_t expected_version,
                                const std::string& body) {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end() || it->second.version != expected_version) {
    return false;
  }
  it->second.body = body;
  ++it->second.version;
  return true;
}

std::vector<StoredSession> MemorySessionStore::List() const {
  std::lock_guard lock(mu_);
  std::vector<StoredSession> out;
  for (const auto& [id, s] : sessions_) out.push_back(s);
  return out;
}

namespace {

// Prepared statement that finalizes itself.
class Statement {
 public:
  Statement(sqlite3* db, const char* sql) : db_(db) {
    if (sqlite3_prepare_v2(db, sql, -1, &stmt_, nullptr) != SQLITE_OK) {
      Fail(ErrorCode::kInternal,
           std::string("sqlite prepare failed: ") + sqlite3_errmsg(db));
    }
  }
  ~Statement() { sqlite3_finalize(stmt_); }
  Statement(const Statement&) = delete;
  Statement& operator=(const Statement&) = delete;

  void Bind(int index, const std::string& text) {
    sqlite3_bind_text(stmt_, index, text.data(), static_cast<int>(text.size()),
                      SQLITE_TRANSIENT);
  }
  void Bind(int index, int64_t value) {
    sqlite3_bind_int64(stmt_, index, value);
  }

  // True while a row is available.
  bool Step() {
    int rc = sqlite3_step(stmt_);
    if (rc == SQLITE_ROW) return true;
    if (rc == SQLITE_DONE || rc == SQLITE_CONSTRAINT) {
      last_constraint_ = rc == SQLITE_CONSTRAINT;
      return false;
    }
    Fail(ErrorCode::kInternal,
         std::string("sqlite step failed: ") + sqlite3_errmsg(db_));
  }
  bool constraint_failed() const { return last_constraint_; }

  std::string Text(int col) const {
    auto* p = reinterpret_cast<const char*>(sqlite3_column_text(stmt_, col));
    return p == nullptr ? std::string()
                        : std::string(p, sqlite3_column_bytes(stmt_, col));
  }
  int64_t Int(int col) const { return sqlite3_column_int64(stmt_, col); }

 private:
  sqlite3* db_;
  sqlite3_stmt* stmt_ = nullptr;
  bool last_constraint_ = false;
};

}  // namespace

SqliteSessionStore::SqliteSessionStore(const std::string& path) {
  if (sqlite3_open(path.c_str(), &db_) != SQLITE_OK) {
    std::string message = db_ != nullptr ? sqlite3_errmsg(db_) : "out of memory";
    sqlite3_close(db_);
    db_ = nullptr;
    Fail(ErrorCode::kInvalidInput,
         "cannot open session database " + path + ": " + message);
  }
  sqlite3_busy_timeout(db_, 5000);
  char* err = nullptr;
  if (sqlite3_exec(db_,
                   "CREATE TABLE IF NOT EXISTS sessions ("
                   " id TEXT PRIMARY KEY,"
                   " version INTEGER NOT NULL,"
                   " body TEXT NOT NULL)",
                   nullptr, nullptr, &err) != SQLITE_OK) {
    std::string message = err != nullptr ? err : "unknown error";
    sqlite3_free(err);
    sqlite3_close(db_);
    db_ = nullptr;
    Fail(ErrorCode::kInternal, "cannot create session table: " + message);
  }
}

SqliteSessionStore::~SqliteSessionStore() { sqlite3_close(db_); }

bool SqliteSessionStore::Insert(const StoredSession& session) {
  std::lock_guard lock(mu_);
  Statement st(db_, "INSERT INTO sessions (id, version, body) VALUES (?, ?, ?)");
  st.Bind(1, session.id);
  st.Bind(2, session.version);
  st.Bind(3, session.body);
  st.Step();
  return !st.constraint_failed();
}

std::optional<StoredSession> SqliteSessionStore::Load(
    const std::string& id) const {
  std::lock_guard lock(mu_);
  Statement st(db_, "SELECT version, body FROM sessions WHERE id = ?");
  st.Bind(1, id);
  if (!st.Step()) return std::nullopt;
  return StoredSession{id, st.Int(0), st.Text(1)};
}

bool SqliteSessionStore::Update(const std::string& id,
                                int64_t expected_version,
                                const std::string& body) {
  std::lock_guard lock(mu_);
  Statement st(db_,
               "UPDATE sessions SET body = ?, version = version + 1 "
               "WHERE id = ? AND version = ?");
  st.Bind(1, body);
  st.Bind(2, id);
  st.Bind(3, expected_version);
  st.Step();
  return sqlite3_changes(db_) == 1;
}

std::vector<StoredSession> SqliteSessionStore::List() const {
  std::lock_guard lock(mu_);
  Statement st(db_, "SELECT id, version, body FROM sessions ORDER BY id");
  std::vector<StoredSession> out;
  while (st.Step()) out.push_back({st.Text(0), st.Int(1), st.Text(2)});
  return out;
}

}  // namespace lqct
