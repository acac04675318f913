// Copyright 2026 The Simile Miner Authors.
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

// HTTP API over the corpus store.
//
//   GET  /api/similes?page=&page_size=&sort=alpha   approved records, paged
//   GET  /api/similes/search?q=                     approved records matching q
//   GET  /api/similes/{id}                          one record
//   POST /api/similes                               public submit, pending
//   POST /api/login                                 bearer token
//   POST /api/similes/{id}/approve                  curator
//   POST /api/similes/{id}/reject                   curator
//   PUT  /api/similes/{id}                          curator edit
//   GET  /api/pending?page=&page_size=              curator
//   GET  /api/stats
//
// Every /api response body is a JSON object. Errors carry
// {"code", "message"} and, where relevant, "reason" or "record".
// Everything else is served from the static directory.

#ifndef SIMILE_SERVICE_H_
#define SIMILE_SERVICE_H_

#include <chrono>
#include <deque>
#include <filesystem>
#include <functional>
#include <istream>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include "simile/classifier.h"
#include "simile/corpus.h"

namespace simile {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  // 0 picks a free port.
  int port = 8080;
  std::filesystem::path store_path = "simile.db";
  // Empty disables the static mount.
  std::filesystem::path static_dir;
  // Optional classifier used to score submissions.
  std::filesystem::path model_path;
  int rate_limit = 10;
  std::chrono::seconds rate_window{60};
  std::chrono::seconds session_ttl{8 * 3600};
  size_t max_phrase_chars = 200;
};

// `key = value` lines with '#' comments. Keys: host, port, store,
// static_dir, model, rate_limit, rate_window_s, session_ttl_s.
// Throws ParseError naming the line for unknown keys or bad values.
ServiceConfig ParseServiceConfig(std::istream &in);
ServiceConfig LoadServiceConfig(const std::filesystem::path &path);
// Overrides fields from SIMILE_HOST, SIMILE_PORT, SIMILE_STORE,
// SIMILE_STATIC_DIR, SIMILE_MODEL, SIMILE_RATE_LIMIT, SIMILE_RATE_WINDOW_S
// and SIMILE_SESSION_TTL_S when set. `getenv` is injectable for tests.
void ApplyEnvironment(
    ServiceConfig &config,
    const std::function<const char *(const char *)> &getenv = nullptr);

// Sliding-window counter per key: at most `limit` events in any window.
class RateLimiter {
 public:
  using Clock = std::function<std::chrono::steady_clock::time_point()>;

  RateLimiter(int limit, std::chrono::steady_clock::duration window,
              Clock clock = nullptr);
  // Records an event and returns true if it is within the limit. Rejected
  // events are not recorded.
  bool Allow(const std::string &key);
  // Time until the next event for `key` would be allowed.
  std::chrono::steady_clock::duration RetryAfter(const std::string &key);

 private:
  int limit_;
  std::chrono::steady_clock::duration window_;
  Clock clock_;
  std::mutex mu_;
  std::unordered_map<std::string, std::deque<std::chrono::steady_clock::time_point>>
      events_;
};

class Service {
 public:
  // The store must outlive the service. `model` may be null.
  Service(CorpusStore &store, ServiceConfig config,
          std::shared_ptr<const TrainedModel> model = nullptr);
  ~Service();
  Service(const Service &) = delete;
  Service &operator=(const Service &) = delete;

  // Binds the socket. Throws IoError when the address is unavailable.
  // Returns the bound port.
  int Bind();
  // Serves until Stop(). Requires Bind().
  void Run();
  // Bind() and Run() on a background thread.
  int Start();
  // Stops accepting, waits for in-flight requests and joins the
  // background thread if any.
  void Stop();
  int port() const { return port_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int port_ = 0;
};

}  // namespace simile

#endif  // SIMILE_SERVICE_H_
