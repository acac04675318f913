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

#include "simile/log.h"

#include <atomic>
#include <iostream>
#include <mutex>

#include "simile/document.h"
#include "simile/errors.h"

namespace simile {

namespace {

std::atomic<int> g_level{static_cast<int>(LogLevel::kInfo)};
std::mutex g_mu;
std::function<void(const std::string &)> g_sink;

}  // namespace

const char *LogLevelName(LogLevel level) {
  switch (level) {
    case LogLevel::kDebug: return "debug";
    case LogLevel::kInfo: return "info";
    case LogLevel::kWarn: return "warn";
    case LogLevel::kError: return "error";
  }
  return "info";
}

LogLevel ParseLogLevel(std::string_view s) {
  if (s == "debug") return LogLevel::kDebug;
  if (s == "info") return LogLevel::kInfo;
  if (s == "warn") return LogLevel::kWarn;
  if (s == "error") return LogLevel::kError;
  throw ParseError("unknown log level: " + std::string(s));
}

void SetLogLevel(LogLevel level) { g_level = static_cast<int>(level); }

void SetLogSink(std::function<void(const std::string &)> sink) {
  std::lock_guard lock(g_mu);
  g_sink = std::move(sink);
}

void Log(LogLevel level, std::string_view event, const nlohmann::json &fields) {
  if (static_cast<int>(level) < g_level) return;
  nlohmann::json j = {{"ts", FormatRfc3339(Now())},
                      {"level", LogLevelName(level)},
                      {"event", std::string(event)}};
  if (fields.is_object()) {
    for (auto it = fields.begin(); it != fields.end(); ++it) j[it.key()] = it.value();
  }
  std::string line = j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
  std::lock_guard lock(g_mu);
  if (g_sink) {
    g_sink(line);
  } else {
    std::cerr << line << '\n';
  }
}

}  // namespace simile
