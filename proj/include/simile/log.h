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

// Structured logging: one JSON object per line on standard error.

#ifndef SIMILE_LOG_H_
#define SIMILE_LOG_H_

#include <functional>
#include <string>
#include <string_view>

#include "json.hpp"

namespace simile {

enum class LogLevel { kDebug, kInfo, kWarn, kError };

const char *LogLevelName(LogLevel level);
LogLevel ParseLogLevel(std::string_view s);

// Events below the level are dropped. Default kInfo.
void SetLogLevel(LogLevel level);
// Replaces the standard-error sink; an empty function restores it.
void SetLogSink(std::function<void(const std::string &line)> sink);

// Writes {"ts", "level", "event", ...fields}. `fields` must be an object
// or null.
void Log(LogLevel level, std::string_view event,
         const nlohmann::json &fields = nullptr);

}  // namespace simile

#endif  // SIMILE_LOG_H_
