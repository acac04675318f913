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

#ifndef SIMILE_DOCUMENT_H_
#define SIMILE_DOCUMENT_H_

#include <chrono>
#include <string>

#include "json.hpp"

namespace simile {

using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;

Timestamp Now();
// RFC 3339 in UTC with millisecond precision: 2026-01-02T03:04:05.678Z.
std::string FormatRfc3339(Timestamp t);
// Accepts the format above, with or without fractional seconds.
Timestamp ParseRfc3339(const std::string &s);

// A harvested page: the text of its content container.
struct Document {
  std::string url;
  std::string site_id;
  Timestamp fetched_at;
  std::string text;
};

nlohmann::json ToJson(const Document &doc);
Document DocumentFromJson(const nlohmann::json &j);

}  // namespace simile

#endif  // SIMILE_DOCUMENT_H_
