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

#ifndef SIMILE_FILES_H_
#define SIMILE_FILES_H_

#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <string_view>

#include "json.hpp"

namespace simile {

std::string ReadFile(const std::filesystem::path &path);

// Writes to a sibling temporary file, syncs it, then renames over `path`.
void WriteFileAtomically(const std::filesystem::path &path,
                         std::string_view contents);

// Streams output into a temporary file that replaces `path` only on
// Commit(). An uncommitted writer removes its temporary file.
class AtomicFileWriter {
 public:
  explicit AtomicFileWriter(std::filesystem::path path);
  ~AtomicFileWriter();
  AtomicFileWriter(const AtomicFileWriter &) = delete;
  AtomicFileWriter &operator=(const AtomicFileWriter &) = delete;

  std::ostream &stream() { return out_; }
  void WriteJsonLine(const nlohmann::json &j);
  void Commit();

 private:
  std::filesystem::path path_;
  std::filesystem::path tmp_;
  std::ofstream out_;
  bool committed_ = false;
};

// Calls `fn` for every non-blank line parsed as JSON. Returns the number of
// lines that failed to parse (they are skipped).
int ForEachJsonLine(const std::filesystem::path &path,
                    const std::function<void(const nlohmann::json &)> &fn);

}  // namespace simile

#endif  // SIMILE_FILES_H_
