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

#include "simile/files.h"

#include <fcntl.h>
#include <unistd.h>

#include <atomic>
#include <sstream>

#include "simile/errors.h"

namespace simile {

namespace {

std::filesystem::path TempSibling(const std::filesystem::path &path) {
  static std::atomic<int> counter{0};
  auto name = path.filename().string() + ".tmp." + std::to_string(getpid()) +
              "." + std::to_string(counter++);
  return path.parent_path() / name;
}

void SyncFile(const std::filesystem::path &path) {
  int fd = ::open(path.c_str(), O_RDONLY);
  if (fd >= 0) {
    ::fsync(fd);
    ::close(fd);
  }
}

}  // namespace

std::string ReadFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFileAtomically(const std::filesystem::path &path,
                         std::string_view contents) {
  AtomicFileWriter writer(path);
  writer.stream() << contents;
  writer.Commit();
}

AtomicFileWriter::AtomicFileWriter(std::filesystem::path path)
    : path_(std::move(path)), tmp_(TempSibling(path_)) {
  out_.open(tmp_, std::ios::binary | std::ios::trunc);
  if (!out_) throw IoError("cannot write " + tmp_.string());
}

AtomicFileWriter::~AtomicFileWriter() {
  if (committed_) return;
  out_.close();
  std::error_code ec;
  std::filesystem::remove(tmp_, ec);
}

void AtomicFileWriter::WriteJsonLine(const nlohmann::json &j) {
  out_ << j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace)
       << '\n';
}

void AtomicFileWriter::Commit() {
  out_.flush();
  if (!out_) throw IoError("write failed for " + tmp_.string());
  out_.close();
  SyncFile(tmp_);
  std::error_code ec;
  std::filesystem::rename(tmp_, path_, ec);
  if (ec) throw IoError("cannot replace " + path_.string() + ": " + ec.message());
  committed_ = true;
}

int ForEachJsonLine(const std::filesystem::path &path,
                    const std::function<void(const nlohmann::json &)> &fn) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  int bad = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception &) {
      ++bad;
      continue;
    }
    fn(j);
  }
  return bad;
}

}  // namespace simile
