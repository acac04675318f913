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

// Curated simile corpus: canonical stem keys, duplicate detection, the
// curation workflow, merges and statistics, backed by one SQLite file.
//
// Invariants kept by the store:
//   - at most one non-rejected record per canonical key (unique index)
//   - revisions are append-only (triggers abort UPDATE and DELETE)
//   - every mutation is one transaction, serialized through one writer
//     and synced before the call returns

#ifndef SIMILE_CORPUS_H_
#define SIMILE_CORPUS_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "simile/document.h"
#include "simile/errors.h"
#include "simile/stemmer.h"

namespace simile {

enum class Source { kWww, kKaradzic, kManual };
enum class Status { kPending, kApproved, kRejected };

const char *SourceName(Source s);
Source ParseSource(std::string_view s);
const char *StatusName(Status s);
Status ParseStatus(std::string_view s);

// Thrown for phrases that are not similes. `reason` is machine-readable.
class InvalidPhraseError : public Error {
 public:
  InvalidPhraseError(std::string reason, const std::string &what)
      : Error(what), reason_(std::move(reason)) {}
  const std::string &reason() const { return reason_; }

 private:
  std::string reason_;
};

// Case-fold, normalize the connector to "kao", stem every token and join
// with single spaces. Cyrillic input is transliterated first. Requires a
// connector with at least one token on each side.
std::string CanonicalKey(std::string_view phrase, const StemRuleSet &rules);

// Whitespace-normalized phrase made of the same tokens CanonicalKey sees.
std::string CleanPhrase(std::string_view phrase);

// Byte string whose memcmp order is Serbian Latin alphabetical order of
// the case-folded text.
std::string SortKey(std::string_view text);

struct Evidence {
  std::string doc_url;
  int count = 0;

  bool operator==(const Evidence &) const = default;
};

struct SimileRecord {
  int64_t id = 0;
  std::string display_form;
  std::string canonical_key;
  // "adjectival", "verbal" or "unknown".
  std::string kind = "unknown";
  Source source = Source::kManual;
  Status status = Status::kPending;
  std::optional<std::string> submitted_by;
  Timestamp created_at{};
  Timestamp updated_at{};
  std::vector<Evidence> evidence;
  int revision_count = 0;
};

nlohmann::json ToJson(const SimileRecord &r);
SimileRecord RecordFromJson(const nlohmann::json &j);

struct Revision {
  int64_t id = 0;
  int64_t record_id = 0;
  std::string editor;
  // "create", "approve", "reject", "edit" or "import".
  std::string action;
  std::string before_form;
  std::string after_form;
  Status before_status = Status::kPending;
  Status after_status = Status::kPending;
  Timestamp at{};
};

nlohmann::json ToJson(const Revision &r);

class NotFoundError : public Error {
 public:
  using Error::Error;
};

// Carries the record as it stands, so callers can show the current state.
class ConflictError : public Error {
 public:
  ConflictError(const std::string &what, SimileRecord current)
      : Error(what), current_(std::move(current)) {}
  const SimileRecord &current() const { return current_; }

 private:
  SimileRecord current_;
};

class IllegalTransitionError : public ConflictError {
 public:
  using ConflictError::ConflictError;
};

class DuplicateError : public ConflictError {
 public:
  using ConflictError::ConflictError;
};

struct UpsertOptions {
  // Create approved instead of pending.
  bool trusted = false;
  std::optional<std::string> submitter;
  std::string kind = "unknown";
  // Evidence for www sources.
  std::string doc_url;
  int count = 1;
};

struct UpsertResult {
  bool created = false;
  SimileRecord record;
};

struct MergeReport {
  int added = 0;
  int duplicates = 0;
  // Phrases that matched a record from a different source.
  std::vector<std::string> intersection;
  // Phrases that matched another phrase of this same import.
  std::vector<std::string> self_collisions;
  // "phrase: reason" for phrases that were not similes.
  std::vector<std::string> errors;
};

struct CorpusStats {
  // counts[source][status]
  std::array<std::array<int, 3>, 3> counts{};
  int total_approved = 0;
  int total = 0;
};

nlohmann::json ToJson(const CorpusStats &s);

struct Page {
  std::vector<SimileRecord> items;
  int total = 0;
  int page = 1;
  int page_size = 20;
};

enum class Role { kCurator, kAdmin };
const char *RoleName(Role r);
Role ParseRole(std::string_view s);

struct Session {
  std::string user;
  Role role = Role::kCurator;
  Timestamp expires_at{};
};

struct StoreOptions {
  // Fold š, č, ć, ž, đ to ASCII on both sides when searching.
  bool fold_diacritics = true;
};

struct ImportReport {
  int imported = 0;
  int skipped = 0;
};

class CorpusStore {
 public:
  // Opens or creates the store. Throws IoError when the file cannot be
  // opened or has an unknown schema.
  static std::unique_ptr<CorpusStore> Open(const std::filesystem::path &path,
                                           StemRuleSet rules,
                                           StoreOptions options = {});
  ~CorpusStore();
  CorpusStore(const CorpusStore &) = delete;
  CorpusStore &operator=(const CorpusStore &) = delete;

  // Throws InvalidPhraseError for non-similes.
  UpsertResult Upsert(std::string_view phrase, Source source,
                      const UpsertOptions &options = {});

  std::optional<SimileRecord> Get(int64_t id) const;
  // The non-rejected record holding `key`, if any.
  std::optional<SimileRecord> FindByKey(const std::string &key) const;

  // pending -> approved | rejected. Throws NotFoundError or
  // IllegalTransitionError.
  SimileRecord SetStatus(int64_t id, Status status, const std::string &curator);

  // New display form for a pending or approved record; the key follows.
  // Throws NotFoundError, IllegalTransitionError, InvalidPhraseError, or
  // DuplicateError when the new key belongs to another record.
  SimileRecord Edit(int64_t id, std::string_view display_form,
                    const std::string &editor);

  std::vector<Revision> Revisions(int64_t id) const;

  // Approved records only. Exact key matches first, then records whose key
  // holds the query tokens contiguously, alphabetically. An empty query
  // lists every approved record alphabetically.
  std::vector<SimileRecord> Search(std::string_view query) const;

  // Alphabetical page (1-based) of records in `status`.
  Page List(Status status, int page, int page_size) const;
  std::vector<SimileRecord> All() const;

  MergeReport Merge(const std::vector<std::string> &phrases, Source source,
                    bool trusted);
  CorpusStats Stats() const;

  // One JSON record per line, ordered by id.
  void Export(const std::filesystem::path &path) const;
  // Records keep key, form, kind, source, status, timestamps and
  // evidence; ids are reassigned. Lines that would break key uniqueness
  // or do not parse are skipped.
  ImportReport Import(const std::filesystem::path &path);

  // Creates the user or replaces its password and role.
  void AddUser(const std::string &name, const std::string &password, Role role);
  std::optional<Role> CheckPassword(const std::string &name,
                                    const std::string &password) const;
  // Returns an opaque bearer token with 256 bits of entropy.
  std::string CreateSession(const std::string &user, Role role,
                            std::chrono::seconds ttl);
  std::optional<Session> FindSession(const std::string &token) const;

  const StemRuleSet &rules() const { return rules_; }

 private:
  struct Impl;
  CorpusStore(std::unique_ptr<Impl> impl, StemRuleSet rules,
              StoreOptions options);

  std::unique_ptr<Impl> impl_;
  StemRuleSet rules_;
  StoreOptions options_;
};

// Karadzic-style corpus file: one simile per line, '#' comments and blank
// lines skipped.
std::vector<std::string> ReadPhraseFile(const std::filesystem::path &path);

}  // namespace simile

#endif  // SIMILE_CORPUS_H_
