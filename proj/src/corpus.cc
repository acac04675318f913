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

#include "simile/corpus.h"

#include <sodium.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <unordered_map>

#include "simile/files.h"
#include "simile/tagger.h"
#include "simile/text.h"
#include "sqlite.h"

namespace simile {

namespace {

constexpr int kSchemaVersion = 1;

std::vector<std::string> PhraseTokens(std::string_view phrase) {
  std::vector<std::string> out;
  for (auto &sentence : Tokenize(TransliterateCyrillic(phrase))) {
    for (auto &tok : sentence) out.push_back(std::move(tok));
  }
  return out;
}

// Case-folded, connector-normalized, stemmed tokens.
std::vector<std::string> StemTokens(const std::vector<std::string> &tokens,
                                    const StemRuleSet &rules) {
  std::vector<std::string> out;
  for (const auto &tok : tokens) {
    std::string lower = FoldCase(tok);
    if (IsConnectorForm(lower)) lower = "kao";
    out.push_back(Stem(lower, rules));
  }
  return out;
}

int64_t Millis(Timestamp t) { return t.time_since_epoch().count(); }
Timestamp FromMillis(int64_t ms) {
  return Timestamp(std::chrono::milliseconds(ms));
}

int SerbianRank(char32_t c) {
  static const std::u32string kAlphabet =
      U"abcčćdđefghijklmnopqrsštuvwxyzž";
  size_t pos = kAlphabet.find(c);
  if (pos != std::u32string::npos) return 0x40 + static_cast<int>(pos);
  if (c == U' ') return 0x01;
  if (c >= U'0' && c <= U'9') return 0x10 + static_cast<int>(c - U'0');
  return 0x100 + static_cast<int>(c);
}

}  // namespace

const char *SourceName(Source s) {
  switch (s) {
    case Source::kWww: return "www";
    case Source::kKaradzic: return "karadzic";
    case Source::kManual: return "manual";
  }
  return "manual";
}

Source ParseSource(std::string_view s) {
  if (s == "www") return Source::kWww;
  if (s == "karadzic") return Source::kKaradzic;
  if (s == "manual") return Source::kManual;
  throw ParseError("unknown source: " + std::string(s));
}

const char *StatusName(Status s) {
  switch (s) {
    case Status::kPending: return "pending";
    case Status::kApproved: return "approved";
    case Status::kRejected: return "rejected";
  }
  return "pending";
}

Status ParseStatus(std::string_view s) {
  if (s == "pending") return Status::kPending;
  if (s == "approved") return Status::kApproved;
  if (s == "rejected") return Status::kRejected;
  throw ParseError("unknown status: " + std::string(s));
}

const char *RoleName(Role r) {
  return r == Role::kAdmin ? "admin" : "curator";
}

Role ParseRole(std::string_view s) {
  if (s == "curator") return Role::kCurator;
  if (s == "admin") return Role::kAdmin;
  throw ParseError("unknown role: " + std::string(s));
}

std::string CleanPhrase(std::string_view phrase) {
  return Join(PhraseTokens(phrase), " ");
}

std::string CanonicalKey(std::string_view phrase, const StemRuleSet &rules) {
  auto tokens = PhraseTokens(phrase);
  if (tokens.empty()) throw InvalidPhraseError("empty", "empty phrase");
  size_t conn = tokens.size();
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (IsConnectorForm(FoldCase(tokens[i]))) {
      conn = i;
      break;
    }
  }
  if (conn == tokens.size()) {
    throw InvalidPhraseError("no_connector",
                             "phrase has no connector (kao, ko, k'o)");
  }
  if (conn == 0 || conn + 1 == tokens.size()) {
    throw InvalidPhraseError("missing_side",
                             "phrase needs words on both sides of the connector");
  }
  return Join(StemTokens(tokens, rules), " ");
}

std::string SortKey(std::string_view text) {
  std::string out;
  for (char32_t c : DecodeUtf8(FoldCase(text))) {
    int r = SerbianRank(c);
    out.push_back(static_cast<char>((r >> 16) & 0xff));
    out.push_back(static_cast<char>((r >> 8) & 0xff));
    out.push_back(static_cast<char>(r & 0xff));
  }
  return out;
}

nlohmann::json ToJson(const SimileRecord &r) {
  nlohmann::json evidence = nlohmann::json::array();
  for (const auto &e : r.evidence) {
    evidence.push_back({{"doc_url", e.doc_url}, {"count", e.count}});
  }
  return {{"id", r.id},
          {"display_form", r.display_form},
          {"canonical_key", r.canonical_key},
          {"kind", r.kind},
          {"source", SourceName(r.source)},
          {"status", StatusName(r.status)},
          {"submitted_by", r.submitted_by ? nlohmann::json(*r.submitted_by)
                                          : nlohmann::json(nullptr)},
          {"created_at", FormatRfc3339(r.created_at)},
          {"updated_at", FormatRfc3339(r.updated_at)},
          {"evidence", evidence},
          {"revision_count", r.revision_count}};
}

SimileRecord RecordFromJson(const nlohmann::json &j) {
  SimileRecord r;
  r.id = j.value("id", int64_t{0});
  r.display_form = j.at("display_form").get<std::string>();
  r.canonical_key = j.at("canonical_key").get<std::string>();
  r.kind = j.value("kind", "unknown");
  r.source = ParseSource(j.at("source").get<std::string>());
  r.status = ParseStatus(j.at("status").get<std::string>());
  if (j.contains("submitted_by") && j["submitted_by"].is_string()) {
    r.submitted_by = j["submitted_by"].get<std::string>();
  }
  r.created_at = ParseRfc3339(j.at("created_at").get<std::string>());
  r.updated_at = ParseRfc3339(j.at("updated_at").get<std::string>());
  if (j.contains("evidence")) {
    for (const auto &e : j["evidence"]) {
      r.evidence.push_back(
          {e.at("doc_url").get<std::string>(), e.at("count").get<int>()});
    }
  }
  r.revision_count = j.value("revision_count", 0);
  return r;
}

nlohmann::json ToJson(const Revision &r) {
  return {{"id", r.id},
          {"record_id", r.record_id},
          {"editor", r.editor},
          {"action", r.action},
          {"before_form", r.before_form},
          {"after_form", r.after_form},
          {"before_status", StatusName(r.before_status)},
          {"after_status", StatusName(r.after_status)},
          {"at", FormatRfc3339(r.at)}};
}

nlohmann::json ToJson(const CorpusStats &s) {
  nlohmann::json by_source = nlohmann::json::object();
  for (Source src : {Source::kWww, Source::kKaradzic, Source::kManual}) {
    nlohmann::json row = nlohmann::json::object();
    for (Status st : {Status::kPending, Status::kApproved, Status::kRejected}) {
      row[StatusName(st)] =
          s.counts[static_cast<int>(src)][static_cast<int>(st)];
    }
    by_source[SourceName(src)] = row;
  }
  return {{"by_source", by_source},
          {"total_approved", s.total_approved},
          {"total", s.total}};
}

// ---------------------------------------------------------------------------

struct CorpusStore::Impl {
  std::string path;
  std::mutex write_mu;
  std::unique_ptr<sql::Db> writer;

  mutable std::mutex pool_mu;
  mutable std::vector<std::unique_ptr<sql::Db>> pool;

  // Returns a reader connection to the pool when destroyed.
  class Reader {
   public:
    explicit Reader(const Impl &impl) : impl_(impl) {
      std::lock_guard lock(impl_.pool_mu);
      if (!impl_.pool.empty()) {
        db_ = std::move(impl_.pool.back());
        impl_.pool.pop_back();
      }
      if (!db_) {
        db_ = std::make_unique<sql::Db>(impl_.path, SQLITE_OPEN_READONLY);
      }
    }
    ~Reader() {
      std::lock_guard lock(impl_.pool_mu);
      impl_.pool.push_back(std::move(db_));
    }
    sql::Db &db() { return *db_; }

   private:
    const Impl &impl_;
    std::unique_ptr<sql::Db> db_;
  };
};

namespace {

const char *kSchema = R"sql(
CREATE TABLE IF NOT EXISTS meta(key TEXT PRIMARY KEY, value TEXT NOT NULL);
CREATE TABLE IF NOT EXISTS records(
  id INTEGER PRIMARY KEY AUTOINCREMENT,
  display_form TEXT NOT NULL,
  canonical_key TEXT NOT NULL,
  sort_key BLOB NOT NULL,
  kind TEXT NOT NULL,
  source TEXT NOT NULL CHECK(source IN ('www','karadzic','manual')),
  status TEXT NOT NULL CHECK(status IN ('pending','approved','rejected')),
  submitted_by TEXT,
  form_locked INTEGER NOT NULL DEFAULT 0,
  created_at INTEGER NOT NULL,
  updated_at INTEGER NOT NULL);
CREATE UNIQUE INDEX IF NOT EXISTS records_live_key
  ON records(canonical_key) WHERE status <> 'rejected';
CREATE INDEX IF NOT EXISTS records_status_sort
  ON records(status, sort_key, id);
CREATE TABLE IF NOT EXISTS evidence(
  record_id INTEGER NOT NULL REFERENCES records(id),
  doc_url TEXT NOT NULL,
  count INTEGER NOT NULL,
  PRIMARY KEY(record_id, doc_url));
CREATE TABLE IF NOT EXISTS variants(
  record_id INTEGER NOT NULL REFERENCES records(id),
  surface TEXT NOT NULL,
  count INTEGER NOT NULL,
  first_seen INTEGER NOT NULL,
  PRIMARY KEY(record_id, surface));
CREATE TABLE IF NOT EXISTS revisions(
  id INTEGER PRIMARY KEY AUTOINCREMENT,
  record_id INTEGER NOT NULL REFERENCES records(id),
  editor TEXT NOT NULL,
  action TEXT NOT NULL,
  before_form TEXT NOT NULL,
  after_form TEXT NOT NULL,
  before_status TEXT NOT NULL,
  after_status TEXT NOT NULL,
  at INTEGER NOT NULL);
CREATE INDEX IF NOT EXISTS revisions_record ON revisions(record_id, id);
CREATE TRIGGER IF NOT EXISTS revisions_no_update BEFORE UPDATE ON revisions
  BEGIN SELECT RAISE(ABORT, 'revisions are append-only'); END;
CREATE TRIGGER IF NOT EXISTS revisions_no_delete BEFORE DELETE ON revisions
  BEGIN SELECT RAISE(ABORT, 'revisions are append-only'); END;
CREATE TABLE IF NOT EXISTS users(
  name TEXT PRIMARY KEY,
  password_hash TEXT NOT NULL,
  role TEXT NOT NULL,
  created_at INTEGER NOT NULL);
CREATE TABLE IF NOT EXISTS sessions(
  token_hash TEXT PRIMARY KEY,
  user TEXT NOT NULL,
  role TEXT NOT NULL,
  expires_at INTEGER NOT NULL);
)sql";

constexpr const char *kRecordColumns =
    "SELECT r.id, r.display_form, r.canonical_key, r.kind, r.source, "
    "r.status, r.submitted_by, r.created_at, r.updated_at, "
    "(SELECT COUNT(*) FROM revisions v WHERE v.record_id = r.id) "
    "FROM records r ";

SimileRecord ReadRecordRow(const sql::Stmt &s) {
  SimileRecord r;
  r.id = s.Int(0);
  r.display_form = s.Text(1);
  r.canonical_key = s.Text(2);
  r.kind = s.Text(3);
  r.source = ParseSource(s.Text(4));
  r.status = ParseStatus(s.Text(5));
  if (!s.IsNull(6)) r.submitted_by = s.Text(6);
  r.created_at = FromMillis(s.Int(7));
  r.updated_at = FromMillis(s.Int(8));
  r.revision_count = static_cast<int>(s.Int(9));
  return r;
}

void AttachEvidence(const sql::Db &db, std::vector<SimileRecord> &records) {
  if (records.empty()) return;
  if (records.size() == 1) {
    sql::Stmt s(db,
                "SELECT doc_url, count FROM evidence WHERE record_id = ? "
                "ORDER BY doc_url");
    s.Bind(1, records[0].id);
    while (s.Step()) {
      records[0].evidence.push_back({s.Text(0), static_cast<int>(s.Int(1))});
    }
    return;
  }
  std::unordered_map<int64_t, SimileRecord *> by_id;
  for (auto &r : records) by_id[r.id] = &r;
  sql::Stmt s(db,
              "SELECT record_id, doc_url, count FROM evidence "
              "ORDER BY record_id, doc_url");
  while (s.Step()) {
    auto it = by_id.find(s.Int(0));
    if (it == by_id.end()) continue;
    it->second->evidence.push_back({s.Text(1), static_cast<int>(s.Int(2))});
  }
}

// `tail` is the SQL after the column list; `bind` fills its parameters.
template <typename Binder>
std::vector<SimileRecord> QueryRecords(const sql::Db &db, const std::string &tail,
                                       Binder bind) {
  sql::Stmt s(db, std::string(kRecordColumns) + tail);
  bind(s);
  std::vector<SimileRecord> out;
  while (s.Step()) out.push_back(ReadRecordRow(s));
  AttachEvidence(db, out);
  return out;
}

std::optional<SimileRecord> GetRecord(const sql::Db &db, int64_t id) {
  auto rs = QueryRecords(db, "WHERE r.id = ?",
                         [&](sql::Stmt &s) { s.Bind(1, id); });
  if (rs.empty()) return std::nullopt;
  return rs[0];
}

std::optional<SimileRecord> GetLiveByKey(const sql::Db &db,
                                         const std::string &key) {
  auto rs = QueryRecords(
      db, "WHERE r.canonical_key = ? AND r.status <> 'rejected'",
      [&](sql::Stmt &s) { s.Bind(1, key); });
  if (rs.empty()) return std::nullopt;
  return rs[0];
}

void AppendRevision(sql::Db &db, int64_t record_id, const std::string &editor,
                    const std::string &action, const std::string &before_form,
                    const std::string &after_form, Status before_status,
                    Status after_status, Timestamp at) {
  sql::Stmt s(db,
              "INSERT INTO revisions(record_id, editor, action, before_form, "
              "after_form, before_status, after_status, at) "
              "VALUES(?,?,?,?,?,?,?,?)");
  s.Bind(1, record_id)
      .Bind(2, editor)
      .Bind(3, action)
      .Bind(4, before_form)
      .Bind(5, after_form)
      .Bind(6, StatusName(before_status))
      .Bind(7, StatusName(after_status))
      .Bind(8, Millis(at));
  s.Run();
}

void InitSodium() {
  static std::once_flag once;
  std::call_once(once, [] {
    if (sodium_init() < 0) throw Error("libsodium failed to initialize");
  });
}

std::string HashToken(const std::string &token) {
  unsigned char digest[crypto_generichash_BYTES];
  crypto_generichash(digest, sizeof(digest),
                     reinterpret_cast<const unsigned char *>(token.data()),
                     token.size(), nullptr, 0);
  char hex[crypto_generichash_BYTES * 2 + 1];
  sodium_bin2hex(hex, sizeof(hex), digest, sizeof(digest));
  return hex;
}

}  // namespace

CorpusStore::CorpusStore(std::unique_ptr<Impl> impl, StemRuleSet rules,
                         StoreOptions options)
    : impl_(std::move(impl)), rules_(std::move(rules)), options_(options) {}

CorpusStore::~CorpusStore() {
  // Wait for any in-flight write before the connections close.
  std::lock_guard lock(impl_->write_mu);
}

std::unique_ptr<CorpusStore> CorpusStore::Open(
    const std::filesystem::path &path, StemRuleSet rules,
    StoreOptions options) {
  InitSodium();
  auto impl = std::make_unique<Impl>();
  impl->path = path.string();
  impl->writer = std::make_unique<sql::Db>(
      impl->path, SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE);
  sql::Db &db = *impl->writer;
  db.Exec("PRAGMA journal_mode=WAL");
  db.Exec("PRAGMA synchronous=FULL");
  db.Exec("PRAGMA foreign_keys=ON");
  {
    sql::Transaction txn(db);
    db.Exec(kSchema);
    sql::Stmt get(db, "SELECT value FROM meta WHERE key = 'schema_version'");
    if (get.Step()) {
      if (get.Text(0) != std::to_string(kSchemaVersion)) {
        throw IoError("unsupported store schema version " + get.Text(0));
      }
    } else {
      sql::Stmt put(db,
                    "INSERT INTO meta(key, value) VALUES('schema_version', ?)");
      put.Bind(1, std::to_string(kSchemaVersion));
      put.Run();
    }
    txn.Commit();
  }
  return std::unique_ptr<CorpusStore>(
      new CorpusStore(std::move(impl), std::move(rules), options));
}

UpsertResult CorpusStore::Upsert(std::string_view phrase, Source source,
                                 const UpsertOptions &options) {
  const std::string key = CanonicalKey(phrase, rules_);
  const std::string surface = FoldCase(CleanPhrase(phrase));
  const Timestamp now = Now();
  const int count = std::max(1, options.count);

  std::lock_guard lock(impl_->write_mu);
  sql::Db &db = *impl_->writer;
  sql::Transaction txn(db);
  UpsertResult result;

  if (auto existing = GetLiveByKey(db, key)) {
    const int64_t id = existing->id;
    if (source == Source::kWww) {
      if (!options.doc_url.empty()) {
        sql::Stmt ev(db,
                     "INSERT INTO evidence(record_id, doc_url, count) "
                     "VALUES(?,?,?) ON CONFLICT(record_id, doc_url) "
                     "DO UPDATE SET count = count + excluded.count");
        ev.Bind(1, id).Bind(2, options.doc_url).Bind(3, count);
        ev.Run();
      }
      if (existing->source == Source::kWww) {
        sql::Stmt var(db,
                      "INSERT INTO variants(record_id, surface, count, "
                      "first_seen) VALUES(?,?,?,"
                      "(SELECT COALESCE(MAX(first_seen), 0) + 1 FROM variants "
                      "WHERE record_id = ?)) ON CONFLICT(record_id, surface) "
                      "DO UPDATE SET count = count + excluded.count");
        var.Bind(1, id).Bind(2, surface).Bind(3, count).Bind(4, id);
        var.Run();
        // Most frequent variant wins; earliest seen breaks ties.
        sql::Stmt best(db,
                       "SELECT v.surface FROM variants v JOIN records r "
                       "ON r.id = v.record_id WHERE v.record_id = ? "
                       "AND r.form_locked = 0 "
                       "ORDER BY v.count DESC, v.first_seen ASC LIMIT 1");
        best.Bind(1, id);
        if (best.Step() && best.Text(0) != existing->display_form) {
          sql::Stmt upd(db,
                        "UPDATE records SET display_form = ?, sort_key = ?, "
                        "updated_at = ? WHERE id = ?");
          std::string form = best.Text(0);
          upd.Bind(1, form).BindBlob(2, SortKey(form)).Bind(3, Millis(now));
          upd.Bind(4, id);
          upd.Run();
        }
      }
    }
    result.record = *GetRecord(db, id);
    txn.Commit();
    return result;
  }

  const Status status = options.trusted ? Status::kApproved : Status::kPending;
  sql::Stmt ins(db,
                "INSERT INTO records(display_form, canonical_key, sort_key, "
                "kind, source, status, submitted_by, created_at, updated_at) "
                "VALUES(?,?,?,?,?,?,?,?,?)");
  ins.Bind(1, surface)
      .Bind(2, key)
      .BindBlob(3, SortKey(surface))
      .Bind(4, options.kind)
      .Bind(5, SourceName(source))
      .Bind(6, StatusName(status))
      .Bind(7, options.submitter)
      .Bind(8, Millis(now))
      .Bind(9, Millis(now));
  ins.Run();
  const int64_t id = db.LastInsertId();
  if (source == Source::kWww) {
    sql::Stmt var(db,
                  "INSERT INTO variants(record_id, surface, count, first_seen) "
                  "VALUES(?,?,?,1)");
    var.Bind(1, id).Bind(2, surface).Bind(3, count);
    var.Run();
    if (!options.doc_url.empty()) {
      sql::Stmt ev(db,
                   "INSERT INTO evidence(record_id, doc_url, count) "
                   "VALUES(?,?,?)");
      ev.Bind(1, id).Bind(2, options.doc_url).Bind(3, count);
      ev.Run();
    }
  }
  AppendRevision(db, id, options.submitter.value_or(SourceName(source)),
                 "create", "", surface, status, status, now);
  result.created = true;
  result.record = *GetRecord(db, id);
  txn.Commit();
  return result;
}

std::optional<SimileRecord> CorpusStore::Get(int64_t id) const {
  Impl::Reader r(*impl_);
  return GetRecord(r.db(), id);
}

std::optional<SimileRecord> CorpusStore::FindByKey(const std::string &key) const {
  Impl::Reader r(*impl_);
  return GetLiveByKey(r.db(), key);
}

SimileRecord CorpusStore::SetStatus(int64_t id, Status status,
                                    const std::string &curator) {
  std::lock_guard lock(impl_->write_mu);
  sql::Db &db = *impl_->writer;
  sql::Transaction txn(db);
  auto current = GetRecord(db, id);
  if (!current) throw NotFoundError("no record " + std::to_string(id));
  if (current->status != Status::kPending || status == Status::kPending) {
    throw IllegalTransitionError(std::string("cannot move ") +
                                     StatusName(current->status) + " record to " +
                                     StatusName(status),
                                 *current);
  }
  const Timestamp now = Now();
  sql::Stmt upd(db, "UPDATE records SET status = ?, updated_at = ? WHERE id = ?");
  upd.Bind(1, StatusName(status)).Bind(2, Millis(now)).Bind(3, id);
  upd.Run();
  AppendRevision(db, id, curator,
                 status == Status::kApproved ? "approve" : "reject",
                 current->display_form, current->display_form, current->status,
                 status, now);
  auto updated = *GetRecord(db, id);
  txn.Commit();
  return updated;
}

SimileRecord CorpusStore::Edit(int64_t id, std::string_view display_form,
                               const std::string &editor) {
  const std::string key = CanonicalKey(display_form, rules_);
  const std::string form = FoldCase(CleanPhrase(display_form));
  std::lock_guard lock(impl_->write_mu);
  sql::Db &db = *impl_->writer;
  sql::Transaction txn(db);
  auto current = GetRecord(db, id);
  if (!current) throw NotFoundError("no record " + std::to_string(id));
  if (current->status == Status::kRejected) {
    throw IllegalTransitionError("cannot edit a rejected record", *current);
  }
  if (auto other = GetLiveByKey(db, key); other && other->id != id) {
    throw DuplicateError("edited form duplicates record " +
                             std::to_string(other->id),
                         *other);
  }
  const Timestamp now = Now();
  sql::Stmt upd(db,
                "UPDATE records SET display_form = ?, canonical_key = ?, "
                "sort_key = ?, form_locked = 1, updated_at = ? WHERE id = ?");
  upd.Bind(1, form).Bind(2, key).BindBlob(3, SortKey(form));
  upd.Bind(4, Millis(now)).Bind(5, id);
  upd.Run();
  AppendRevision(db, id, editor, "edit", current->display_form, form,
                 current->status, current->status, now);
  auto updated = *GetRecord(db, id);
  txn.Commit();
  return updated;
}

std::vector<Revision> CorpusStore::Revisions(int64_t id) const {
  Impl::Reader r(*impl_);
  sql::Stmt s(r.db(),
              "SELECT id, record_id, editor, action, before_form, after_form, "
              "before_status, after_status, at FROM revisions "
              "WHERE record_id = ? ORDER BY id");
  s.Bind(1, id);
  std::vector<Revision> out;
  while (s.Step()) {
    Revision v;
    v.id = s.Int(0);
    v.record_id = s.Int(1);
    v.editor = s.Text(2);
    v.action = s.Text(3);
    v.before_form = s.Text(4);
    v.after_form = s.Text(5);
    v.before_status = ParseStatus(s.Text(6));
    v.after_status = ParseStatus(s.Text(7));
    v.at = FromMillis(s.Int(8));
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<SimileRecord> CorpusStore::Search(std::string_view query) const {
  std::vector<SimileRecord> approved;
  {
    Impl::Reader r(*impl_);
    approved = QueryRecords(
        r.db(), "WHERE r.status = 'approved' ORDER BY r.sort_key, r.id",
        [](sql::Stmt &) {});
  }
  auto q = StemTokens(PhraseTokens(query), rules_);
  if (q.empty()) return approved;
  auto fold = [&](std::string s) {
    return options_.fold_diacritics ? FoldDiacritics(s) : s;
  };
  for (auto &t : q) t = fold(t);

  std::vector<SimileRecord> exact, partial;
  for (auto &rec : approved) {
    auto k = SplitWhitespace(rec.canonical_key);
    for (auto &t : k) t = fold(t);
    if (k == q) {
      exact.push_back(std::move(rec));
    } else if (std::search(k.begin(), k.end(), q.begin(), q.end()) != k.end()) {
      partial.push_back(std::move(rec));
    }
  }
  exact.insert(exact.end(), std::make_move_iterator(partial.begin()),
               std::make_move_iterator(partial.end()));
  return exact;
}

Page CorpusStore::List(Status status, int page, int page_size) const {
  if (page < 1) throw ContractViolation("page must be at least 1");
  if (page_size < 1 || page_size > 500) {
    throw ContractViolation("page_size must be in [1, 500]");
  }
  Impl::Reader r(*impl_);
  Page out;
  out.page = page;
  out.page_size = page_size;
  sql::Stmt count(r.db(), "SELECT COUNT(*) FROM records WHERE status = ?");
  count.Bind(1, StatusName(status));
  count.Step();
  out.total = static_cast<int>(count.Int(0));
  out.items = QueryRecords(
      r.db(), "WHERE r.status = ? ORDER BY r.sort_key, r.id LIMIT ? OFFSET ?",
      [&](sql::Stmt &s) {
        s.Bind(1, StatusName(status))
            .Bind(2, page_size)
            .Bind(3, static_cast<int64_t>(page - 1) * page_size);
      });
  return out;
}

std::vector<SimileRecord> CorpusStore::All() const {
  Impl::Reader r(*impl_);
  return QueryRecords(r.db(), "ORDER BY r.id", [](sql::Stmt &) {});
}

MergeReport CorpusStore::Merge(const std::vector<std::string> &phrases,
                               Source source, bool trusted) {
  MergeReport report;
  std::set<std::string> created_keys, intersection_keys;
  UpsertOptions options;
  options.trusted = trusted;
  for (const auto &phrase : phrases) {
    UpsertResult r;
    try {
      r = Upsert(phrase, source, options);
    } catch (const InvalidPhraseError &e) {
      report.errors.push_back(phrase + ": " + e.reason());
      continue;
    }
    const std::string &key = r.record.canonical_key;
    if (r.created) {
      ++report.added;
      created_keys.insert(key);
      continue;
    }
    ++report.duplicates;
    if (created_keys.count(key)) {
      report.self_collisions.push_back(phrase);
    } else if (r.record.source != source && intersection_keys.insert(key).second) {
      report.intersection.push_back(phrase);
    }
  }
  return report;
}

CorpusStats CorpusStore::Stats() const {
  Impl::Reader r(*impl_);
  CorpusStats stats;
  sql::Stmt s(r.db(),
              "SELECT source, status, COUNT(*) FROM records "
              "GROUP BY source, status");
  while (s.Step()) {
    int src = static_cast<int>(ParseSource(s.Text(0)));
    int st = static_cast<int>(ParseStatus(s.Text(1)));
    int n = static_cast<int>(s.Int(2));
    stats.counts[src][st] = n;
    stats.total += n;
    if (st == static_cast<int>(Status::kApproved)) stats.total_approved += n;
  }
  return stats;
}

void CorpusStore::Export(const std::filesystem::path &path) const {
  AtomicFileWriter out(path);
  for (const auto &rec : All()) out.WriteJsonLine(ToJson(rec));
  out.Commit();
}

ImportReport CorpusStore::Import(const std::filesystem::path &path) {
  std::vector<SimileRecord> records;
  ImportReport report;
  report.skipped = ForEachJsonLine(path, [&](const nlohmann::json &j) {
    try {
      records.push_back(RecordFromJson(j));
    } catch (const std::exception &) {
      ++report.skipped;
    }
  });

  std::lock_guard lock(impl_->write_mu);
  sql::Db &db = *impl_->writer;
  sql::Transaction txn(db);
  for (const auto &rec : records) {
    if (rec.status != Status::kRejected && GetLiveByKey(db, rec.canonical_key)) {
      ++report.skipped;
      continue;
    }
    sql::Stmt ins(db,
                  "INSERT INTO records(display_form, canonical_key, sort_key, "
                  "kind, source, status, submitted_by, created_at, "
                  "updated_at) VALUES(?,?,?,?,?,?,?,?,?)");
    ins.Bind(1, rec.display_form)
        .Bind(2, rec.canonical_key)
        .BindBlob(3, SortKey(rec.display_form))
        .Bind(4, rec.kind)
        .Bind(5, SourceName(rec.source))
        .Bind(6, StatusName(rec.status))
        .Bind(7, rec.submitted_by)
        .Bind(8, Millis(rec.created_at))
        .Bind(9, Millis(rec.updated_at));
    ins.Run();
    const int64_t id = db.LastInsertId();
    for (const auto &e : rec.evidence) {
      sql::Stmt ev(db,
                   "INSERT INTO evidence(record_id, doc_url, count) "
                   "VALUES(?,?,?)");
      ev.Bind(1, id).Bind(2, e.doc_url).Bind(3, e.count);
      ev.Run();
    }
    AppendRevision(db, id, "import", "import", "", rec.display_form,
                   rec.status, rec.status, Now());
    ++report.imported;
  }
  txn.Commit();
  return report;
}

void CorpusStore::AddUser(const std::string &name, const std::string &password,
                          Role role) {
  if (name.empty() || password.empty()) {
    throw ContractViolation("user name and password must be non-empty");
  }
  char hash[crypto_pwhash_STRBYTES];
  if (crypto_pwhash_str(hash, password.data(), password.size(),
                        crypto_pwhash_OPSLIMIT_INTERACTIVE,
                        crypto_pwhash_MEMLIMIT_INTERACTIVE) != 0) {
    throw Error("password hashing ran out of memory");
  }
  std::lock_guard lock(impl_->write_mu);
  sql::Db &db = *impl_->writer;
  sql::Transaction txn(db);
  sql::Stmt s(db,
              "INSERT INTO users(name, password_hash, role, created_at) "
              "VALUES(?,?,?,?) ON CONFLICT(name) DO UPDATE SET "
              "password_hash = excluded.password_hash, role = excluded.role");
  s.Bind(1, name).Bind(2, std::string(hash)).Bind(3, RoleName(role));
  s.Bind(4, Millis(Now()));
  s.Run();
  txn.Commit();
}

std::optional<Role> CorpusStore::CheckPassword(const std::string &name,
                                               const std::string &password) const {
  std::string hash, role;
  {
    Impl::Reader r(*impl_);
    sql::Stmt s(r.db(), "SELECT password_hash, role FROM users WHERE name = ?");
    s.Bind(1, name);
    if (!s.Step()) return std::nullopt;
    hash = s.Text(0);
    role = s.Text(1);
  }
  if (crypto_pwhash_str_verify(hash.c_str(), password.data(),
                               password.size()) != 0) {
    return std::nullopt;
  }
  return ParseRole(role);
}

std::string CorpusStore::CreateSession(const std::string &user, Role role,
                                       std::chrono::seconds ttl) {
  unsigned char raw[32];
  randombytes_buf(raw, sizeof(raw));
  char hex[sizeof(raw) * 2 + 1];
  sodium_bin2hex(hex, sizeof(hex), raw, sizeof(raw));
  const std::string token = hex;
  const Timestamp now = Now();

  std::lock_guard lock(impl_->write_mu);
  sql::Db &db = *impl_->writer;
  sql::Transaction txn(db);
  sql::Stmt purge(db, "DELETE FROM sessions WHERE expires_at <= ?");
  purge.Bind(1, Millis(now));
  purge.Run();
  sql::Stmt s(db,
              "INSERT INTO sessions(token_hash, user, role, expires_at) "
              "VALUES(?,?,?,?)");
  s.Bind(1, HashToken(token)).Bind(2, user).Bind(3, RoleName(role));
  s.Bind(4, Millis(now + ttl));
  s.Run();
  txn.Commit();
  return token;
}

std::optional<Session> CorpusStore::FindSession(const std::string &token) const {
  if (token.empty()) return std::nullopt;
  Impl::Reader r(*impl_);
  sql::Stmt s(r.db(),
              "SELECT user, role, expires_at FROM sessions WHERE token_hash = ?");
  s.Bind(1, HashToken(token));
  if (!s.Step()) return std::nullopt;
  Session session{s.Text(0), ParseRole(s.Text(1)), FromMillis(s.Int(2))};
  if (session.expires_at <= Now()) return std::nullopt;
  return session;
}

std::vector<std::string> ReadPhraseFile(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::vector<std::string> out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (first && StartsWith(line, "\xEF\xBB\xBF")) line.erase(0, 3);
    first = false;
    std::string_view t = Trim(line);
    if (t.empty() || t[0] == '#') continue;
    out.emplace_back(t);
  }
  return out;
}

}  // namespace simile
