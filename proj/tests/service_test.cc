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

#include <atomic>
#include <filesystem>
#include <set>
#include <sstream>
#include <thread>

#include "api_schema.h"
#include "doctest.h"
#include "httplib.h"
#include "simile/document.h"
#include "simile/errors.h"
#include "simile/service.h"
#include "simile/text.h"

namespace simile {
namespace {

using namespace schema;

namespace fs = std::filesystem;
using nlohmann::json;

StemRuleSet Rules() {
  static const StemRuleSet rules =
      StemRuleSet::Load(fs::path(SIMILE_DATA_DIR) / "stem_rules.tsv");
  return rules;
}

struct Reply {
  int status = 0;
  json body;
};

// Running service over a temporary store.
class Fixture {
 public:
  Fixture() : Fixture(Relaxed()) {}
  explicit Fixture(ServiceConfig cfg) {
    dir_ = fs::temp_directory_path() /
           ("simile_service_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter_++));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    store_ = CorpusStore::Open(dir_ / "store.db", Rules());
    cfg.port = 0;
    cfg.store_path = dir_ / "store.db";
    service_ = std::make_unique<Service>(*store_, cfg);
    port_ = service_->Start();
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
  }
  ~Fixture() {
    service_.reset();
    store_.reset();
    fs::remove_all(dir_);
  }

  static ServiceConfig Relaxed() {
    ServiceConfig cfg;
    cfg.rate_limit = 100000;
    return cfg;
  }

  CorpusStore &store() { return *store_; }
  Service &service() { return *service_; }
  int port() const { return port_; }
  const fs::path &dir() const { return dir_; }

  Reply Call(const std::string &method, const std::string &path,
             const json &body = nullptr, const std::string &token = "") {
    return Raw(method, path, body.is_null() ? "" : body.dump(),
               token.empty() ? "" : "Bearer " + token);
  }

  Reply Raw(const std::string &method, const std::string &path,
            const std::string &body, const std::string &auth) {
    httplib::Headers h;
    if (!auth.empty()) h.emplace("Authorization", auth);
    httplib::Result r;
    if (method == "GET") {
      r = client_->Get(path, h);
    } else if (method == "POST") {
      r = client_->Post(path, h, body, "application/json");
    } else if (method == "PUT") {
      r = client_->Put(path, h, body, "application/json");
    } else {
      FAIL("unknown method");
    }
    REQUIRE(r);
    Reply out{r->status, json::parse(r->body, nullptr, false)};
    if (StartsWith(path, "/api/")) {
      REQUIRE_MESSAGE(!out.body.is_discarded(), path, " -> ", r->body);
      CHECK(StartsWith(r->get_header_value("Content-Type"), "application/json"));
    }
    return out;
  }

  std::string Login(const std::string &user = "ana", Role role = Role::kCurator) {
    store_->AddUser(user, "tajna-lozinka", role);
    auto r = Call("POST", "/api/login", {{"username", user}, {"password", "tajna-lozinka"}});
    REQUIRE(r.status == 200);
    CHECK(CheckLogin(r.body) == "");
    return r.body["token"];
  }

 private:
  static inline std::atomic<int> counter_{0};
  fs::path dir_;
  std::unique_ptr<CorpusStore> store_;
  std::unique_ptr<Service> service_;
  std::unique_ptr<httplib::Client> client_;
  int port_ = 0;
};

std::set<int64_t> Ids(const json &items) {
  std::set<int64_t> out;
  for (const auto &r : items) out.insert(r["id"].get<int64_t>());
  return out;
}

TEST_CASE("config file and environment") {
  std::istringstream in(
      "# service\nport = 9090\nstore = /var/lib/simile.db\nstatic_dir = www\n"
      "rate_limit = 5\nrate_window_s = 30\n");
  auto cfg = ParseServiceConfig(in);
  CHECK(cfg.port == 9090);
  CHECK(cfg.store_path == "/var/lib/simile.db");
  CHECK(cfg.static_dir == "www");
  CHECK(cfg.rate_limit == 5);
  CHECK(cfg.rate_window == std::chrono::seconds(30));

  std::map<std::string, std::string> env = {{"SIMILE_PORT", "7000"},
                                            {"SIMILE_RATE_LIMIT", "3"}};
  ApplyEnvironment(cfg, [&](const char *k) -> const char * {
    auto it = env.find(k);
    return it == env.end() ? nullptr : it->second.c_str();
  });
  CHECK(cfg.port == 7000);
  CHECK(cfg.rate_limit == 3);
  CHECK(cfg.store_path == "/var/lib/simile.db");

  std::istringstream unknown("colour = red\n");
  CHECK_THROWS_AS(ParseServiceConfig(unknown), ParseError);
  std::istringstream bad_port("port = 70000\n");
  CHECK_THROWS_AS(ParseServiceConfig(bad_port), ParseError);
  std::istringstream dup("port = 1\nport = 2\n");
  CHECK_THROWS_AS(ParseServiceConfig(dup), ParseError);
  env["SIMILE_PORT"] = "abc";
  CHECK_THROWS_AS(ApplyEnvironment(cfg, [&](const char *k) -> const char * {
                    auto it = env.find(k);
                    return it == env.end() ? nullptr : it->second.c_str();
                  }),
                  ParseError);
}

TEST_CASE("rate limiter window") {
  auto t = std::chrono::steady_clock::time_point{};
  RateLimiter rl(3, std::chrono::seconds(60), [&] { return t; });
  CHECK(rl.Allow("a"));
  t += std::chrono::seconds(10);
  CHECK(rl.Allow("a"));
  CHECK(rl.Allow("a"));
  CHECK_FALSE(rl.Allow("a"));
  CHECK(rl.Allow("b"));
  CHECK(rl.RetryAfter("a") == std::chrono::seconds(50));
  t += std::chrono::seconds(50);
  CHECK(rl.Allow("a"));
  CHECK_FALSE(rl.Allow("a"));
  t += std::chrono::seconds(10);
  CHECK(rl.Allow("a"));
  CHECK(rl.Allow("a"));
  CHECK_FALSE(rl.Allow("a"));
}

TEST_CASE("public list is alphabetical and paginates") {
  Fixture f;
  std::vector<std::string> phrases = {
      "žut kao limun", "beo kao sneg",  "crn kao ugalj", "čist kao suza",
      "ćutljiv kao riba", "lep kao cvet", "gladan kao vuk", "dobar kao hleb",
      "đavolski kao đavo", "spor kao puž", "jak kao bik", "šaren kao paun"};
  f.store().Merge(phrases, Source::kKaradzic, true);
  f.store().Upsert("brz kao zec", Source::kManual);  // pending

  auto first = f.Call("GET", "/api/similes?page=1");
  REQUIRE(first.status == 200);
  CHECK(CheckPage(first.body) == "");
  CHECK(first.body["total"] == 12);
  CHECK(first.body["items"][0]["display_form"] == "beo kao sneg");

  std::vector<std::string> order;
  std::set<int64_t> seen;
  for (int page = 1; page <= 5; ++page) {
    auto r = f.Call("GET", "/api/similes?page=" + std::to_string(page) +
                               "&page_size=5&sort=alpha");
    REQUIRE(r.status == 200);
    CHECK(CheckPage(r.body) == "");
    for (const auto &rec : r.body["items"]) {
      CHECK(seen.insert(rec["id"].get<int64_t>()).second);
      order.push_back(rec["display_form"]);
    }
  }
  CHECK(order == std::vector<std::string>{
                     "beo kao sneg", "crn kao ugalj", "čist kao suza",
                     "ćutljiv kao riba", "dobar kao hleb", "đavolski kao đavo",
                     "gladan kao vuk", "jak kao bik", "lep kao cvet",
                     "spor kao puž", "šaren kao paun", "žut kao limun"});
  auto again = f.Call("GET", "/api/similes?page=2&page_size=5");
  auto again2 = f.Call("GET", "/api/similes?page=2&page_size=5");
  CHECK(again.body == again2.body);

  for (const char *bad : {"/api/similes?page=0", "/api/similes?page=x",
                          "/api/similes?page_size=501", "/api/similes?sort=date"}) {
    auto r = f.Call("GET", bad);
    CHECK(r.status == 400);
    CHECK(CheckError(r.body, "bad_request") == "");
  }
}

TEST_CASE("submission workflow and visibility") {
  Fixture f;
  auto r = f.Call("POST", "/api/similes", {{"phrase", "vredan kao mrav"}});
  REQUIRE(r.status == 201);
  CHECK(CheckSubmitted(r.body) == "");
  CHECK(r.body["record"]["source"] == "manual");
  CHECK(r.body["record"]["submitted_by"].is_null());
  const int64_t id = r.body["record"]["id"];

  auto dup = f.Call("POST", "/api/similes",
                    {{"phrase", "Vredan  KAO mrav"}, {"contributor", "Mika"}});
  CHECK(dup.status == 409);
  CHECK(CheckError(dup.body, "duplicate") == "");
  CHECK(dup.body["record"]["id"] == id);

  for (const auto &[phrase, reason] :
       std::vector<std::pair<std::string, std::string>>{
           {"konj", "no_connector"},
           {"", "empty"},
           {"   ", "empty"},
           {"kao konj", "missing_side"},
           {std::string(201, 'a'), "too_long"}}) {
    auto inv = f.Call("POST", "/api/similes", {{"phrase", phrase}});
    CHECK_MESSAGE(inv.status == 422, phrase);
    CHECK(CheckError(inv.body, "invalid_phrase") == "");
    CHECK(inv.body["reason"] == reason);
  }
  // Invalid UTF-8 is not valid JSON text.
  auto raw = f.Raw("POST", "/api/similes", "{\"phrase\":\"\xff kao x\"}", "");
  CHECK(raw.status == 400);
  CHECK(CheckError(raw.body, "bad_request") == "");
  for (const std::string &body : {std::string("not json"), std::string("[1]"),
                                  std::string("{\"phrase\": 3}"), std::string("{}")}) {
    auto inv = f.Raw("POST", "/api/similes", body, "");
    CHECK(inv.status == 400);
    CHECK(CheckError(inv.body, "bad_request") == "");
  }

  // Pending is invisible to the public.
  auto list = f.Call("GET", "/api/similes");
  CHECK(list.body["total"] == 0);
  auto search = f.Call("GET", "/api/similes/search?q=vredan+kao+mrav");
  CHECK(CheckSearch(search.body) == "");
  CHECK(search.body["items"].empty());
  CHECK(f.Call("GET", "/api/similes/" + std::to_string(id)).status == 404);

  const std::string token = f.Login();
  auto pending = f.Call("GET", "/api/pending", nullptr, token);
  REQUIRE(pending.status == 200);
  CHECK(CheckPage(pending.body) == "");
  CHECK(Ids(pending.body["items"]) == std::set<int64_t>{id});
  CHECK(f.Call("GET", "/api/similes/" + std::to_string(id), nullptr, token).status == 200);

  auto ok = f.Call("POST", "/api/similes/" + std::to_string(id) + "/approve", nullptr, token);
  REQUIRE(ok.status == 200);
  CHECK(CheckKeys(ok.body, {"record"}) == "");
  CHECK(CheckRecord(ok.body["record"]) == "");
  CHECK(ok.body["record"]["status"] == "approved");

  list = f.Call("GET", "/api/similes");
  CHECK(Ids(list.body["items"]) == std::set<int64_t>{id});
  search = f.Call("GET", "/api/similes/search?q=vredan+kao+mravi");
  CHECK(Ids(search.body["items"]) == std::set<int64_t>{id});
  auto one = f.Call("GET", "/api/similes/" + std::to_string(id));
  CHECK(one.status == 200);
  CHECK(CheckRecord(one.body["record"]) == "");

  auto again = f.Call("POST", "/api/similes/" + std::to_string(id) + "/reject", nullptr, token);
  CHECK(again.status == 409);
  CHECK(CheckError(again.body, "illegal_transition") == "");
  CHECK(again.body["record"]["status"] == "approved");

  auto missing = f.Call("POST", "/api/similes/999999/approve", nullptr, token);
  CHECK(missing.status == 404);
  CHECK(CheckError(missing.body, "not_found") == "");
  CHECK(f.Call("PUT", "/api/similes/999999", {{"display_form", "a kao b"}}, token).status ==
        404);
}

TEST_CASE("edits add exactly one revision") {
  Fixture f;
  const std::string token = f.Login();
  auto a = f.store().Upsert("tvrd kao kamen", Source::kKaradzic, {.trusted = true});
  auto b = f.store().Upsert("lep kao cvet", Source::kKaradzic, {.trusted = true});
  const std::string path = "/api/similes/" + std::to_string(a.record.id);
  const int before = f.Call("GET", path).body["record"]["revision_count"];

  auto e = f.Call("PUT", path, {{"display_form", "tvrd kao stena"}}, token);
  REQUIRE(e.status == 200);
  CHECK(CheckRecord(e.body["record"]) == "");
  auto after = f.Call("GET", path).body["record"];
  CHECK(after["revision_count"] == before + 1);
  CHECK(after["display_form"] == "tvrd kao stena");
  CHECK(after["canonical_key"] == CanonicalKey("tvrd kao stena", Rules()));

  auto clash = f.Call("PUT", path, {{"display_form", "lepa kao cvet"}}, token);
  CHECK(clash.status == 409);
  CHECK(CheckError(clash.body, "duplicate") == "");
  CHECK(clash.body["record"]["id"] == b.record.id);

  auto invalid = f.Call("PUT", path, {{"display_form", "kamen"}}, token);
  CHECK(invalid.status == 422);
  CHECK(CheckError(invalid.body, "invalid_phrase") == "");
  auto bad = f.Call("PUT", path, {{"form", "x"}}, token);
  CHECK(bad.status == 400);
  CHECK(CheckError(bad.body, "bad_request") == "");
  CHECK(f.Call("GET", path).body["record"]["revision_count"] == before + 1);
}

TEST_CASE("mutations need a valid session") {
  Fixture f;
  auto rec = f.store().Upsert("miran kao jagnje", Source::kManual).record;
  f.store().AddUser("ana", "tajna-lozinka", Role::kCurator);
  const std::string expired = f.store().CreateSession("ana", Role::kCurator,
                                                      std::chrono::seconds(0));
  const std::string id = std::to_string(rec.id);
  for (const std::string &auth :
       {std::string(""), std::string("Bearer "), std::string("Bearer nope"),
        "Bearer " + expired, std::string("Basic YW5hOnRham5h")}) {
    for (const auto &[method, path, body] :
         std::vector<std::tuple<std::string, std::string, std::string>>{
             {"POST", "/api/similes/" + id + "/approve", ""},
             {"POST", "/api/similes/" + id + "/reject", ""},
             {"PUT", "/api/similes/" + id, "{\"display_form\":\"miran kao ovca\"}"},
             {"GET", "/api/pending", ""}}) {
      auto r = f.Raw(method, path, body, auth);
      CHECK_MESSAGE(r.status == 401, method, " ", path, " ", auth);
      CHECK(CheckError(r.body, "unauthorized") == "");
    }
  }
  auto now = f.store().Get(rec.id);
  CHECK(now->status == Status::kPending);
  CHECK(now->display_form == "miran kao jagnje");
  CHECK(f.store().Revisions(rec.id).size() == 1);

  auto wrong = f.Call("POST", "/api/login", {{"username", "ana"}, {"password", "x"}});
  CHECK(wrong.status == 401);
  CHECK(CheckError(wrong.body, "invalid_credentials") == "");
  auto nobody = f.Call("POST", "/api/login", {{"username", "x"}, {"password", "x"}});
  CHECK(nobody.status == 401);
  auto malformed = f.Call("POST", "/api/login", {{"username", "ana"}});
  CHECK(malformed.status == 400);
  CHECK(CheckError(malformed.body, "bad_request") == "");
}

TEST_CASE("search folds inflection") {
  Fixture f;
  f.store().Merge({"beo kao sneg", "crven kao krv", "radi kao konj"},
                  Source::kKaradzic, true);
  auto r = f.Call("GET", "/api/similes/search?q=bela+kao+sneg");
  REQUIRE(r.status == 200);
  CHECK(CheckSearch(r.body) == "");
  REQUIRE(r.body["items"].size() == 1);
  CHECK(r.body["items"][0]["display_form"] == "beo kao sneg");
  CHECK(r.body["query"] == "bela kao sneg");
  auto partial = f.Call("GET", "/api/similes/search?q=konj");
  CHECK(partial.body["items"].size() == 1);
  auto all = f.Call("GET", "/api/similes/search?q=");
  CHECK(all.body["total"] == 3);
  auto none = f.Call("GET", "/api/similes/search?q=%C5%BEirafa");
  CHECK(none.body["total"] == 0);
}

TEST_CASE("stats") {
  Fixture f;
  f.store().Merge({"beo kao sneg", "crven kao krv"}, Source::kKaradzic, true);
  f.store().Upsert("radi kao konj", Source::kWww, {.doc_url = "http://x/"});
  auto r = f.Call("GET", "/api/stats");
  REQUIRE(r.status == 200);
  CHECK(CheckStats(r.body) == "");
  CHECK(r.body["by_source"]["karadzic"]["approved"] == 2);
  CHECK(r.body["by_source"]["www"]["pending"] == 1);
  CHECK(r.body["total_approved"] == 2);
  CHECK(r.body["total"] == 3);
}

TEST_CASE("submissions are rate limited per address") {
  ServiceConfig cfg;
  cfg.rate_limit = 10;
  Fixture f(cfg);
  for (int i = 0; i < 10; ++i) {
    auto r = f.Call("POST", "/api/similes",
                    {{"phrase", "brz kao zec" + std::to_string(i)}});
    CHECK(r.status == 201);
  }
  auto r = f.Call("POST", "/api/similes", {{"phrase", "spor kao puž"}});
  CHECK(r.status == 429);
  CHECK(CheckError(r.body, "rate_limited") == "");
  CHECK_FALSE(f.store().FindByKey(CanonicalKey("spor kao puž", Rules())));
  // Reads are not limited.
  CHECK(f.Call("GET", "/api/stats").status == 200);
}

TEST_CASE("unknown routes, static assets, busy port") {
  auto root = fs::temp_directory_path() / ("simile_static_" + std::to_string(::getpid()));
  fs::create_directories(root);
  {
    std::ofstream(root / "index.html") << "<!doctype html><title>Poređenja</title>";
  }
  ServiceConfig cfg = Fixture::Relaxed();
  cfg.static_dir = root;
  Fixture f(cfg);
  auto r = f.Call("GET", "/api/nothing");
  CHECK(r.status == 404);
  CHECK(CheckError(r.body, "not_found") == "");
  r = f.Call("GET", "/api/similes/abc");
  CHECK(r.status == 404);
  CHECK(CheckError(r.body, "not_found") == "");

  httplib::Client c("127.0.0.1", f.port());
  auto page = c.Get("/");
  REQUIRE(page);
  CHECK(page->status == 200);
  CHECK(page->body.find("Poređenja") != std::string::npos);

  ServiceConfig busy;
  busy.port = f.port();
  Service second(f.store(), busy);
  CHECK_THROWS_AS(second.Bind(), IoError);
  fs::remove_all(root);
}

TEST_CASE("racing curators: one wins, the other sees a conflict") {
  Fixture f;
  const std::string token = f.Login();
  for (int round = 0; round < 10; ++round) {
    auto rec = f.store().Upsert("gladan kao vuk" + std::to_string(round), Source::kManual);
    const std::string base = "/api/similes/" + std::to_string(rec.record.id);
    std::atomic<int> ok{0}, conflict{0};
    auto act = [&](const char *what) {
      httplib::Client c("127.0.0.1", f.port());
      auto r = c.Post(base + what, {{"Authorization", "Bearer " + token}}, "",
                      "application/json");
      if (r && r->status == 200) ++ok;
      if (r && r->status == 409) ++conflict;
    };
    std::thread t1(act, "/approve"), t2(act, "/reject");
    t1.join();
    t2.join();
    CHECK(ok == 1);
    CHECK(conflict == 1);
  }
}

TEST_CASE("shutdown keeps every acknowledged submission") {
  auto fix = std::make_unique<Fixture>();
  std::atomic<int> created{0};
  std::vector<std::thread> clients;
  for (int t = 0; t < 4; ++t) {
    clients.emplace_back([&, t] {
      httplib::Client c("127.0.0.1", fix->port());
      for (int i = 0; i < 25; ++i) {
        json body = {{"phrase", "hladan kao led" + std::to_string(t * 100 + i)}};
        auto r = c.Post("/api/similes", body.dump(), "application/json");
        if (r && r->status == 201) ++created;
      }
    });
  }
  std::this_thread::sleep_for(std::chrono::milliseconds(20));
  fix->service().Stop();
  for (auto &t : clients) t.join();
  CHECK(fix->store().Stats().total == created.load());
}

}  // namespace
}  // namespace simile
