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

#include "simile/service.h"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <set>
#include <thread>

#include "httplib.h"
#include "simile/document.h"
#include "simile/features.h"
#include "simile/log.h"
#include "simile/tagger.h"
#include "simile/text.h"

namespace simile {

namespace {

using nlohmann::json;

int ParseInt(const std::string &value, const std::string &key, int lo) {
  int v = 0;
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || p != value.data() + value.size() || v < lo) {
    throw ParseError(key + " must be an integer >= " + std::to_string(lo));
  }
  return v;
}

void SetField(ServiceConfig &c, const std::string &key, const std::string &value) {
  if (key == "host") {
    c.host = value;
  } else if (key == "port") {
    c.port = ParseInt(value, key, 0);
    if (c.port > 65535) throw ParseError("port must be <= 65535");
  } else if (key == "store") {
    c.store_path = value;
  } else if (key == "static_dir") {
    c.static_dir = value;
  } else if (key == "model") {
    c.model_path = value;
  } else if (key == "rate_limit") {
    c.rate_limit = ParseInt(value, key, 1);
  } else if (key == "rate_window_s") {
    c.rate_window = std::chrono::seconds(ParseInt(value, key, 1));
  } else if (key == "session_ttl_s") {
    c.session_ttl = std::chrono::seconds(ParseInt(value, key, 1));
  } else {
    throw ParseError("unknown key " + key);
  }
}

}  // namespace

ServiceConfig ParseServiceConfig(std::istream &in) {
  ServiceConfig cfg;
  std::set<std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view t = Trim(line);
    if (t.empty() || t[0] == '#') continue;
    const std::string where = "service config line " + std::to_string(lineno) + ": ";
    size_t eq = t.find('=');
    if (eq == std::string_view::npos) throw ParseError(where + "expected key = value");
    std::string key(Trim(t.substr(0, eq)));
    std::string value(Trim(t.substr(eq + 1)));
    if (!seen.insert(key).second) throw ParseError(where + "duplicate key " + key);
    try {
      SetField(cfg, key, value);
    } catch (const ParseError &e) {
      throw ParseError(where + e.what());
    }
  }
  return cfg;
}

ServiceConfig LoadServiceConfig(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read service config " + path.string());
  return ParseServiceConfig(in);
}

void ApplyEnvironment(ServiceConfig &config,
                      const std::function<const char *(const char *)> &getenv) {
  static const std::pair<const char *, const char *> kVars[] = {
      {"SIMILE_HOST", "host"},
      {"SIMILE_PORT", "port"},
      {"SIMILE_STORE", "store"},
      {"SIMILE_STATIC_DIR", "static_dir"},
      {"SIMILE_MODEL", "model"},
      {"SIMILE_RATE_LIMIT", "rate_limit"},
      {"SIMILE_RATE_WINDOW_S", "rate_window_s"},
      {"SIMILE_SESSION_TTL_S", "session_ttl_s"},
  };
  for (const auto &[var, key] : kVars) {
    const char *v = getenv ? getenv(var) : std::getenv(var);
    if (v == nullptr) continue;
    try {
      SetField(config, key, std::string(Trim(v)));
    } catch (const ParseError &e) {
      throw ParseError(std::string(var) + ": " + e.what());
    }
  }
}

RateLimiter::RateLimiter(int limit, std::chrono::steady_clock::duration window,
                         Clock clock)
    : limit_(limit), window_(window), clock_(std::move(clock)) {
  if (!clock_) clock_ = [] { return std::chrono::steady_clock::now(); };
}

bool RateLimiter::Allow(const std::string &key) {
  const auto now = clock_();
  std::lock_guard lock(mu_);
  auto &q = events_[key];
  while (!q.empty() && q.front() <= now - window_) q.pop_front();
  if (static_cast<int>(q.size()) >= limit_) return false;
  q.push_back(now);
  return true;
}

std::chrono::steady_clock::duration RateLimiter::RetryAfter(const std::string &key) {
  const auto now = clock_();
  std::lock_guard lock(mu_);
  auto &q = events_[key];
  if (static_cast<int>(q.size()) < limit_) return {};
  return q.front() + window_ - now;
}

struct Service::Impl {
  CorpusStore &store;
  ServiceConfig config;
  std::shared_ptr<const TrainedModel> model;
  RateLimiter limiter;
  httplib::Server server;
  std::thread thread;
  bool bound = false;

  Impl(CorpusStore &s, ServiceConfig c, std::shared_ptr<const TrainedModel> m)
      : store(s),
        config(std::move(c)),
        model(std::move(m)),
        limiter(config.rate_limit, config.rate_window) {}

  static void Send(httplib::Response &res, int status, const json &body) {
    res.status = status;
    res.set_content(body.dump(), "application/json; charset=utf-8");
  }

  static void Fail(httplib::Response &res, int status, const std::string &code,
                   const std::string &message, json extra = json::object()) {
    extra["code"] = code;
    extra["message"] = message;
    Send(res, status, extra);
  }

  std::optional<Session> Authenticate(const httplib::Request &req) const {
    const std::string h = req.get_header_value("Authorization");
    static constexpr std::string_view kBearer = "Bearer ";
    if (!StartsWith(h, kBearer)) return std::nullopt;
    return store.FindSession(std::string(Trim(h.substr(kBearer.size()))));
  }

  std::optional<Session> RequireSession(const httplib::Request &req,
                                        httplib::Response &res) const {
    auto session = Authenticate(req);
    if (!session) Fail(res, 401, "unauthorized", "a valid curator session is required");
    return session;
  }

  // Body must be a JSON object.
  static std::optional<json> ParseBody(const httplib::Request &req,
                                       httplib::Response &res) {
    json body = json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object()) {
      Fail(res, 400, "bad_request", "body must be a JSON object");
      return std::nullopt;
    }
    return body;
  }

  // Reads an optional positive integer query parameter.
  static bool QueryInt(const httplib::Request &req, httplib::Response &res,
                       const char *name, int lo, int hi, int *out) {
    if (!req.has_param(name)) return true;
    const std::string v = req.get_param_value(name);
    int x = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size() || x < lo || x > hi) {
      Fail(res, 400, "bad_request",
           std::string(name) + " must be an integer in [" + std::to_string(lo) +
               ", " + std::to_string(hi) + "]");
      return false;
    }
    *out = x;
    return true;
  }

  static int64_t IdOf(const httplib::Request &req) {
    int64_t id = 0;
    const std::string s = req.matches[1];
    std::from_chars(s.data(), s.data() + s.size(), id);
    return id;
  }

  static json PageJson(const Page &p) {
    json items = json::array();
    for (const auto &r : p.items) items.push_back(ToJson(r));
    return {{"items", items},
            {"page", p.page},
            {"page_size", p.page_size},
            {"total", p.total},
            {"sort", "alpha"}};
  }

  void ListPage(const httplib::Request &req, httplib::Response &res, Status status) {
    int page = 1, size = 20;
    if (!QueryInt(req, res, "page", 1, 1 << 30, &page) ||
        !QueryInt(req, res, "page_size", 1, 500, &size)) {
      return;
    }
    if (req.has_param("sort") && req.get_param_value("sort") != "alpha") {
      Fail(res, 400, "bad_request", "sort must be alpha");
      return;
    }
    Send(res, 200, PageJson(store.List(status, page, size)));
  }

  std::optional<json> Score(const std::string &phrase) const {
    if (!model) return std::nullopt;
    auto tokens = SplitWhitespace(CleanPhrase(phrase));
    for (size_t i = 1; i + 1 < tokens.size(); ++i) {
      if (!IsConnectorForm(FoldCase(tokens[i]))) continue;
      std::vector<std::string> left(tokens.begin(), tokens.begin() + i);
      std::vector<std::string> right(tokens.begin() + i + 1, tokens.end());
      auto c = MakeCandidate(Join(left, " "), tokens[i], Join(right, " "));
      Prediction p = Predict(*model, Featurize(c, store.rules()));
      return json{{"positive", p.positive}, {"score", p.score}};
    }
    return std::nullopt;
  }

  void Submit(const httplib::Request &req, httplib::Response &res) {
    const std::string addr = req.remote_addr;
    if (!limiter.Allow(addr)) {
      auto wait = std::chrono::ceil<std::chrono::seconds>(limiter.RetryAfter(addr));
      res.set_header("Retry-After", std::to_string(std::max<int64_t>(1, wait.count())));
      Fail(res, 429, "rate_limited", "too many submissions, try again later");
      return;
    }
    auto body = ParseBody(req, res);
    if (!body) return;
    if (!body->contains("phrase") || !(*body)["phrase"].is_string()) {
      Fail(res, 400, "bad_request", "phrase must be a string");
      return;
    }
    const std::string phrase = (*body)["phrase"];
    std::optional<std::string> contributor;
    if (body->contains("contributor") && !(*body)["contributor"].is_null()) {
      if (!(*body)["contributor"].is_string()) {
        Fail(res, 400, "bad_request", "contributor must be a string");
        return;
      }
      contributor = std::string(Trim((*body)["contributor"].get<std::string>()));
      if (contributor->empty()) contributor.reset();
    }
    if (Utf8Length(phrase) > config.max_phrase_chars) {
      Fail(res, 422, "invalid_phrase",
           "phrase is longer than " + std::to_string(config.max_phrase_chars) +
               " characters",
           {{"reason", "too_long"}});
      return;
    }
    UpsertResult r;
    try {
      UpsertOptions opts;
      opts.submitter = contributor;
      r = store.Upsert(phrase, Source::kManual, opts);
    } catch (const InvalidPhraseError &e) {
      Fail(res, 422, "invalid_phrase", e.what(), {{"reason", e.reason()}});
      return;
    }
    if (!r.created) {
      Fail(res, 409, "duplicate", "this simile is already in the corpus",
           {{"record", ToJson(r.record)}});
      return;
    }
    json out = {{"record", ToJson(r.record)},
                {"visibility", "pending"},
                {"message", "submitted for review; visible once a curator approves it"}};
    if (auto s = Score(phrase)) out["classifier"] = *s;
    Log(LogLevel::kInfo, "submitted", {{"id", r.record.id}, {"addr", addr}});
    Send(res, 201, out);
  }

  void Login(const httplib::Request &req, httplib::Response &res) {
    auto body = ParseBody(req, res);
    if (!body) return;
    const json &b = *body;
    if (!b.contains("username") || !b["username"].is_string() ||
        !b.contains("password") || !b["password"].is_string()) {
      Fail(res, 400, "bad_request", "username and password must be strings");
      return;
    }
    const std::string user = b["username"];
    auto role = store.CheckPassword(user, b["password"]);
    if (!role) {
      Log(LogLevel::kWarn, "login_failed", {{"user", user}});
      Fail(res, 401, "invalid_credentials", "unknown user or wrong password");
      return;
    }
    const std::string token = store.CreateSession(user, *role, config.session_ttl);
    auto session = store.FindSession(token);
    Send(res, 200,
         {{"token", token},
          {"user", user},
          {"role", RoleName(*role)},
          {"expires_at", FormatRfc3339(session->expires_at)}});
  }

  // Runs a curator mutation and maps store errors to responses.
  void Curate(const httplib::Request &req, httplib::Response &res,
              const std::function<SimileRecord(const Session &)> &op) {
    auto session = RequireSession(req, res);
    if (!session) return;
    try {
      SimileRecord rec = op(*session);
      Send(res, 200, {{"record", ToJson(rec)}});
    } catch (const NotFoundError &e) {
      Fail(res, 404, "not_found", e.what());
    } catch (const IllegalTransitionError &e) {
      Fail(res, 409, "illegal_transition", e.what(),
           {{"record", ToJson(e.current())}});
    } catch (const DuplicateError &e) {
      Fail(res, 409, "duplicate", e.what(), {{"record", ToJson(e.current())}});
    } catch (const InvalidPhraseError &e) {
      Fail(res, 422, "invalid_phrase", e.what(), {{"reason", e.reason()}});
    }
  }

  void SetStatus(const httplib::Request &req, httplib::Response &res, Status to) {
    const int64_t id = IdOf(req);
    Curate(req, res, [&](const Session &s) {
      auto rec = store.SetStatus(id, to, s.user);
      Log(LogLevel::kInfo, StatusName(to), {{"id", id}, {"user", s.user}});
      return rec;
    });
  }

  void Edit(const httplib::Request &req, httplib::Response &res) {
    if (!RequireSession(req, res)) return;
    auto body = ParseBody(req, res);
    if (!body) return;
    if (!body->contains("display_form") || !(*body)["display_form"].is_string()) {
      Fail(res, 400, "bad_request", "display_form must be a string");
      return;
    }
    const std::string form = (*body)["display_form"];
    if (Utf8Length(form) > config.max_phrase_chars) {
      Fail(res, 422, "invalid_phrase", "display_form is too long",
           {{"reason", "too_long"}});
      return;
    }
    const int64_t id = IdOf(req);
    Curate(req, res, [&](const Session &s) {
      auto rec = store.Edit(id, form, s.user);
      Log(LogLevel::kInfo, "edited", {{"id", id}, {"user", s.user}});
      return rec;
    });
  }

  void GetOne(const httplib::Request &req, httplib::Response &res) {
    auto rec = store.Get(IdOf(req));
    // Unapproved records exist only for curators.
    if (!rec || (rec->status != Status::kApproved && !Authenticate(req))) {
      Fail(res, 404, "not_found", "no such simile");
      return;
    }
    Send(res, 200, {{"record", ToJson(*rec)}});
  }

  void Search(const httplib::Request &req, httplib::Response &res) {
    // '+' is a form-encoded space; no simile contains a literal '+'.
    std::string q = req.get_param_value("q");
    std::replace(q.begin(), q.end(), '+', ' ');
    if (Utf8Length(q) > config.max_phrase_chars) {
      Fail(res, 400, "bad_request", "query is too long");
      return;
    }
    json items = json::array();
    for (const auto &r : store.Search(q)) items.push_back(ToJson(r));
    const int total = static_cast<int>(items.size());
    Send(res, 200, {{"query", q}, {"items", std::move(items)}, {"total", total}});
  }

  void Routes() {
    server.set_payload_max_length(64 * 1024);
    // No SO_REUSEPORT: a second server on a busy port must fail to bind.
    server.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void *>(&yes),
                 sizeof(yes));
    });
    server.Get("/api/similes", [this](const auto &req, auto &res) {
      ListPage(req, res, Status::kApproved);
    });
    server.Get("/api/similes/search",
               [this](const auto &req, auto &res) { Search(req, res); });
    server.Get(R"(/api/similes/(\d{1,18}))",
               [this](const auto &req, auto &res) { GetOne(req, res); });
    server.Post("/api/similes",
                [this](const auto &req, auto &res) { Submit(req, res); });
    server.Post("/api/login", [this](const auto &req, auto &res) { Login(req, res); });
    server.Post(R"(/api/similes/(\d{1,18})/approve)", [this](const auto &req, auto &res) {
      SetStatus(req, res, Status::kApproved);
    });
    server.Post(R"(/api/similes/(\d{1,18})/reject)", [this](const auto &req, auto &res) {
      SetStatus(req, res, Status::kRejected);
    });
    server.Put(R"(/api/similes/(\d{1,18}))",
               [this](const auto &req, auto &res) { Edit(req, res); });
    server.Get("/api/pending", [this](const auto &req, auto &res) {
      if (RequireSession(req, res)) ListPage(req, res, Status::kPending);
    });
    server.Get("/api/stats", [this](const auto &, auto &res) {
      Send(res, 200, ToJson(store.Stats()));
    });

    if (!config.static_dir.empty()) {
      if (!server.set_mount_point("/", config.static_dir.string())) {
        throw IoError("static directory not found: " + config.static_dir.string());
      }
    }

    server.set_error_handler([](const httplib::Request &req, httplib::Response &res) {
      if (!res.body.empty() || !StartsWith(req.path, "/api/")) {
        return httplib::Server::HandlerResponse::Unhandled;
      }
      switch (res.status) {
        case 404:
          Fail(res, 404, "not_found", "no such endpoint");
          break;
        case 413:
          Fail(res, 413, "payload_too_large", "request body is too large");
          break;
        default:
          Fail(res, res.status, "bad_request", httplib::status_message(res.status));
      }
      return httplib::Server::HandlerResponse::Handled;
    });
    server.set_exception_handler(
        [](const httplib::Request &req, httplib::Response &res, std::exception_ptr ep) {
          std::string what = "unknown error";
          try {
            std::rethrow_exception(ep);
          } catch (const std::exception &e) {
            what = e.what();
          } catch (...) {
          }
          Log(LogLevel::kError, "request_failed", {{"path", req.path}, {"error", what}});
          Fail(res, 500, "internal", "internal server error");
        });
  }
};

Service::Service(CorpusStore &store, ServiceConfig config,
                 std::shared_ptr<const TrainedModel> model)
    : impl_(std::make_unique<Impl>(store, std::move(config), std::move(model))) {
  impl_->Routes();
}

Service::~Service() { Stop(); }

int Service::Bind() {
  const auto &c = impl_->config;
  int port = c.port == 0 ? impl_->server.bind_to_any_port(c.host)
                         : (impl_->server.bind_to_port(c.host, c.port) ? c.port : -1);
  if (port <= 0) {
    throw IoError("cannot bind " + c.host + ":" + std::to_string(c.port));
  }
  impl_->bound = true;
  port_ = port;
  Log(LogLevel::kInfo, "listening", {{"host", c.host}, {"port", port_}});
  return port_;
}

void Service::Run() {
  if (!impl_->bound) throw ContractViolation("Run() before Bind()");
  impl_->server.listen_after_bind();
}

int Service::Start() {
  Bind();
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return port_;
}

void Service::Stop() {
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace simile
