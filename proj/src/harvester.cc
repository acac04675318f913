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

#include "simile/harvester.h"

#include <deque>
#include <fstream>
#include <map>
#include <set>
#include <thread>

#include "simile/errors.h"
#include "simile/log.h"
#include "simile/robots.h"
#include "simile/text.h"

namespace simile {

namespace {

int ParsePositiveInt(const std::string &value, const std::string &key,
                     bool allow_zero) {
  size_t used = 0;
  long v = 0;
  try {
    v = std::stol(value, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used != value.size() || value.empty() || v < (allow_zero ? 0 : 1) ||
      v > 1000000000) {
    throw ParseError(key + " must be a " +
                     (allow_zero ? "non-negative" : "positive") + " integer");
  }
  return static_cast<int>(v);
}

bool IsHtml(const std::string &content_type) {
  if (content_type.empty()) return true;
  std::string lower = content_type;
  for (char &c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return lower.find("html") != std::string::npos;
}

std::string Origin(const Url &u) { return u.scheme + "://" + u.Authority(); }

}  // namespace

SiteConfig ParseSiteConfig(std::istream &in) {
  SiteConfig cfg;
  std::set<std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view t = Trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto fail = [&](const std::string &why) {
      throw ParseError("site config line " + std::to_string(lineno) + ": " + why);
    };
    size_t eq = t.find('=');
    if (eq == std::string_view::npos) fail("expected key = value");
    std::string key(Trim(t.substr(0, eq)));
    std::string value(Trim(t.substr(eq + 1)));
    if (key != "seed_urls" && key != "seed_url" && !seen.insert(key).second) {
      fail("duplicate key " + key);
    }
    try {
      if (key == "site_id") {
        cfg.site_id = value;
      } else if (key == "seed_urls" || key == "seed_url") {
        std::string list = value;
        for (char &c : list) {
          if (c == ',') c = ' ';
        }
        for (auto &u : SplitWhitespace(list)) cfg.seed_urls.push_back(u);
      } else if (key == "domain") {
        cfg.domain = value;
      } else if (key == "content_selector") {
        cfg.content_selector = ParseSelector(value);
      } else if (key == "max_pages") {
        cfg.max_pages = ParsePositiveInt(value, key, false);
      } else if (key == "politeness_delay_ms") {
        cfg.politeness_delay_ms = ParsePositiveInt(value, key, true);
      } else if (key == "max_depth") {
        cfg.max_depth = ParsePositiveInt(value, key, false);
      } else if (key == "user_agent") {
        cfg.user_agent = value;
      } else {
        fail("unknown key " + key);
      }
    } catch (const ParseError &e) {
      std::string what = e.what();
      if (what.rfind("site config line", 0) == 0) throw;
      fail(what);
    }
  }
  ValidateSiteConfig(cfg);
  return cfg;
}

SiteConfig LoadSiteConfig(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read site config " + path.string());
  return ParseSiteConfig(in);
}

void ValidateSiteConfig(const SiteConfig &cfg) {
  if (cfg.site_id.empty()) throw ContractViolation("site_id is required");
  if (cfg.domain.empty()) throw ContractViolation("domain is required");
  if (cfg.seed_urls.empty()) throw ContractViolation("seed_urls is required");
  if (cfg.content_selector.element.empty()) {
    throw ContractViolation("content_selector is required");
  }
  if (cfg.max_pages < 1) throw ContractViolation("max_pages must be >= 1");
  if (cfg.max_depth < 1) throw ContractViolation("max_depth must be >= 1");
  if (cfg.politeness_delay_ms < 0) {
    throw ContractViolation("politeness_delay_ms must be >= 0");
  }
  for (const auto &seed : cfg.seed_urls) {
    Url u = ParseAbsoluteUrl(seed);
    if (!HostInDomain(u.host, cfg.domain)) {
      throw ContractViolation("seed outside domain: " + seed);
    }
  }
}

bool InScope(std::string_view url, const SiteConfig &cfg) {
  Url u = ParseAbsoluteUrl(url);
  return HostInDomain(u.host, cfg.domain);
}

CrawlStats Crawl(const SiteConfig &cfg, Fetcher &fetcher,
                 const std::function<void(const Document &)> &emit) {
  ValidateSiteConfig(cfg);
  CrawlStats stats;
  const auto delay = std::chrono::milliseconds(cfg.politeness_delay_ms);
  std::map<std::string, std::chrono::steady_clock::time_point> last_request;
  std::map<std::string, RobotsRules> robots;

  auto wait_turn = [&](const Url &u) {
    auto it = last_request.find(u.Authority());
    if (it != last_request.end()) {
      auto ready = it->second + delay;
      auto now = std::chrono::steady_clock::now();
      if (ready > now) std::this_thread::sleep_for(ready - now);
    }
    last_request[u.Authority()] = std::chrono::steady_clock::now();
  };

  auto robots_for = [&](const Url &u) -> const RobotsRules & {
    std::string origin = Origin(u);
    auto it = robots.find(origin);
    if (it != robots.end()) return it->second;
    Url r = u;
    r.path = "/robots.txt";
    r.has_query = false;
    r.query.clear();
    RobotsRules rules = RobotsRules::AllowAll();
    wait_turn(r);
    try {
      FetchResponse resp = fetcher.Get(r, cfg.user_agent);
      if (resp.status >= 200 && resp.status < 300) {
        rules = RobotsRules::Parse(resp.body, ProductToken(cfg.user_agent));
      } else if (resp.status >= 500) {
        rules = RobotsRules::DisallowAll();
      }
    } catch (const IoError &e) {
      rules = RobotsRules::DisallowAll();
      Log(LogLevel::kWarn, "robots_unreachable",
          {{"origin", origin}, {"error", e.what()}});
    }
    return robots.emplace(origin, std::move(rules)).first->second;
  };

  std::deque<std::pair<Url, int>> frontier;
  std::set<std::string> seen;
  auto enqueue = [&](Url u, int depth) {
    u = Canonicalize(std::move(u));
    if (u.scheme != "http" && u.scheme != "https") return;
    if (!HostInDomain(u.host, cfg.domain)) {
      ++stats.out_of_scope_links;
      return;
    }
    if (seen.insert(u.ToString()).second) frontier.emplace_back(std::move(u), depth);
  };
  for (const auto &seed : cfg.seed_urls) enqueue(ParseAbsoluteUrl(seed), 0);

  while (!frontier.empty() && stats.fetched < cfg.max_pages) {
    auto [url, depth] = frontier.front();
    frontier.pop_front();
    const std::string url_s = url.ToString();
    if (!robots_for(url).Allowed(url.Target())) {
      ++stats.robots_blocked;
      Log(LogLevel::kInfo, "robots_blocked", {{"url", url_s}});
      continue;
    }
    wait_turn(url);
    FetchResponse resp;
    try {
      resp = fetcher.Get(url, cfg.user_agent);
    } catch (const IoError &e) {
      ++stats.network_errors;
      Log(LogLevel::kWarn, "fetch_failed", {{"url", url_s}, {"error", e.what()}});
      continue;
    }
    ++stats.fetched;
    if (resp.status >= 300 && resp.status < 400 && !resp.location.empty()) {
      try {
        enqueue(Resolve(url, ParseUrlReference(resp.location)), depth);
      } catch (const ParseError &) {
        ++stats.http_errors;
      }
      continue;
    }
    if (resp.status != 200) {
      ++stats.http_errors;
      Log(LogLevel::kWarn, "http_error", {{"url", url_s}, {"status", resp.status}});
      continue;
    }
    if (!IsHtml(resp.content_type)) {
      ++stats.non_html;
      continue;
    }
    std::string html;
    try {
      html = DecodeHtml(resp.body, resp.content_type);
    } catch (const DecodeError &e) {
      ++stats.undecodable;
      Log(LogLevel::kWarn, "undecodable", {{"url", url_s}, {"error", e.what()}});
      continue;
    }
    std::string text = ExtractText(html, cfg.content_selector);
    if (text.empty()) {
      ++stats.empty_pages;
    } else {
      Document doc;
      doc.url = url_s;
      doc.site_id = cfg.site_id;
      doc.fetched_at = Now();
      doc.text = std::move(text);
      emit(doc);
      ++stats.emitted;
    }
    if (depth < cfg.max_depth) {
      PageLinks links = ExtractLinks(html);
      Url base = url;
      if (!links.base.empty()) {
        try {
          base = Resolve(url, ParseUrlReference(links.base));
        } catch (const ParseError &) {
        }
      }
      for (const auto &href : links.hrefs) {
        try {
          enqueue(Resolve(base, ParseUrlReference(href)), depth + 1);
        } catch (const ParseError &) {
          Log(LogLevel::kDebug, "bad_link", {{"url", url_s}, {"href", href}});
        }
      }
    }
  }
  if (stats.fetched == 0) {
    stats.warnings.push_back("no seed URL could be fetched");
    Log(LogLevel::kWarn, "no_reachable_seeds", {{"site_id", cfg.site_id}});
  }
  return stats;
}

}  // namespace simile
