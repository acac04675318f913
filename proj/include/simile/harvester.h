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

// Config-driven focused crawler. Breadth-first from the seeds, staying
// inside one domain, honouring robots.txt and a per-host delay, and
// emitting the text of one content container per page.

#ifndef SIMILE_HARVESTER_H_
#define SIMILE_HARVESTER_H_

#include <chrono>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "simile/document.h"
#include "simile/html.h"
#include "simile/url.h"

namespace simile {

struct SiteConfig {
  std::string site_id;
  std::vector<std::string> seed_urls;
  std::string domain;
  ContentSelector content_selector;
  int max_pages = 100;
  int politeness_delay_ms = 1000;
  int max_depth = 3;
  std::string user_agent = "simile-harvester/1.0";
};

// key = value lines with '#' comments. seed_urls is a comma- or
// space-separated list and may repeat. Throws ParseError naming the line
// on unknown keys or bad values, and ContractViolation when the result
// breaks a SiteConfig invariant.
SiteConfig ParseSiteConfig(std::istream &in);
SiteConfig LoadSiteConfig(const std::filesystem::path &path);
void ValidateSiteConfig(const SiteConfig &cfg);

// Host equals cfg.domain or is a subdomain. Throws ParseError on a
// malformed URL.
bool InScope(std::string_view url, const SiteConfig &cfg);

struct FetchResponse {
  int status = 0;
  std::string content_type;
  std::string location;
  std::string body;
};

class Fetcher {
 public:
  virtual ~Fetcher() = default;
  // Throws IoError when no response arrives.
  virtual FetchResponse Get(const Url &url, const std::string &user_agent) = 0;
};

// cpp-httplib client, no automatic redirects.
class HttpFetcher : public Fetcher {
 public:
  explicit HttpFetcher(std::chrono::seconds timeout = std::chrono::seconds(20))
      : timeout_(timeout) {}
  FetchResponse Get(const Url &url, const std::string &user_agent) override;

 private:
  std::chrono::seconds timeout_;
};

struct CrawlStats {
  int fetched = 0;
  int emitted = 0;
  int robots_blocked = 0;
  int http_errors = 0;
  int network_errors = 0;
  int non_html = 0;
  int undecodable = 0;
  int empty_pages = 0;
  int out_of_scope_links = 0;
  std::vector<std::string> warnings;
};

// `emit` receives each document as it is produced. max_pages bounds page
// fetches (robots.txt requests excluded); seeds are depth 0.
CrawlStats Crawl(const SiteConfig &cfg, Fetcher &fetcher,
                 const std::function<void(const Document &)> &emit);

}  // namespace simile

#endif  // SIMILE_HARVESTER_H_
