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

#include "httplib.h"
#include "simile/errors.h"
#include "simile/harvester.h"

namespace simile {

FetchResponse HttpFetcher::Get(const Url &url, const std::string &user_agent) {
  if (url.scheme != "http" && url.scheme != "https") {
    throw IoError("unsupported scheme: " + url.scheme);
  }
  httplib::Client client(url.scheme + "://" + url.Authority());
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  client.set_follow_location(false);
  httplib::Headers headers = {{"User-Agent", user_agent},
                              {"Accept", "text/html,*/*;q=0.5"}};
  auto res = client.Get(url.Target(), headers);
  if (!res) {
    throw IoError("GET " + url.ToString() + ": " + httplib::to_string(res.error()));
  }
  FetchResponse out;
  out.status = res->status;
  out.content_type = res->get_header_value("Content-Type");
  out.location = res->get_header_value("Location");
  out.body = std::move(res->body);
  return out;
}

}  // namespace simile
