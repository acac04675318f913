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

// URL parsing, reference resolution and canonicalization (generic URI
// syntax, with http/https specifics only in Canonicalize).

#ifndef SIMILE_URL_H_
#define SIMILE_URL_H_

#include <optional>
#include <string>
#include <string_view>

namespace simile {

struct Url {
  std::string scheme;
  bool has_authority = false;
  std::string userinfo;
  std::string host;
  std::optional<int> port;
  std::string path;
  bool has_query = false;
  std::string query;
  bool has_fragment = false;
  std::string fragment;

  std::string ToString() const;
  // host[:port] as written after canonicalization.
  std::string Authority() const;
  // Path plus query, never empty.
  std::string Target() const;

  bool operator==(const Url &) const = default;
};

// Parses any URI reference (absolute or relative). Throws ParseError on
// whitespace or control characters, a bad scheme, or a bad port.
Url ParseUrlReference(std::string_view s);
// Same, but requires a scheme and a non-empty host.
Url ParseAbsoluteUrl(std::string_view s);

// Resolves `ref` against absolute `base`.
Url Resolve(const Url &base, const Url &ref);
std::string RemoveDotSegments(std::string_view path);

// Lower-case scheme and host, default port dropped, empty path made "/",
// fragment removed.
Url Canonicalize(Url url);

// True iff `host` equals `domain` or is a subdomain of it. Case-insensitive.
bool HostInDomain(std::string_view host, std::string_view domain);

}  // namespace simile

#endif  // SIMILE_URL_H_
