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

#include "simile/url.h"

#include <algorithm>
#include <cctype>
#include <vector>

#include "simile/errors.h"

namespace simile {

namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char &c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool ValidScheme(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' ||
           c == '.';
  });
}

void ParseAuthority(std::string_view auth, Url &url) {
  size_t at = auth.rfind('@');
  if (at != std::string_view::npos) {
    url.userinfo = std::string(auth.substr(0, at));
    auth.remove_prefix(at + 1);
  }
  std::string_view port;
  if (!auth.empty() && auth[0] == '[') {
    size_t close = auth.find(']');
    if (close == std::string_view::npos) throw ParseError("unclosed IPv6 host");
    url.host = std::string(auth.substr(0, close + 1));
    std::string_view rest = auth.substr(close + 1);
    if (!rest.empty()) {
      if (rest[0] != ':') throw ParseError("junk after IPv6 host");
      port = rest.substr(1);
    }
  } else {
    size_t colon = auth.rfind(':');
    if (colon != std::string_view::npos) {
      port = auth.substr(colon + 1);
      auth = auth.substr(0, colon);
    }
    url.host = std::string(auth);
  }
  if (!port.empty()) {
    if (port.size() > 5 ||
        !std::all_of(port.begin(), port.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      throw ParseError("bad port: " + std::string(port));
    }
    int p = std::stoi(std::string(port));
    if (p > 65535) throw ParseError("port out of range");
    url.port = p;
  }
}

}  // namespace

Url ParseUrlReference(std::string_view s) {
  for (char c : s) {
    unsigned char u = static_cast<unsigned char>(c);
    if (u <= 0x20 || u == 0x7f) throw ParseError("invalid character in URL");
  }
  Url url;
  std::string_view rest = s;
  // Scheme: leading run before ':' with no '/', '?' or '#' before it.
  size_t colon = rest.find(':');
  size_t delim = rest.find_first_of("/?#");
  if (colon != std::string_view::npos && colon > 0 &&
      (delim == std::string_view::npos || colon < delim)) {
    std::string_view scheme = rest.substr(0, colon);
    if (!ValidScheme(scheme)) throw ParseError("bad scheme: " + std::string(scheme));
    url.scheme = std::string(scheme);
    rest.remove_prefix(colon + 1);
  }
  size_t hash = rest.find('#');
  if (hash != std::string_view::npos) {
    url.has_fragment = true;
    url.fragment = std::string(rest.substr(hash + 1));
    rest = rest.substr(0, hash);
  }
  size_t q = rest.find('?');
  if (q != std::string_view::npos) {
    url.has_query = true;
    url.query = std::string(rest.substr(q + 1));
    rest = rest.substr(0, q);
  }
  if (rest.substr(0, 2) == "//") {
    rest.remove_prefix(2);
    size_t slash = rest.find('/');
    url.has_authority = true;
    ParseAuthority(rest.substr(0, slash), url);
    rest = slash == std::string_view::npos ? std::string_view() : rest.substr(slash);
  }
  url.path = std::string(rest);
  return url;
}

Url ParseAbsoluteUrl(std::string_view s) {
  Url url = ParseUrlReference(s);
  if (url.scheme.empty()) throw ParseError("URL has no scheme: " + std::string(s));
  if (url.host.empty()) throw ParseError("URL has no host: " + std::string(s));
  return url;
}

std::string Url::Authority() const {
  std::string out = host;
  if (port) out += ":" + std::to_string(*port);
  return out;
}

std::string Url::Target() const {
  std::string out = path.empty() ? "/" : path;
  if (has_query) out += "?" + query;
  return out;
}

std::string Url::ToString() const {
  std::string out;
  if (!scheme.empty()) out += scheme + ":";
  if (has_authority) {
    out += "//";
    if (!userinfo.empty()) out += userinfo + "@";
    out += Authority();
  }
  out += path;
  if (has_query) out += "?" + query;
  if (has_fragment) out += "#" + fragment;
  return out;
}

std::string RemoveDotSegments(std::string_view path) {
  std::string input(path);
  std::vector<std::string> out;
  bool absolute = !input.empty() && input[0] == '/';
  // Split into segments, keeping track of a trailing slash.
  std::vector<std::string> segs;
  size_t start = absolute ? 1 : 0;
  while (true) {
    size_t slash = input.find('/', start);
    segs.push_back(input.substr(start, slash - start));
    if (slash == std::string::npos) break;
    start = slash + 1;
  }
  bool trailing = false;
  for (size_t i = 0; i < segs.size(); ++i) {
    const std::string &s = segs[i];
    bool last = i + 1 == segs.size();
    if (s == ".") {
      trailing = last;
    } else if (s == "..") {
      if (!out.empty()) out.pop_back();
      trailing = last;
    } else {
      out.push_back(s);
      trailing = false;
    }
  }
  std::string result = absolute ? "/" : "";
  for (size_t i = 0; i < out.size(); ++i) {
    if (i) result += "/";
    result += out[i];
  }
  if (trailing && !result.empty() && result.back() != '/') result += "/";
  return result;
}

Url Resolve(const Url &base, const Url &ref) {
  Url t;
  if (!ref.scheme.empty()) {
    t = ref;
    t.path = RemoveDotSegments(ref.path);
  } else {
    if (ref.has_authority) {
      t = ref;
      t.path = RemoveDotSegments(ref.path);
    } else {
      t.has_authority = base.has_authority;
      t.userinfo = base.userinfo;
      t.host = base.host;
      t.port = base.port;
      if (ref.path.empty()) {
        t.path = base.path;
        t.has_query = ref.has_query || base.has_query;
        t.query = ref.has_query ? ref.query : base.query;
      } else {
        if (ref.path[0] == '/') {
          t.path = RemoveDotSegments(ref.path);
        } else {
          std::string merged;
          if (base.has_authority && base.path.empty()) {
            merged = "/" + ref.path;
          } else {
            size_t slash = base.path.rfind('/');
            merged = (slash == std::string::npos ? "" : base.path.substr(0, slash + 1)) +
                     ref.path;
          }
          t.path = RemoveDotSegments(merged);
        }
        t.has_query = ref.has_query;
        t.query = ref.query;
      }
    }
    t.scheme = base.scheme;
  }
  t.has_fragment = ref.has_fragment;
  t.fragment = ref.fragment;
  return t;
}

Url Canonicalize(Url url) {
  url.scheme = Lower(url.scheme);
  url.host = Lower(url.host);
  if (url.port && ((url.scheme == "http" && *url.port == 80) ||
                   (url.scheme == "https" && *url.port == 443))) {
    url.port.reset();
  }
  if (url.has_authority && url.path.empty()) url.path = "/";
  url.has_fragment = false;
  url.fragment.clear();
  return url;
}

bool HostInDomain(std::string_view host, std::string_view domain) {
  std::string h = Lower(host), d = Lower(domain);
  while (!h.empty() && h.back() == '.') h.pop_back();
  while (!d.empty() && d.back() == '.') d.pop_back();
  if (d.empty()) return false;
  if (h == d) return true;
  return h.size() > d.size() && h.compare(h.size() - d.size(), d.size(), d) == 0 &&
         h[h.size() - d.size() - 1] == '.';
}

}  // namespace simile
