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

#include "simile/robots.h"

#include <cctype>

#include "simile/text.h"

namespace simile {

namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char &c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

// Pattern match with '*' and a trailing '$' anchor, prefix semantics
// otherwise.
bool PatternMatches(std::string_view pattern, std::string_view s) {
  bool anchored = !pattern.empty() && pattern.back() == '$';
  if (anchored) pattern.remove_suffix(1);
  // Iterative wildcard match; `s` may have a tail unless anchored.
  size_t p = 0, i = 0, star_p = std::string_view::npos, star_i = 0;
  while (true) {
    if (p == pattern.size()) {
      if (!anchored || i == s.size()) return true;
    } else if (pattern[p] == '*') {
      star_p = p++;
      star_i = i;
      continue;
    } else if (i < s.size() && pattern[p] == s[i]) {
      ++p;
      ++i;
      continue;
    }
    if (star_p == std::string_view::npos || star_i >= s.size()) return false;
    p = star_p + 1;
    i = ++star_i;
  }
}

}  // namespace

std::string ProductToken(std::string_view user_agent) {
  std::string t(Trim(user_agent));
  size_t end = t.find_first_of("/ ");
  return Lower(t.substr(0, end));
}

RobotsRules RobotsRules::DisallowAll() {
  RobotsRules r;
  r.rules_.push_back({false, "/"});
  return r;
}

RobotsRules RobotsRules::Parse(std::string_view text, std::string_view product) {
  const std::string me = Lower(product);
  std::vector<Rule> mine, star;
  bool have_mine = false, have_star = false;
  // Agents of the group being read, and whether rules were seen since.
  std::vector<std::string> agents;
  bool in_rules = false;

  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos
                                                      : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    size_t colon = line.find(':');
    if (colon == std::string_view::npos) continue;
    std::string key = Lower(Trim(line.substr(0, colon)));
    std::string value(Trim(line.substr(colon + 1)));
    if (key == "user-agent") {
      if (in_rules) {
        agents.clear();
        in_rules = false;
      }
      agents.push_back(Lower(value));
      if (Lower(value) == me) have_mine = true;
      if (value == "*") have_star = true;
    } else if (key == "allow" || key == "disallow") {
      in_rules = true;
      if (value.empty()) continue;
      Rule rule{key == "allow", value};
      for (const auto &a : agents) {
        if (a == me) mine.push_back(rule);
        if (a == "*") star.push_back(rule);
      }
    }
  }
  RobotsRules r;
  if (have_mine) {
    r.rules_ = std::move(mine);
  } else if (have_star) {
    r.rules_ = std::move(star);
  }
  return r;
}

bool RobotsRules::Allowed(std::string_view target) const {
  if (target == "/robots.txt") return true;
  size_t best = 0;
  bool allowed = true;
  bool any = false;
  for (const auto &rule : rules_) {
    if (!PatternMatches(rule.pattern, target)) continue;
    size_t len = rule.pattern.size();
    if (!any || len > best || (len == best && rule.allow)) {
      best = len;
      allowed = rule.allow;
      any = true;
    }
  }
  return allowed;
}

}  // namespace simile
