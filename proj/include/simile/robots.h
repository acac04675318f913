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

// robots.txt groups and rules: the group for our product token if one
// exists, else the "*" group; the longest matching rule decides, and Allow
// wins a tie. Patterns support '*' and a trailing '$'.

#ifndef SIMILE_ROBOTS_H_
#define SIMILE_ROBOTS_H_

#include <string>
#include <string_view>
#include <vector>

namespace simile {

class RobotsRules {
 public:
  static RobotsRules Parse(std::string_view text, std::string_view product);
  static RobotsRules AllowAll() { return RobotsRules(); }
  static RobotsRules DisallowAll();

  // `target` is path plus query.
  bool Allowed(std::string_view target) const;

 private:
  struct Rule {
    bool allow;
    std::string pattern;
  };
  std::vector<Rule> rules_;
};

// Product token of a User-Agent string ("simile-harvester/1.0" ->
// "simile-harvester").
std::string ProductToken(std::string_view user_agent);

}  // namespace simile

#endif  // SIMILE_ROBOTS_H_
