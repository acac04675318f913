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

// Rule-driven suffix-stripping stemmer for Serbian (Latin script).
//
// A word is stemmed in three steps:
//
//   1. Exceptions: a whole-word table wins outright ("kao" -> "ka").
//   2. Prestem rewrite: the first rewrite whose pattern ends the word is
//      applied (l-vocalization, "beo" -> "bel").
//   3. Strip: suffix rules are tried longest suffix first, ties in file
//      order. A rule applies when the remaining stem (plus replacement) has
//      at least min_stem_len characters and is itself a fixed point of the
//      stemmer. The first applicable rule wins.
//
// The fixed-point condition in step 3 makes stemming idempotent: the
// output of Stem() is always returned unchanged by a second Stem().
//
// Rule file format (UTF-8, tab separated, '#' comments):
//
//   [exceptions]
//   kao	ka
//   [prestem]
//   eo	el
//   [rules]
//   ima	-	2        ('-' or an empty field means no replacement)

#ifndef SIMILE_STEMMER_H_
#define SIMILE_STEMMER_H_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace simile {

struct StripRule {
  std::string suffix;
  std::string replacement;
  int min_stem_len = 1;
};

struct PrestemRewrite {
  std::string pattern;
  std::string rewrite;
};

class StemRuleSet {
 public:
  StemRuleSet() = default;

  static StemRuleSet Parse(std::istream &in);
  static StemRuleSet Load(const std::filesystem::path &path);

  void AddRule(StripRule rule);
  void AddRewrite(PrestemRewrite rewrite);
  void AddException(std::string word, std::string stem);

  // Throws ParseError if an exception target is not a fixed point.
  void Validate() const;

  const std::vector<StripRule> &rules() const { return rules_; }
  const std::vector<PrestemRewrite> &rewrites() const { return rewrites_; }
  const std::unordered_map<std::string, std::string> &exceptions() const {
    return exceptions_;
  }

 private:
  // Sorted longest suffix first, stable with respect to insertion order.
  std::vector<StripRule> rules_;
  std::vector<PrestemRewrite> rewrites_;
  std::unordered_map<std::string, std::string> exceptions_;
};

// Throws ContractViolation on an empty word.
std::string Stem(std::string_view word, const StemRuleSet &rules);

// Stems every whitespace-separated token and joins with single spaces.
// Throws ContractViolation if the phrase has no tokens.
std::string StemPhrase(std::string_view phrase, const StemRuleSet &rules);

}  // namespace simile

#endif  // SIMILE_STEMMER_H_
