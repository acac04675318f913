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

#include "simile/stemmer.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>

#include "simile/errors.h"
#include "simile/text.h"

namespace simile {

namespace {

std::vector<std::string> SplitTabs(std::string_view line) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    size_t tab = line.find('\t', start);
    fields.emplace_back(Trim(line.substr(start, tab - start)));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

std::string EmptyIfDash(std::string s) { return s == "-" ? std::string() : s; }

using Memo = std::unordered_map<std::string, std::string>;

std::string StemImpl(const std::string &word, const StemRuleSet &rules,
                     Memo &memo);

bool MatchesAnyRewrite(std::string_view word, const StemRuleSet &rules) {
  for (const auto &rw : rules.rewrites()) {
    if (EndsWith(word, rw.pattern) && word.size() > rw.pattern.size()) {
      return true;
    }
  }
  return false;
}

std::string Rewrite(const std::string &word, const StemRuleSet &rules) {
  for (const auto &rw : rules.rewrites()) {
    if (!EndsWith(word, rw.pattern) || word.size() <= rw.pattern.size()) {
      continue;
    }
    std::string out = word.substr(0, word.size() - rw.pattern.size());
    out += rw.rewrite;
    if (!MatchesAnyRewrite(out, rules)) return out;
  }
  return word;
}

std::string StemImpl(const std::string &word, const StemRuleSet &rules,
                     Memo &memo) {
  if (auto it = memo.find(word); it != memo.end()) return it->second;

  std::string result;
  if (auto ex = rules.exceptions().find(word); ex != rules.exceptions().end()) {
    result = ex->second;
  } else {
    std::string base = Rewrite(word, rules);
    result = base;
    for (const auto &rule : rules.rules()) {
      if (!EndsWith(base, rule.suffix)) continue;
      std::string candidate = base.substr(0, base.size() - rule.suffix.size());
      candidate += rule.replacement;
      if (candidate.empty() ||
          Utf8Length(candidate) < static_cast<size_t>(rule.min_stem_len)) {
        continue;
      }
      if (StemImpl(candidate, rules, memo) != candidate) continue;
      result = std::move(candidate);
      break;
    }
  }
  memo.emplace(word, result);
  return result;
}

}  // namespace

void StemRuleSet::AddRule(StripRule rule) {
  if (rule.suffix.empty()) throw ParseError("empty strip suffix");
  if (Utf8Length(rule.replacement) >= Utf8Length(rule.suffix)) {
    throw ParseError("replacement must be shorter than suffix: " + rule.suffix);
  }
  if (rule.min_stem_len < 1) rule.min_stem_len = 1;
  auto pos = std::upper_bound(
      rules_.begin(), rules_.end(), rule,
      [](const StripRule &a, const StripRule &b) {
        return Utf8Length(a.suffix) > Utf8Length(b.suffix);
      });
  rules_.insert(pos, std::move(rule));
}

void StemRuleSet::AddRewrite(PrestemRewrite rewrite) {
  if (rewrite.pattern.empty()) throw ParseError("empty rewrite pattern");
  if (Utf8Length(rewrite.rewrite) > Utf8Length(rewrite.pattern)) {
    throw ParseError("rewrite longer than pattern: " + rewrite.pattern);
  }
  rewrites_.push_back(std::move(rewrite));
}

void StemRuleSet::AddException(std::string word, std::string stem) {
  if (word.empty() || stem.empty()) throw ParseError("empty exception entry");
  exceptions_[std::move(word)] = std::move(stem);
}

void StemRuleSet::Validate() const {
  for (const auto &[word, stem] : exceptions_) {
    if (Stem(stem, *this) != stem) {
      throw ParseError("exception target is not a fixed point: " + word +
                       " -> " + stem);
    }
  }
}

StemRuleSet StemRuleSet::Parse(std::istream &in) {
  enum class Section { kRules, kPrestem, kExceptions };
  StemRuleSet set;
  Section section = Section::kRules;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view trimmed = Trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    if (trimmed == "[rules]") {
      section = Section::kRules;
      continue;
    }
    if (trimmed == "[prestem]") {
      section = Section::kPrestem;
      continue;
    }
    if (trimmed == "[exceptions]") {
      section = Section::kExceptions;
      continue;
    }
    auto fields = SplitTabs(line);
    auto fail = [&](const char *what) {
      throw ParseError("stem rules line " + std::to_string(line_no) + ": " +
                       what);
    };
    switch (section) {
      case Section::kRules: {
        if (fields.size() != 3) fail("expected suffix, replacement, min_len");
        StripRule rule;
        rule.suffix = fields[0];
        rule.replacement = EmptyIfDash(fields[1]);
        auto [p, ec] = std::from_chars(
            fields[2].data(), fields[2].data() + fields[2].size(),
            rule.min_stem_len);
        if (ec != std::errc() || p != fields[2].data() + fields[2].size()) {
          fail("bad min_stem_len");
        }
        set.AddRule(std::move(rule));
        break;
      }
      case Section::kPrestem:
        if (fields.size() != 2) fail("expected pattern, rewrite");
        set.AddRewrite({fields[0], EmptyIfDash(fields[1])});
        break;
      case Section::kExceptions:
        if (fields.size() != 2) fail("expected word, stem");
        set.AddException(fields[0], fields[1]);
        break;
    }
  }
  set.Validate();
  return set;
}

StemRuleSet StemRuleSet::Load(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read stem rules " + path.string());
  return Parse(in);
}

std::string Stem(std::string_view word, const StemRuleSet &rules) {
  if (word.empty()) throw ContractViolation("cannot stem an empty word");
  Memo memo;
  return StemImpl(std::string(word), rules, memo);
}

std::string StemPhrase(std::string_view phrase, const StemRuleSet &rules) {
  auto tokens = SplitWhitespace(phrase);
  if (tokens.empty()) throw ContractViolation("cannot stem an empty phrase");
  for (auto &tok : tokens) tok = Stem(tok, rules);
  return Join(tokens, " ");
}

}  // namespace simile
