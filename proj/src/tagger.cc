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

#include "simile/tagger.h"

#include <fstream>
#include <istream>
#include <ostream>

#include "simile/errors.h"
#include "simile/text.h"

namespace simile {

namespace {

bool IsApostrophe(char32_t cp) { return cp == '\'' || cp == 0x2019; }

bool IsSentenceEnd(char32_t cp) { return cp == '!' || cp == '?'; }

// Splits a tab-separated line into exactly two fields.
bool SplitPair(std::string_view line, std::string_view *a, std::string_view *b) {
  size_t tab = line.find('\t');
  if (tab == std::string_view::npos) return false;
  *a = Trim(line.substr(0, tab));
  *b = Trim(line.substr(tab + 1));
  return !a->empty() && !b->empty();
}

std::string StripCr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

char TagLetter(Tag tag) {
  switch (tag) {
    case Tag::kVerb: return 'V';
    case Tag::kAdjective: return 'A';
    case Tag::kNoun: return 'N';
    case Tag::kConnector: return 'C';
    case Tag::kParticle: return 'P';
    case Tag::kOther: return 'O';
  }
  return 'O';
}

std::optional<Tag> ParseTag(std::string_view s) {
  if (s.size() != 1) return std::nullopt;
  switch (s[0]) {
    case 'V': return Tag::kVerb;
    case 'A': return Tag::kAdjective;
    case 'N': return Tag::kNoun;
    case 'C': return Tag::kConnector;
    case 'P': return Tag::kParticle;
    case 'O': return Tag::kOther;
  }
  return std::nullopt;
}

bool IsConnectorForm(std::string_view lower) {
  return lower == "kao" || lower == "ko" || lower == "k'o";
}

void Lexicon::Add(std::string_view form, Tag tag) {
  entries_[FoldCase(form)] = tag;
}

void Lexicon::AddSuffixRule(std::string_view suffix, Tag tag) {
  if (StartsWith(suffix, "-")) suffix.remove_prefix(1);
  if (suffix.empty()) throw ContractViolation("empty suffix rule");
  rules_.push_back({FoldCase(suffix), tag});
}

int Lexicon::LoadEntries(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read lexicon " + path.string());
  int skipped = 0;
  std::string line;
  while (std::getline(in, line)) {
    line = StripCr(std::move(line));
    if (Trim(line).empty() || line[0] == '#') continue;
    std::string_view form, tag_str;
    std::optional<Tag> tag;
    if (!SplitPair(line, &form, &tag_str) || !(tag = ParseTag(tag_str))) {
      ++skipped;
      continue;
    }
    Add(form, *tag);
  }
  return skipped;
}

int Lexicon::LoadSuffixRules(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read suffix rules " + path.string());
  int skipped = 0;
  std::string line;
  while (std::getline(in, line)) {
    line = StripCr(std::move(line));
    if (Trim(line).empty() || line[0] == '#') continue;
    std::string_view suffix, tag_str;
    std::optional<Tag> tag;
    if (!SplitPair(line, &suffix, &tag_str) || !(tag = ParseTag(tag_str)) ||
        suffix == "-") {
      ++skipped;
      continue;
    }
    AddSuffixRule(suffix, *tag);
  }
  return skipped;
}

Lexicon Lexicon::LoadDir(const std::filesystem::path &dir) {
  Lexicon lex;
  lex.LoadEntries(dir / "lexicon.tsv");
  if (std::filesystem::exists(dir / "suffixes.tsv")) {
    lex.LoadSuffixRules(dir / "suffixes.tsv");
  }
  return lex;
}

std::optional<Tag> Lexicon::Lookup(std::string_view lower) const {
  auto it = entries_.find(std::string(lower));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::optional<Tag> Lexicon::MatchSuffix(std::string_view lower) const {
  const SuffixRule *best = nullptr;
  size_t word_len = Utf8Length(lower);
  for (const auto &rule : rules_) {
    if (!EndsWith(lower, rule.suffix)) continue;
    size_t len = Utf8Length(rule.suffix);
    // The suffix must leave at least one character in front of it.
    if (len >= word_len) continue;
    if (best == nullptr || len > Utf8Length(best->suffix)) best = &rule;
  }
  if (best == nullptr) return std::nullopt;
  return best->tag;
}

std::vector<std::vector<std::string>> Tokenize(std::string_view text) {
  std::vector<std::vector<std::string>> sentences;
  std::vector<std::string> sentence;
  std::string token;

  auto flush_token = [&] {
    if (!token.empty()) sentence.push_back(std::move(token));
    token.clear();
  };
  auto flush_sentence = [&] {
    flush_token();
    if (!sentence.empty()) sentences.push_back(std::move(sentence));
    sentence.clear();
  };

  std::u32string cps = DecodeUtf8(text);
  for (size_t i = 0; i < cps.size(); ++i) {
    char32_t cp = cps[i];
    if (IsWordChar(cp)) {
      AppendUtf8(cp, &token);
      continue;
    }
    if (IsApostrophe(cp) && (token == "k" || token == "K") &&
        i + 1 < cps.size() && FoldCase(cps[i + 1]) == U'o' &&
        (i + 2 == cps.size() || !IsWordChar(cps[i + 2]))) {
      AppendUtf8(cp, &token);
      continue;
    }
    if (IsSentenceEnd(cp)) {
      flush_sentence();
    } else if (cp == '.') {
      if (i + 1 < cps.size() && IsWordChar(cps[i + 1])) {
        flush_token();
      } else {
        flush_sentence();
      }
    } else {
      flush_token();
    }
  }
  flush_sentence();
  return sentences;
}

namespace {

Tag TagOne(const std::string &lower, const Lexicon &lexicon) {
  if (IsConnectorForm(lower)) return Tag::kConnector;
  if (lower == "se") return Tag::kParticle;
  if (auto tag = lexicon.Lookup(lower)) return *tag;
  if (auto tag = lexicon.MatchSuffix(lower)) return *tag;
  return lexicon.default_tag();
}

}  // namespace

std::vector<TaggedToken> TagTokens(const std::vector<std::string> &sentence,
                                   const Lexicon &lexicon,
                                   int sentence_index) {
  std::vector<TaggedToken> out;
  out.reserve(sentence.size());
  for (size_t i = 0; i < sentence.size(); ++i) {
    TaggedToken tok;
    tok.surface = sentence[i];
    tok.lower = FoldCase(sentence[i]);
    tok.tag = TagOne(tok.lower, lexicon);
    tok.sentence_index = sentence_index;
    tok.token_index = static_cast<int>(i);
    out.push_back(std::move(tok));
  }
  return out;
}

std::vector<TaggedSentence> AnalyzeText(std::string_view text,
                                        const Lexicon &lexicon,
                                        const AnalyzeOptions &options) {
  std::string latin;
  if (options.transliterate_cyrillic) {
    latin = TransliterateCyrillic(text);
    text = latin;
  }
  std::vector<TaggedSentence> out;
  auto sentences = Tokenize(text);
  out.reserve(sentences.size());
  for (size_t i = 0; i < sentences.size(); ++i) {
    out.push_back(TagTokens(sentences[i], lexicon, static_cast<int>(i)));
  }
  return out;
}

TaggedText ParseTagged(std::istream &in) {
  TaggedText result;
  TaggedSentence sentence;
  auto flush = [&] {
    if (!sentence.empty()) result.sentences.push_back(std::move(sentence));
    sentence.clear();
  };
  std::string line;
  while (std::getline(in, line)) {
    line = StripCr(std::move(line));
    if (Trim(line).empty()) {
      flush();
      continue;
    }
    std::string_view surface, tag_str;
    if (!SplitPair(line, &surface, &tag_str)) {
      ++result.malformed_lines;
      continue;
    }
    TaggedToken tok;
    tok.surface = std::string(surface);
    tok.lower = FoldCase(surface);
    if (IsConnectorForm(tok.lower)) {
      tok.tag = Tag::kConnector;
    } else if (tok.lower == "se") {
      tok.tag = Tag::kParticle;
    } else if (auto tag = ParseTag(tag_str)) {
      tok.tag = *tag;
    } else {
      tok.tag = Tag::kOther;
      ++result.unknown_tags;
    }
    tok.sentence_index = static_cast<int>(result.sentences.size());
    tok.token_index = static_cast<int>(sentence.size());
    sentence.push_back(std::move(tok));
  }
  flush();
  return result;
}

TaggedText LoadTagged(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read tagged text " + path.string());
  return ParseTagged(in);
}

void WriteTagged(const std::vector<TaggedSentence> &sentences,
                 std::ostream &out) {
  for (const auto &sentence : sentences) {
    if (sentence.empty()) continue;
    for (const auto &tok : sentence) {
      out << tok.surface << '\t' << TagLetter(tok.tag) << '\n';
    }
    out << '\n';
  }
}

}  // namespace simile
