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

// Sentence splitting, tokenization and coarse part-of-speech tagging.
//
// Tagging uses a closed six-tag set. The connector forms "kao", "ko" and
// "k'o" are always C and the reflexive particle "se" is always P; other
// tokens go through exact lexicon lookup, then the longest matching suffix
// rule, then the default tag. Externally tagged text can be loaded instead.

#ifndef SIMILE_TAGGER_H_
#define SIMILE_TAGGER_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace simile {

enum class Tag { kVerb, kAdjective, kNoun, kConnector, kParticle, kOther };

// One-letter name: V, A, N, C, P, O.
char TagLetter(Tag tag);
std::optional<Tag> ParseTag(std::string_view s);

struct TaggedToken {
  std::string surface;
  std::string lower;
  Tag tag = Tag::kOther;
  int sentence_index = 0;
  int token_index = 0;

  bool operator==(const TaggedToken &) const = default;
};

using TaggedSentence = std::vector<TaggedToken>;

bool IsConnectorForm(std::string_view lower);

struct SuffixRule {
  std::string suffix;
  Tag tag;
};

class Lexicon {
 public:
  Lexicon() = default;

  void Add(std::string_view form, Tag tag);
  void AddSuffixRule(std::string_view suffix, Tag tag);

  // Reads `form<TAB>tag` lines. Blank lines and '#' comments are ignored;
  // malformed lines are skipped and counted. Throws if unreadable.
  int LoadEntries(const std::filesystem::path &path);
  // Reads `suffix<TAB>tag` lines; a leading '-' on the suffix is optional.
  int LoadSuffixRules(const std::filesystem::path &path);
  // Loads lexicon.tsv and suffixes.tsv from `dir`.
  static Lexicon LoadDir(const std::filesystem::path &dir);

  std::optional<Tag> Lookup(std::string_view lower) const;
  std::optional<Tag> MatchSuffix(std::string_view lower) const;

  Tag default_tag() const { return default_tag_; }
  void set_default_tag(Tag tag) { default_tag_ = tag; }
  size_t size() const { return entries_.size(); }
  const std::vector<SuffixRule> &suffix_rules() const { return rules_; }

 private:
  std::unordered_map<std::string, Tag> entries_;
  // Kept in insertion order; matching picks the longest suffix and breaks
  // ties by this order.
  std::vector<SuffixRule> rules_;
  Tag default_tag_ = Tag::kOther;
};

// Splits text into sentences of tokens. '!' and '?' always end a sentence;
// '.' ends one unless a word character follows it directly. Punctuation is
// dropped, except the apostrophe inside "k'o".
std::vector<std::vector<std::string>> Tokenize(std::string_view text);

std::vector<TaggedToken> TagTokens(const std::vector<std::string> &sentence,
                                   const Lexicon &lexicon,
                                   int sentence_index = 0);

struct AnalyzeOptions {
  bool transliterate_cyrillic = true;
};

// Transliterate (optional), tokenize and tag.
std::vector<TaggedSentence> AnalyzeText(std::string_view text,
                                        const Lexicon &lexicon,
                                        const AnalyzeOptions &options = {});

struct TaggedText {
  std::vector<TaggedSentence> sentences;
  int unknown_tags = 0;
  int malformed_lines = 0;
};

// Reads `surface<TAB>tag` lines with blank lines between sentences.
// Unknown tags become O; connector and particle overrides still apply.
TaggedText LoadTagged(const std::filesystem::path &path);
TaggedText ParseTagged(std::istream &in);

void WriteTagged(const std::vector<TaggedSentence> &sentences,
                 std::ostream &out);

}  // namespace simile

#endif  // SIMILE_TAGGER_H_
