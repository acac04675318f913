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

#include "simile/extractor.h"

#include <unordered_map>

#include "simile/errors.h"
#include "simile/text.h"

namespace simile {

namespace {

bool IsHead(Tag t) { return t == Tag::kVerb || t == Tag::kAdjective; }
bool IsModifier(Tag t) { return t == Tag::kAdjective || t == Tag::kNoun; }

bool IsConnector(const TaggedToken &tok) {
  return tok.tag == Tag::kConnector && IsConnectorForm(tok.lower);
}

std::string JoinSurfaces(const TaggedSentence &s, int from, int to) {
  std::string out;
  for (int i = from; i <= to; ++i) {
    if (i > from) out.push_back(' ');
    out += s[i].surface;
  }
  return out;
}

}  // namespace

const char *KindName(SimileKind kind) {
  return kind == SimileKind::kVerbal ? "verbal" : "adjectival";
}

SimileKind ParseKind(std::string_view s) {
  if (s == "verbal") return SimileKind::kVerbal;
  if (s == "adjectival") return SimileKind::kAdjectival;
  throw ParseError("unknown simile kind: " + std::string(s));
}

std::string NormalizeConnector(std::string_view surface) {
  if (!IsConnectorForm(FoldCase(surface))) {
    throw ContractViolation("not a connector: " + std::string(surface));
  }
  return "kao";
}

std::vector<CandidateSimile> MatchCandidates(const TaggedSentence &sentence) {
  std::vector<CandidateSimile> out;
  const int n = static_cast<int>(sentence.size());
  int i = 0;
  while (i < n) {
    const Tag head = sentence[i].tag;
    if (!IsHead(head)) {
      ++i;
      continue;
    }
    int conn = i + 1;
    if (head == Tag::kVerb && conn < n && sentence[conn].tag == Tag::kParticle) {
      ++conn;
    }
    if (conn >= n || !IsConnector(sentence[conn])) {
      ++i;
      continue;
    }
    int last_noun = -1;
    for (int k = conn + 1; k < n && IsModifier(sentence[k].tag); ++k) {
      if (sentence[k].tag == Tag::kNoun) last_noun = k;
    }
    if (last_noun < 0) {
      ++i;
      continue;
    }

    CandidateSimile c;
    c.left = JoinSurfaces(sentence, i, conn - 1);
    c.connector = "kao";
    c.connector_surface = sentence[conn].surface;
    c.right = JoinSurfaces(sentence, conn + 1, last_noun);
    c.phrase = c.left + " " + c.connector_surface + " " + c.right;
    c.kind = head == Tag::kAdjective ? SimileKind::kAdjectival
                                     : SimileKind::kVerbal;
    c.sentence_index = sentence[i].sentence_index;
    c.span_start = i;
    c.span_end = last_noun;
    out.push_back(std::move(c));
    i = last_noun + 1;
  }
  return out;
}

std::vector<CandidateSimile> ExtractDocument(const Document &doc,
                                             const Lexicon &lexicon,
                                             const AnalyzeOptions &options) {
  std::vector<CandidateSimile> out;
  std::unordered_map<std::string, size_t> seen;
  for (const auto &sentence : AnalyzeText(doc.text, lexicon, options)) {
    for (auto &c : MatchCandidates(sentence)) {
      auto [it, inserted] = seen.emplace(c.phrase, out.size());
      if (!inserted) {
        ++out[it->second].count;
        continue;
      }
      c.doc_url = doc.url;
      out.push_back(std::move(c));
    }
  }
  return out;
}

ExtractResult ExtractCorpus(const std::vector<Document> &docs,
                            const Lexicon &lexicon,
                            const AnalyzeOptions &options) {
  ExtractResult result;
  for (const auto &doc : docs) {
    ++result.documents;
    try {
      auto found = ExtractDocument(doc, lexicon, options);
      result.candidates.insert(result.candidates.end(),
                               std::make_move_iterator(found.begin()),
                               std::make_move_iterator(found.end()));
    } catch (const std::exception &) {
      ++result.failed_documents;
    }
  }
  return result;
}

nlohmann::json ToJson(const CandidateSimile &c) {
  return {{"left", c.left},
          {"connector", c.connector},
          {"connector_surface", c.connector_surface},
          {"right", c.right},
          {"phrase", c.phrase},
          {"kind", KindName(c.kind)},
          {"doc_url", c.doc_url},
          {"sentence_index", c.sentence_index},
          {"span", {c.span_start, c.span_end}},
          {"count", c.count}};
}

CandidateSimile CandidateFromJson(const nlohmann::json &j) {
  CandidateSimile c;
  c.left = j.at("left").get<std::string>();
  c.connector = j.value("connector", "kao");
  c.connector_surface = j.at("connector_surface").get<std::string>();
  c.right = j.at("right").get<std::string>();
  c.phrase = j.value("phrase",
                     c.left + " " + c.connector_surface + " " + c.right);
  c.kind = ParseKind(j.value("kind", "adjectival"));
  c.doc_url = j.value("doc_url", "");
  c.sentence_index = j.value("sentence_index", 0);
  if (j.contains("span")) {
    c.span_start = j.at("span").at(0).get<int>();
    c.span_end = j.at("span").at(1).get<int>();
  }
  c.count = j.value("count", 1);
  return c;
}

}  // namespace simile
