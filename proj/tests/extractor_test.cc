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

#include <sstream>

#include "doctest.h"
#include "oracles.h"
#include "simile/errors.h"
#include "simile/extractor.h"
#include "simile/random.h"
#include "simile/text.h"

namespace simile {
namespace {

TaggedSentence Tagged(const std::string &spec) {
  // "word/T word/T ..."
  std::string text;
  for (const auto &tok : SplitWhitespace(spec)) {
    auto slash = tok.rfind('/');
    text += tok.substr(0, slash) + "\t" + tok.substr(slash + 1) + "\n";
  }
  std::istringstream in(text);
  return ParseTagged(in).sentences.at(0);
}

std::vector<std::string> Phrases(const std::vector<CandidateSimile> &cs) {
  std::vector<std::string> out;
  for (const auto &c : cs) out.push_back(c.phrase);
  return out;
}

const Lexicon &ShippedLexicon() {
  static const Lexicon lex = Lexicon::LoadDir(SIMILE_DATA_DIR);
  return lex;
}

TEST_CASE("adjectival and verbal goldens") {
  auto a = MatchCandidates(Tagged("lep/A kao/C cvet/N"));
  REQUIRE(a.size() == 1);
  CHECK(a[0].left == "lep");
  CHECK(a[0].right == "cvet");
  CHECK(a[0].connector == "kao");
  CHECK(a[0].kind == SimileKind::kAdjectival);
  CHECK(a[0].span_start == 0);
  CHECK(a[0].span_end == 2);

  auto v = MatchCandidates(Tagged("radi/V kao/C pravnik/N"));
  REQUIRE(v.size() == 1);
  CHECK(v[0].phrase == "radi kao pravnik");
  CHECK(v[0].kind == SimileKind::kVerbal);
}

TEST_CASE("prepositional phrase stops the right side") {
  auto c = MatchCandidates(
      Tagged("smoren/A kao/C zmaj/N u/O vatrogasnoj/A stanici/N"));
  REQUIRE(c.size() == 1);
  CHECK(c[0].phrase == "smoren kao zmaj");
  CHECK(c[0].span_end == 2);
}

TEST_CASE("no head, no match") {
  CHECK(MatchCandidates(Tagged("kao/C konj/N")).empty());
  CHECK(MatchCandidates(Tagged("lep/A kao/C crven/A")).empty());
  CHECK(MatchCandidates(Tagged("lepa/A se/P kao/C cvet/N")).empty());
  CHECK(MatchCandidates({}).empty());
}

TEST_CASE("right side takes the longest modifier run") {
  auto c = MatchCandidates(Tagged("brz/A kao/C velika/A crna/A mačka/N"));
  REQUIRE(c.size() == 1);
  CHECK(c[0].right == "velika crna mačka");
  // The run continues through an adjective but ends at its last noun.
  auto d = MatchCandidates(
      Tagged("crven/A kao/C krv/N crven/A kao/C vampir/N"));
  CHECK(Phrases(d) ==
        std::vector<std::string>{"crven kao krv", "crven kao vampir"});
}

TEST_CASE("reflexive verb head") {
  auto c = MatchCandidates(Tagged("crveni/V se/P kao/C rak/N"));
  REQUIRE(c.size() == 1);
  CHECK(c[0].left == "crveni se");
  CHECK(c[0].kind == SimileKind::kVerbal);
  CHECK(MatchCandidates(Tagged("peva/V se/P u/O kući/N")).empty());
}

TEST_CASE("connector variants normalize") {
  CHECK(NormalizeConnector("kao") == "kao");
  CHECK(NormalizeConnector("KO") == "kao");
  CHECK(NormalizeConnector("k'o") == "kao");
  CHECK(NormalizeConnector("K’o") == "kao");
  CHECK_THROWS_AS(NormalizeConnector("kako"), ContractViolation);
  auto c = MatchCandidates(Tagged("Hladan/A k'o/C krastavac/N"));
  REQUIRE(c.size() == 1);
  CHECK(c[0].connector == "kao");
  CHECK(c[0].connector_surface == "k'o");
}

TEST_CASE("hand-tagged fixture") {
  auto text = LoadTagged(std::string(SIMILE_FIXTURE_DIR) + "/extraction_25.tsv");
  REQUIRE(text.sentences.size() == 25);
  CHECK(text.malformed_lines == 0);
  std::vector<std::string> got;
  for (const auto &s : text.sentences) {
    for (const auto &c : MatchCandidates(s)) got.push_back(c.phrase);
  }
  const std::vector<std::string> expected = {
      "lep kao cvet",        "radi kao konj",
      "smoren kao zmaj",     "radi kao pravnik",
      "Hladan k'o krastavac", "crveni se kao oderano goveče",
      "bela kao sneg",       "brz kao veliki crni konj",
      "plače ko kiša",       "gladan kao vuk",
      "ljut kao ris",        "tvrd kao kamen kamen",
      "miran kao ovca",      "crven kao krv",
      "crven kao vampir",    "Slatko KAO med",
      "radi se kao konj",    "jak kao bik",
      "lep kao lutka"};
  CHECK(got == expected);
}

TEST_CASE("matcher agrees with the brute-force span oracle") {
  const std::vector<std::pair<std::string, Tag>> vocab = {
      {"radi", Tag::kVerb},      {"lep", Tag::kAdjective},
      {"konj", Tag::kNoun},      {"kao", Tag::kConnector},
      {"ko", Tag::kConnector},   {"k'o", Tag::kConnector},
      {"se", Tag::kParticle},    {"u", Tag::kOther},
      {"beo", Tag::kAdjective},  {"sneg", Tag::kNoun}};
  Rng rng(5);
  for (int round = 0; round < 20000; ++round) {
    std::vector<std::string> words;
    Lexicon lex;
    int n = static_cast<int>(rng.Below(9));
    for (int k = 0; k < n; ++k) {
      const auto &[w, t] = vocab[rng.Below(vocab.size())];
      words.push_back(w);
      lex.Add(w, t);
    }
    auto sentence = TagTokens(words, lex);
    auto got = MatchCandidates(sentence);
    auto expected = oracle::BruteForceMatches(sentence);
    REQUIRE(got.size() == expected.size());
    for (size_t m = 0; m < got.size(); ++m) {
      REQUIRE(got[m].span_start == expected[m].first);
      REQUIRE(got[m].span_end == expected[m].second);
    }
  }
}

TEST_CASE("matches never overlap and stay within the sentence") {
  auto text = LoadTagged(std::string(SIMILE_FIXTURE_DIR) + "/extraction_25.tsv");
  for (const auto &s : text.sentences) {
    int prev_end = -1;
    for (const auto &c : MatchCandidates(s)) {
      CHECK(c.span_start > prev_end);
      CHECK(c.span_end < static_cast<int>(s.size()));
      CHECK(oracle::IsSimileSpan(s, c.span_start, c.span_end));
      prev_end = c.span_end;
    }
  }
}

TEST_CASE("documents with the shipped lexicon") {
  Document doc;
  doc.url = "http://example.org/a";
  doc.text =
      "Lep kao cvet. Smoren kao zmaj u vatrogasnoj stanici! On radi kao "
      "konj. Lep kao cvet.";
  auto cs = ExtractDocument(doc, ShippedLexicon());
  REQUIRE(cs.size() == 3);
  CHECK(cs[0].phrase == "Lep kao cvet");
  CHECK(cs[0].count == 2);
  CHECK(cs[0].doc_url == doc.url);
  CHECK(cs[1].phrase == "Smoren kao zmaj");
  CHECK(cs[1].sentence_index == 1);
  CHECK(cs[2].phrase == "radi kao konj");
  CHECK(cs[2].kind == SimileKind::kVerbal);
}

TEST_CASE("corpus extraction over a small batch") {
  std::vector<Document> docs;
  const char *texts[] = {
      "Lep kao cvet.",        "Radi kao konj.",  "Nema ničega ovde.",
      "Beo kao sneg.",        "Ради као коњ.",   "",
      "Hladan k'o led.",      "kao konj",        "Lep kao cvet. Lep kao cvet.",
      "Smoren kao zmaj u vatrogasnoj stanici."};
  for (int i = 0; i < 10; ++i) {
    Document d;
    d.url = "http://example.org/" + std::to_string(i);
    d.text = texts[i];
    docs.push_back(d);
  }
  auto r = ExtractCorpus(docs, ShippedLexicon());
  CHECK(r.documents == 10);
  CHECK(r.failed_documents == 0);
  for (const auto &c : r.candidates) {
    CHECK(c.count >= 1);
    CHECK(c.connector == "kao");
  }
  int total = 0;
  for (const auto &c : r.candidates) total += c.count;
  CHECK(total == 8);
}

TEST_CASE("candidate JSON round trip") {
  auto c = MatchCandidates(Tagged("crveni/V se/P kao/C rak/N"))[0];
  c.doc_url = "u";
  c.count = 3;
  CHECK(CandidateFromJson(ToJson(c)) == c);
  CHECK(ToJson(c)["span"] == nlohmann::json::array({0, 3}));
}

}  // namespace
}  // namespace simile
