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

#include "simile/features.h"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "simile/errors.h"
#include "simile/random.h"
#include "simile/text.h"

namespace simile {

FeatureVector Featurize(const CandidateSimile &c, const StemRuleSet &rules) {
  std::string left = FoldCase(c.left);
  std::string right = FoldCase(c.right);
  std::string full = left + " " + FoldCase(c.connector_surface) + " " + right;
  FeatureVector v;
  v.features = {
      "full:" + full,
      "full_stem:" + StemPhrase(full, rules),
      "left:" + left,
      "left_stem:" + StemPhrase(left, rules),
      "right:" + right,
      "right_stem:" + StemPhrase(right, rules),
  };
  return v;
}

CandidateSimile MakeCandidate(const std::string &left,
                              const std::string &connector_surface,
                              const std::string &right) {
  CandidateSimile c;
  c.left = left;
  c.connector = NormalizeConnector(connector_surface);
  c.connector_surface = connector_surface;
  c.right = right;
  c.phrase = left + " " + connector_surface + " " + right;
  return c;
}

std::vector<LabeledCandidate> ParseLabeled(std::istream &in) {
  std::vector<LabeledCandidate> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    size_t start = 0;
    while (true) {
      size_t tab = line.find('\t', start);
      fields.emplace_back(Trim(std::string_view(line).substr(start, tab - start)));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    auto fail = [&](const std::string &why) {
      throw ParseError("labeled data line " + std::to_string(line_no) + ": " +
                       why);
    };
    if (fields.size() != 4) fail("expected 4 tab-separated fields");
    if (fields[0] != "1" && fields[0] != "0") fail("label must be 1 or 0");
    if (fields[1].empty() || fields[3].empty()) fail("empty left or right");
    if (!IsConnectorForm(FoldCase(fields[2]))) fail("bad connector");
    out.push_back({MakeCandidate(fields[1], fields[2], fields[3]),
                   fields[0] == "1"});
  }
  return out;
}

std::vector<LabeledCandidate> LoadLabeled(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read labeled data " + path.string());
  return ParseLabeled(in);
}

void WriteLabeled(const std::vector<LabeledCandidate> &data,
                  std::ostream &out) {
  for (const auto &ex : data) {
    out << (ex.positive ? '1' : '0') << '\t' << ex.candidate.left << '\t'
        << ex.candidate.connector_surface << '\t' << ex.candidate.right
        << '\n';
  }
}

std::vector<LabeledExample> FeaturizeAll(
    const std::vector<LabeledCandidate> &data, const StemRuleSet &rules) {
  std::vector<LabeledExample> out;
  out.reserve(data.size());
  for (const auto &ex : data) {
    out.push_back({Featurize(ex.candidate, rules), ex.positive});
  }
  return out;
}

std::vector<LabeledCandidate> GenerateSynthetic(int positives, int negatives,
                                                double noise, uint64_t seed) {
  static const std::vector<std::string> kLeft = {
      "lep",   "brz",    "radi",  "crven",  "miran", "ljut",  "tvrd",
      "spava", "jede",   "trči",  "vredan", "hladan", "gladan", "beo",
      "pliva", "peva",   "jak",   "crn",    "tih",    "pametan"};
  // Right sides are drawn per class; multi-word entries are whole NPs.
  static const std::vector<std::string> kComparisonNouns = {
      "konj",   "vuk",  "sneg",   "cvet",     "med",   "kamen", "zec",
      "ris",    "ovca", "pero",   "krv",      "mrav",  "lav",   "pas",
      "mačka",  "zmaj", "led",    "krastavac", "riba", "vatra", "bik",
      "medved", "puž",  "slavuj", "bubreg",   "pokisli miš", "bela ovca",
      "gladan vuk", "crna zemlja", "rak rana"};
  static const std::vector<std::string> kRoleNouns = {
      "pravnik", "lekar",     "učitelj", "profesor", "inženjer",
      "konobar", "vozač",     "sudija",  "direktor", "student",
      "novinar", "prevodilac", "glumac", "trener",   "pisac",
      "kuvar",   "zidar",     "čuvar",   "radnik",   "menadžer",
      "stručnjak", "savetnik", "volonter", "tehničar", "službenik",
      "glavni kuvar", "mladi lekar", "stari profesor", "dobar vozač",
      "pravi stručnjak"};
  Rng rng(seed);
  auto pick = [&](const std::vector<std::string> &pool) -> const std::string & {
    return pool[rng.Below(pool.size())];
  };
  auto connector = [&]() -> std::string {
    double u = rng.Uniform();
    if (u < 0.8) return "kao";
    return u < 0.9 ? "k'o" : "ko";
  };
  auto make = [&](bool positive) {
    std::string right = pick(positive ? kComparisonNouns : kRoleNouns);
    std::string left = pick(kLeft);
    return LabeledCandidate{MakeCandidate(left, connector(), right), positive};
  };

  std::vector<LabeledCandidate> out;
  out.reserve(positives + negatives);
  for (int i = 0; i < positives; ++i) out.push_back(make(true));
  for (int i = 0; i < negatives; ++i) out.push_back(make(false));

  std::vector<size_t> order(out.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.Shuffle(order);
  auto flips = static_cast<size_t>(std::lround(noise * out.size()));
  for (size_t i = 0; i < flips && i < order.size(); ++i) {
    out[order[i]].positive = !out[order[i]].positive;
  }
  return out;
}

}  // namespace simile
