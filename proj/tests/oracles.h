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

// Independent reference computations shared by the unit and acceptance
// tests. Each one is written from the definition, without reusing the
// production code path it checks.

#ifndef SIMILE_TESTS_ORACLES_H_
#define SIMILE_TESTS_ORACLES_H_

#include <cmath>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "simile/classifier.h"
#include "simile/tagger.h"

namespace simile::oracle {

// True iff tokens[i..j] is an instance of the simile pattern.
inline bool IsSimileSpan(const TaggedSentence &s, int i, int j) {
  auto tag = [&](int k) { return s[k].tag; };
  auto is_conn = [&](int k) {
    return tag(k) == Tag::kConnector &&
           (s[k].lower == "kao" || s[k].lower == "ko" || s[k].lower == "k'o");
  };
  const int n = static_cast<int>(s.size());
  if (i < 0 || j >= n || j < i) return false;
  if (tag(i) != Tag::kVerb && tag(i) != Tag::kAdjective) return false;
  std::vector<int> connector_positions = {i + 1};
  if (tag(i) == Tag::kVerb && i + 1 < n && tag(i + 1) == Tag::kParticle) {
    connector_positions = {i + 2};
  }
  for (int c : connector_positions) {
    if (c >= n || c + 1 > j || !is_conn(c)) continue;
    if (tag(j) != Tag::kNoun) continue;
    bool run = true;
    for (int k = c + 1; k < j; ++k) {
      if (tag(k) != Tag::kAdjective && tag(k) != Tag::kNoun) run = false;
    }
    if (run) return true;
  }
  return false;
}

// Every valid span, then reduced: take the smallest start, and for it the
// largest end; continue after that end.
inline std::vector<std::pair<int, int>> BruteForceMatches(
    const TaggedSentence &s) {
  const int n = static_cast<int>(s.size());
  std::set<std::pair<int, int>> all;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      if (IsSimileSpan(s, i, j)) all.insert({i, j});
    }
  }
  std::vector<std::pair<int, int>> out;
  int pos = 0;
  while (true) {
    int best_i = -1, best_j = -1;
    for (auto [i, j] : all) {
      if (i < pos) continue;
      if (best_i < 0 || i < best_i || (i == best_i && j > best_j)) {
        best_i = i;
        best_j = j;
      }
    }
    if (best_i < 0) break;
    out.push_back({best_i, best_j});
    pos = best_j + 1;
  }
  return out;
}

// P(positive | query) for multinomial naive Bayes, computed in linear
// space as a product of counted ratios. Features outside the training
// vocabulary contribute nothing.
inline double NaiveBayesPosterior(const std::vector<LabeledExample> &data,
                                  double alpha,
                                  const std::vector<std::string> &query) {
  std::set<std::string> vocab;
  for (const auto &ex : data) {
    vocab.insert(ex.vector.features.begin(), ex.vector.features.end());
  }
  double joint[2];
  for (int c = 0; c < 2; ++c) {
    double docs = 0, tokens = 0;
    for (const auto &ex : data) {
      if (ex.positive != (c == 1)) continue;
      docs += 1;
      tokens += static_cast<double>(ex.vector.features.size());
    }
    double p = docs / static_cast<double>(data.size());
    for (const auto &f : query) {
      if (!vocab.count(f)) continue;
      double count = 0;
      for (const auto &ex : data) {
        if (ex.positive != (c == 1)) continue;
        for (const auto &g : ex.vector.features) count += (g == f);
      }
      p *= (count + alpha) / (tokens + alpha * static_cast<double>(vocab.size()));
    }
    joint[c] = p;
  }
  return joint[1] / (joint[0] + joint[1]);
}

struct PrfOracle {
  double precision, recall, f;
};

// Precision, recall and F1 straight from the definitions, with 0 for any
// empty denominator.
inline PrfOracle Prf(int tp, int fp, int fn) {
  PrfOracle o{0, 0, 0};
  if (tp + fp) o.precision = tp / double(tp + fp);
  if (tp + fn) o.recall = tp / double(tp + fn);
  // Harmonic mean written as 2tp / (2tp + fp + fn).
  if (tp) o.f = 2.0 * tp / (2.0 * tp + fp + fn);
  return o;
}

}  // namespace simile::oracle

#endif  // SIMILE_TESTS_ORACLES_H_
