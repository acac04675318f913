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

#ifndef SIMILE_FEATURES_H_
#define SIMILE_FEATURES_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "simile/extractor.h"
#include "simile/stemmer.h"

namespace simile {

// Six namespaced string features per candidate, in this order:
// full, full_stem, left, left_stem, right, right_stem.
struct FeatureVector {
  std::vector<std::string> features;

  bool operator==(const FeatureVector &) const = default;
};

// Candidate text is case-folded before the features are built; stems come
// from `rules`.
FeatureVector Featurize(const CandidateSimile &c, const StemRuleSet &rules);

struct LabeledExample {
  FeatureVector vector;
  bool positive = false;
};

struct LabeledCandidate {
  CandidateSimile candidate;
  bool positive = false;
};

// Builds a candidate from its three parts. Kind is left adjectival since
// the labeled format carries no tags.
CandidateSimile MakeCandidate(const std::string &left,
                              const std::string &connector_surface,
                              const std::string &right);

// `label<TAB>left<TAB>connector_surface<TAB>right` lines, label in {1, 0}.
// Blank lines and '#' comments are skipped; anything else malformed throws
// ParseError naming the line.
std::vector<LabeledCandidate> ParseLabeled(std::istream &in);
std::vector<LabeledCandidate> LoadLabeled(const std::filesystem::path &path);
void WriteLabeled(const std::vector<LabeledCandidate> &data, std::ostream &out);

std::vector<LabeledExample> FeaturizeAll(
    const std::vector<LabeledCandidate> &data, const StemRuleSet &rules);

// Balanced synthetic data: positives take their right side from a pool of
// comparison noun phrases, negatives from a pool of profession and role
// noun phrases, and both share one pool of left sides. Exactly
// round(noise * n) labels are then flipped. Deterministic for a given seed.
std::vector<LabeledCandidate> GenerateSynthetic(int positives, int negatives,
                                                double noise, uint64_t seed);

}  // namespace simile

#endif  // SIMILE_FEATURES_H_
