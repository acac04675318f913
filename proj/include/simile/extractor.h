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

// Candidate simile extraction over POS-tagged sentences.
//
// The pattern is
//
//   (V | A | V se) (kao | ko | k'o) (A|N)* N
//
// matched leftmost first. The right side takes the longest run of A/N
// tokens after the connector and ends at the last N of that run, so a
// preposition or any other tag stops it ("smoren kao zmaj u vatrogasnoj
// stanici" yields "smoren kao zmaj"). Matching resumes after the last
// token of a match, so matches never overlap.

#ifndef SIMILE_EXTRACTOR_H_
#define SIMILE_EXTRACTOR_H_

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "simile/document.h"
#include "simile/tagger.h"

namespace simile {

enum class SimileKind { kAdjectival, kVerbal };

const char *KindName(SimileKind kind);
SimileKind ParseKind(std::string_view s);

struct CandidateSimile {
  std::string left;
  std::string connector = "kao";
  std::string connector_surface;
  std::string right;
  std::string phrase;
  SimileKind kind = SimileKind::kAdjectival;
  std::string doc_url;
  int sentence_index = 0;
  // Inclusive token positions within the sentence.
  int span_start = 0;
  int span_end = 0;
  // Occurrences of this exact phrase within the source document.
  int count = 1;

  bool operator==(const CandidateSimile &) const = default;
};

// Maps "kao", "ko", "k'o" (any case) to "kao"; throws ContractViolation
// for anything else.
std::string NormalizeConnector(std::string_view surface);

std::vector<CandidateSimile> MatchCandidates(const TaggedSentence &sentence);

// Tokenizes, tags and matches one document. Exact duplicate phrases are
// reported once, with `count` set to the number of occurrences.
std::vector<CandidateSimile> ExtractDocument(const Document &doc,
                                             const Lexicon &lexicon,
                                             const AnalyzeOptions &options = {});

struct ExtractResult {
  std::vector<CandidateSimile> candidates;
  int documents = 0;
  int failed_documents = 0;
};

ExtractResult ExtractCorpus(const std::vector<Document> &docs,
                            const Lexicon &lexicon,
                            const AnalyzeOptions &options = {});

nlohmann::json ToJson(const CandidateSimile &c);
CandidateSimile CandidateFromJson(const nlohmann::json &j);

}  // namespace simile

#endif  // SIMILE_EXTRACTOR_H_
