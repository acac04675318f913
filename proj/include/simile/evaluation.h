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

#ifndef SIMILE_EVALUATION_H_
#define SIMILE_EVALUATION_H_

#include <cstdint>
#include <string>
#include <vector>

#include "simile/classifier.h"

namespace simile {

struct Confusion {
  int tp = 0, fp = 0, fn = 0, tn = 0;

  Confusion &operator+=(const Confusion &o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    tn += o.tn;
    return *this;
  }
  bool operator==(const Confusion &) const = default;
};

// Positive is the target class. Each ratio is 0 when its denominator is 0.
struct Metrics {
  double precision = 0;
  double recall = 0;
  double f_measure = 0;
  Confusion confusion;
};

Metrics ComputeMetrics(const Confusion &c);

// Throws ContractViolation on an empty test set.
Metrics Evaluate(const TrainedModel &model,
                 const std::vector<LabeledExample> &test,
                 double threshold = 0.0);

struct TrainerSpec {
  ModelKind kind = ModelKind::kNaiveBayes;
  double alpha = 1.0;
  SvmOptions svm;
};

TrainedModel Train(const std::vector<LabeledExample> &data,
                   const TrainerSpec &spec);

struct CrossValidationReport {
  // Mean precision, recall and F over folds; `confusion` is the sum.
  Metrics mean;
  std::vector<Metrics> folds;
  // fold_of[i] is the fold holding example i.
  std::vector<int> fold_of;
  bool stratified = true;
  std::vector<std::string> warnings;
};

// Stratified k-fold with a seeded shuffle. Falls back to a plain shuffle
// (with a warning) when a class has fewer than k members. Throws
// ContractViolation unless 2 <= k <= |data|.
CrossValidationReport CrossValidate(const std::vector<LabeledExample> &data,
                                    int k, const TrainerSpec &spec,
                                    uint64_t seed);

// Deterministic fold assignment used by CrossValidate.
std::vector<int> AssignFolds(const std::vector<LabeledExample> &data, int k,
                             uint64_t seed, bool *stratified);

// Fixed-precision text report; identical input gives identical bytes.
std::string FormatReport(const CrossValidationReport &report);
std::string FormatMetrics(const Metrics &m);

}  // namespace simile

#endif  // SIMILE_EVALUATION_H_
