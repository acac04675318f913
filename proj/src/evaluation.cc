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

#include "simile/evaluation.h"

#include <cstdio>

#include "simile/random.h"

namespace simile {

Metrics ComputeMetrics(const Confusion &c) {
  Metrics m;
  m.confusion = c;
  if (c.tp + c.fp > 0) m.precision = static_cast<double>(c.tp) / (c.tp + c.fp);
  if (c.tp + c.fn > 0) m.recall = static_cast<double>(c.tp) / (c.tp + c.fn);
  if (m.precision + m.recall > 0) {
    m.f_measure = 2 * m.precision * m.recall / (m.precision + m.recall);
  }
  return m;
}

Metrics Evaluate(const TrainedModel &model,
                 const std::vector<LabeledExample> &test, double threshold) {
  if (test.empty()) throw ContractViolation("empty test set");
  Confusion c;
  for (const auto &ex : test) {
    bool predicted = Predict(model, ex.vector, threshold).positive;
    if (predicted && ex.positive) ++c.tp;
    if (predicted && !ex.positive) ++c.fp;
    if (!predicted && ex.positive) ++c.fn;
    if (!predicted && !ex.positive) ++c.tn;
  }
  return ComputeMetrics(c);
}

TrainedModel Train(const std::vector<LabeledExample> &data,
                   const TrainerSpec &spec) {
  if (spec.kind == ModelKind::kNaiveBayes) {
    return TrainNaiveBayes(data, spec.alpha);
  }
  return TrainSvm(data, spec.svm);
}

std::vector<int> AssignFolds(const std::vector<LabeledExample> &data, int k,
                             uint64_t seed, bool *stratified) {
  Rng rng(seed);
  std::vector<size_t> pos, neg;
  for (size_t i = 0; i < data.size(); ++i) {
    (data[i].positive ? pos : neg).push_back(i);
  }
  std::vector<int> fold_of(data.size(), 0);
  bool strat = static_cast<int>(pos.size()) >= k &&
               static_cast<int>(neg.size()) >= k;
  if (strat) {
    rng.Shuffle(pos);
    rng.Shuffle(neg);
    // Deal positives then negatives round-robin, continuing the rotation
    // so fold sizes differ by at most one.
    size_t slot = 0;
    for (size_t i : pos) fold_of[i] = static_cast<int>(slot++ % k);
    for (size_t i : neg) fold_of[i] = static_cast<int>(slot++ % k);
  } else {
    std::vector<size_t> all(data.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = i;
    rng.Shuffle(all);
    for (size_t s = 0; s < all.size(); ++s) {
      fold_of[all[s]] = static_cast<int>(s % k);
    }
  }
  if (stratified) *stratified = strat;
  return fold_of;
}

CrossValidationReport CrossValidate(const std::vector<LabeledExample> &data,
                                    int k, const TrainerSpec &spec,
                                    uint64_t seed) {
  if (k < 2) throw ContractViolation("need at least 2 folds");
  if (static_cast<int>(data.size()) < k) {
    throw ContractViolation("fewer examples than folds");
  }
  CrossValidationReport report;
  report.fold_of = AssignFolds(data, k, seed, &report.stratified);
  if (!report.stratified) {
    report.warnings.push_back(
        "a class has fewer than " + std::to_string(k) +
        " examples; folds are not stratified");
  }
  Confusion total;
  for (int fold = 0; fold < k; ++fold) {
    std::vector<LabeledExample> train, test;
    for (size_t i = 0; i < data.size(); ++i) {
      (report.fold_of[i] == fold ? test : train).push_back(data[i]);
    }
    TrainedModel model = Train(train, spec);
    Metrics m = Evaluate(model, test);
    report.mean.precision += m.precision / k;
    report.mean.recall += m.recall / k;
    report.mean.f_measure += m.f_measure / k;
    total += m.confusion;
    report.folds.push_back(m);
  }
  report.mean.confusion = total;
  return report;
}

std::string FormatMetrics(const Metrics &m) {
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "P=%.4f R=%.4f F=%.4f (tp=%d fp=%d fn=%d tn=%d)", m.precision,
                m.recall, m.f_measure, m.confusion.tp, m.confusion.fp,
                m.confusion.fn, m.confusion.tn);
  return buf;
}

std::string FormatReport(const CrossValidationReport &report) {
  std::string out;
  for (const auto &w : report.warnings) out += "warning: " + w + "\n";
  for (size_t i = 0; i < report.folds.size(); ++i) {
    out += "fold " + std::to_string(i + 1) + ": " +
           FormatMetrics(report.folds[i]) + "\n";
  }
  out += "mean: " + FormatMetrics(report.mean) + "\n";
  return out;
}

}  // namespace simile
