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

#include <cmath>

#include "simile/classifier.h"

namespace simile {

// Multinomial naive Bayes with additive smoothing:
//
//   P(c)     = n_c / n
//   P(f | c) = (count(f, c) + alpha) / (sum_f' count(f', c) + alpha |V|)
//
// where count(f, c) is the number of occurrences of feature f in examples
// of class c and V is the training vocabulary.
TrainedModel TrainNaiveBayes(const std::vector<LabeledExample> &data,
                             double alpha) {
  if (!(alpha > 0)) throw TrainingError("alpha must be positive");
  std::array<int, 2> docs{0, 0};
  for (const auto &ex : data) ++docs[ex.positive ? 1 : 0];
  if (docs[0] == 0 || docs[1] == 0) {
    throw TrainingError("naive Bayes needs examples of both classes");
  }

  TrainedModel model;
  model.kind = ModelKind::kNaiveBayes;
  std::array<std::vector<double>, 2> counts;
  for (const auto &ex : data) {
    int c = ex.positive ? 1 : 0;
    for (const auto &f : ex.vector.features) {
      auto [it, inserted] = model.feature_index.emplace(
          f, static_cast<int>(model.feature_index.size()));
      if (inserted) {
        counts[0].push_back(0);
        counts[1].push_back(0);
      }
      counts[c][it->second] += 1;
    }
  }

  const double vocab = static_cast<double>(model.feature_index.size());
  const double n = docs[0] + docs[1];
  model.nb.alpha = alpha;
  for (int c = 0; c < 2; ++c) {
    model.nb.log_prior[c] = std::log(docs[c] / n);
    double total = 0;
    for (double k : counts[c]) total += k;
    double denom = std::log(total + alpha * vocab);
    auto &ll = model.nb.log_likelihood[c];
    ll.resize(counts[c].size());
    for (size_t f = 0; f < ll.size(); ++f) {
      ll[f] = std::log(counts[c][f] + alpha) - denom;
    }
  }
  return model;
}

namespace {

std::array<double, 2> NbJoint(const TrainedModel &model,
                              const FeatureVector &v) {
  std::array<double, 2> joint = model.nb.log_prior;
  for (const auto &f : v.features) {
    auto it = model.feature_index.find(f);
    // Out-of-vocabulary features are ignored.
    if (it == model.feature_index.end()) continue;
    joint[0] += model.nb.log_likelihood[0][it->second];
    joint[1] += model.nb.log_likelihood[1][it->second];
  }
  return joint;
}

}  // namespace

std::array<double, 2> NbLogPosteriors(const TrainedModel &model,
                                      const FeatureVector &v) {
  auto joint = NbJoint(model, v);
  double hi = std::max(joint[0], joint[1]);
  double norm = hi + std::log(std::exp(joint[0] - hi) + std::exp(joint[1] - hi));
  return {joint[0] - norm, joint[1] - norm};
}

Prediction Predict(const TrainedModel &model, const FeatureVector &v,
                   double threshold) {
  Prediction p;
  if (model.kind == ModelKind::kNaiveBayes) {
    auto joint = NbJoint(model, v);
    p.score = joint[1] - joint[0];
  } else {
    p.score = SvmDecision(model.svm, model.Vectorize(v));
  }
  p.positive = p.score > threshold;
  return p;
}

}  // namespace simile
