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

// Binary simile classifiers: multinomial naive Bayes and a soft-margin SVM
// trained with sequential minimal optimization.

#ifndef SIMILE_CLASSIFIER_H_
#define SIMILE_CLASSIFIER_H_

#include <array>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "simile/errors.h"
#include "simile/features.h"

namespace simile {

enum class ModelKind { kNaiveBayes, kSvm };
enum class KernelKind { kLinear, kPolynomial };

const char *ModelKindName(ModelKind kind);
const char *KernelKindName(KernelKind kind);
KernelKind ParseKernelKind(std::string_view s);

// Sorted by index, no duplicate indices.
using SparseVector = std::vector<std::pair<int, double>>;

double Dot(const SparseVector &a, const SparseVector &b);

struct KernelSpec {
  KernelKind kind = KernelKind::kPolynomial;
  int degree = 2;

  // x.y for linear, (x.y + 1)^degree for polynomial.
  double operator()(const SparseVector &a, const SparseVector &b) const;
};

// Class index 0 is negative, 1 is positive.
struct NaiveBayesParams {
  double alpha = 1.0;
  std::array<double, 2> log_prior{};
  // log_likelihood[c][feature id]
  std::array<std::vector<double>, 2> log_likelihood;
};

struct SvmParams {
  KernelSpec kernel;
  double c = 1.0;
  double tol = 1e-3;
  double bias = 0.0;
  // Support vectors and their coefficients alpha_i * y_i.
  std::vector<SparseVector> support_vectors;
  std::vector<double> coefficients;
  // Largest KKT violation over the training set when training stopped.
  double kkt_residual = 0.0;
  int iterations = 0;
};

struct TrainedModel {
  ModelKind kind = ModelKind::kNaiveBayes;
  // Feature string -> dimension. For naive Bayes this is the vocabulary.
  std::unordered_map<std::string, int> feature_index;
  NaiveBayesParams nb;
  SvmParams svm;

  // Feature strings ordered by id.
  std::vector<std::string> FeaturesById() const;
  // Binary presence vector over known features; unknown ones are dropped.
  SparseVector Vectorize(const FeatureVector &v) const;
};

struct Prediction {
  bool positive = false;
  // Naive Bayes: log P(pos|x) - log P(neg|x). SVM: decision value.
  double score = 0.0;
};

// Positive iff score > threshold, so ties go to negative.
Prediction Predict(const TrainedModel &model, const FeatureVector &v,
                   double threshold = 0.0);

// Normalized log-posteriors {log P(neg|x), log P(pos|x)}; naive Bayes only.
std::array<double, 2> NbLogPosteriors(const TrainedModel &model,
                                      const FeatureVector &v);

class TrainingError : public Error {
 public:
  using Error::Error;
};

// Throws TrainingError unless both classes are present and alpha > 0.
TrainedModel TrainNaiveBayes(const std::vector<LabeledExample> &data,
                             double alpha);

struct SvmOptions {
  double c = 1.0;
  KernelSpec kernel;
  double tol = 1e-3;
  int max_passes = 10000;
  uint64_t seed = 0;
};

struct SvmSolution {
  std::vector<double> alpha;
  double bias = 0.0;
  double kkt_residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Soft-margin dual solved with Platt's SMO (second-choice heuristic with
// seeded random fallbacks). Labels are +1 / -1. Does not throw on
// non-convergence; check `converged`.
SvmSolution SolveSvmDual(const std::vector<SparseVector> &x,
                         const std::vector<int> &y, const SvmOptions &options);

// Largest KKT violation of a dual solution.
double KktResidual(const std::vector<SparseVector> &x, const std::vector<int> &y,
                   const std::vector<double> &alpha, double bias,
                   const KernelSpec &kernel, double c);

class SvmConvergenceError : public TrainingError {
 public:
  SvmConvergenceError(const std::string &what, SvmSolution best)
      : TrainingError(what), best_(std::move(best)) {}
  const SvmSolution &best() const { return best_; }

 private:
  SvmSolution best_;
};

// Throws TrainingError on single-class data, SvmConvergenceError if the
// KKT conditions are not met within tol after max_passes.
TrainedModel TrainSvm(const std::vector<LabeledExample> &data,
                      const SvmOptions &options);
// Same, over caller-supplied vectors; the model has an empty feature index.
TrainedModel TrainSvmOnVectors(const std::vector<SparseVector> &x,
                               const std::vector<int> &y,
                               const SvmOptions &options);
double SvmDecision(const SvmParams &svm, const SparseVector &x);

// Self-describing JSON text container with a format tag and version.
std::string SerializeModel(const TrainedModel &model);
TrainedModel DeserializeModel(const std::string &text);
void SaveModel(const TrainedModel &model, const std::filesystem::path &path);
TrainedModel LoadModel(const std::filesystem::path &path);

}  // namespace simile

#endif  // SIMILE_CLASSIFIER_H_
