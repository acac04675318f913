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

#include <algorithm>
#include <cmath>

#include "simile/classifier.h"
#include "simile/random.h"

namespace simile {

double Dot(const SparseVector &a, const SparseVector &b) {
  double sum = 0;
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first == b[j].first) {
      sum += a[i].second * b[j].second;
      ++i;
      ++j;
    } else if (a[i].first < b[j].first) {
      ++i;
    } else {
      ++j;
    }
  }
  return sum;
}

double KernelSpec::operator()(const SparseVector &a,
                              const SparseVector &b) const {
  double d = Dot(a, b);
  if (kind == KernelKind::kLinear) return d;
  return std::pow(d + 1.0, degree);
}

namespace {

// Multipliers this close to a bound are treated as being on it.
constexpr double kBoundEps = 1e-12;
// Minimum change of a multiplier for a step to count.
constexpr double kStepEps = 1e-10;

class SmoSolver {
 public:
  SmoSolver(const std::vector<SparseVector> &x, const std::vector<int> &y,
            const SvmOptions &opt)
      : x_(x), y_(y), opt_(opt), n_(x.size()), rng_(opt.seed) {
    if (n_ <= kMaxCachedRows) {
      gram_.resize(n_ * n_);
      for (size_t i = 0; i < n_; ++i) {
        for (size_t j = i; j < n_; ++j) {
          double k = opt_.kernel(x_[i], x_[j]);
          gram_[i * n_ + j] = k;
          gram_[j * n_ + i] = k;
        }
      }
    }
    alpha_.assign(n_, 0.0);
    f_.assign(n_, 0.0);
  }

  SvmSolution Solve() {
    SvmSolution sol;
    int changed = 0;
    bool examine_all = true;
    int passes = 0;
    while ((changed > 0 || examine_all) && passes < opt_.max_passes) {
      ++passes;
      changed = 0;
      for (size_t i = 0; i < n_; ++i) {
        if (examine_all || IsFree(i)) changed += Examine(i);
      }
      if (examine_all) {
        examine_all = false;
      } else if (changed == 0) {
        examine_all = true;
      }
    }
    bool finished = !(changed > 0 || examine_all);

    sol.alpha = alpha_;
    sol.bias = bias_;
    sol.kkt_residual =
        KktResidual(x_, y_, alpha_, bias_, opt_.kernel, opt_.c);
    // The incremental bias can sit slightly off when few multipliers are
    // free; refit it and keep whichever is better.
    if (sol.kkt_residual > opt_.tol) {
      for (double refit : BiasCandidates()) {
        double r = KktResidual(x_, y_, alpha_, refit, opt_.kernel, opt_.c);
        if (r < sol.kkt_residual) {
          sol.bias = refit;
          sol.kkt_residual = r;
        }
      }
    }
    sol.iterations = passes;
    sol.converged = finished && sol.kkt_residual <= opt_.tol;
    return sol;
  }

 private:
  static constexpr size_t kMaxCachedRows = 4096;

  double K(size_t i, size_t j) const {
    if (!gram_.empty()) return gram_[i * n_ + j];
    return opt_.kernel(x_[i], x_[j]);
  }

  bool IsFree(size_t i) const {
    return alpha_[i] > kBoundEps && alpha_[i] < opt_.c - kBoundEps;
  }

  double Error(size_t i) const { return f_[i] - y_[i]; }

  // Mean over free multipliers of the bias each one implies, and the
  // midpoint of the interval the bounded multipliers allow.
  std::vector<double> BiasCandidates() const {
    std::vector<double> out;
    double sum = 0;
    int count = 0;
    double lower = -HUGE_VAL, upper = HUGE_VAL;
    for (size_t i = 0; i < n_; ++i) {
      double implied = y_[i] - (f_[i] - bias_);
      if (IsFree(i)) {
        sum += implied;
        ++count;
      } else if ((alpha_[i] <= kBoundEps) == (y_[i] > 0)) {
        lower = std::max(lower, implied);
      } else {
        upper = std::min(upper, implied);
      }
    }
    if (count > 0) out.push_back(sum / count);
    if (std::isfinite(lower) && std::isfinite(upper)) {
      out.push_back(0.5 * (lower + upper));
    } else if (std::isfinite(lower)) {
      out.push_back(lower);
    } else if (std::isfinite(upper)) {
      out.push_back(upper);
    }
    return out;
  }

  int Examine(size_t i2) {
    const double y2 = y_[i2];
    const double a2 = alpha_[i2];
    const double e2 = Error(i2);
    const double r2 = e2 * y2;
    if (!((r2 < -opt_.tol && a2 < opt_.c - kBoundEps) ||
          (r2 > opt_.tol && a2 > kBoundEps))) {
      return 0;
    }

    std::vector<size_t> free;
    for (size_t i = 0; i < n_; ++i) {
      if (IsFree(i)) free.push_back(i);
    }
    if (free.size() > 1) {
      size_t best = free[0];
      double best_gap = -1;
      for (size_t i : free) {
        double gap = std::abs(Error(i) - e2);
        if (gap > best_gap) {
          best_gap = gap;
          best = i;
        }
      }
      if (TakeStep(best, i2)) return 1;
    }
    if (!free.empty()) {
      size_t start = rng_.Below(free.size());
      for (size_t k = 0; k < free.size(); ++k) {
        if (TakeStep(free[(start + k) % free.size()], i2)) return 1;
      }
    }
    size_t start = rng_.Below(n_);
    for (size_t k = 0; k < n_; ++k) {
      if (TakeStep((start + k) % n_, i2)) return 1;
    }
    return 0;
  }

  bool TakeStep(size_t i1, size_t i2) {
    if (i1 == i2) return false;
    const double c = opt_.c;
    const double a1 = alpha_[i1], a2 = alpha_[i2];
    const double y1 = y_[i1], y2 = y_[i2];
    const double e1 = Error(i1), e2 = Error(i2);
    const double s = y1 * y2;

    double lo, hi;
    if (y1 != y2) {
      lo = std::max(0.0, a2 - a1);
      hi = std::min(c, c + a2 - a1);
    } else {
      lo = std::max(0.0, a1 + a2 - c);
      hi = std::min(c, a1 + a2);
    }
    if (hi - lo < kBoundEps) return false;

    const double k11 = K(i1, i1), k12 = K(i1, i2), k22 = K(i2, i2);
    const double eta = k11 + k22 - 2 * k12;
    double new_a2;
    if (eta > 1e-12) {
      new_a2 = std::clamp(a2 + y2 * (e1 - e2) / eta, lo, hi);
    } else {
      // Objective at both ends of the segment (dual written as a
      // minimization, outputs f(x) = sum_j alpha_j y_j K(x_j, x) + b).
      double f1 = y1 * (e1 - bias_) - a1 * k11 - s * a2 * k12;
      double f2 = y2 * (e2 - bias_) - s * a1 * k12 - a2 * k22;
      double l1 = a1 + s * (a2 - lo);
      double h1 = a1 + s * (a2 - hi);
      double lobj = l1 * f1 + lo * f2 + 0.5 * l1 * l1 * k11 +
                    0.5 * lo * lo * k22 + s * lo * l1 * k12;
      double hobj = h1 * f1 + hi * f2 + 0.5 * h1 * h1 * k11 +
                    0.5 * hi * hi * k22 + s * hi * h1 * k12;
      if (lobj < hobj - kStepEps) {
        new_a2 = lo;
      } else if (lobj > hobj + kStepEps) {
        new_a2 = hi;
      } else {
        new_a2 = a2;
      }
    }
    if (new_a2 < kBoundEps) new_a2 = 0;
    if (new_a2 > c - kBoundEps) new_a2 = c;
    if (std::abs(new_a2 - a2) < kStepEps * (new_a2 + a2 + kStepEps)) {
      return false;
    }
    double new_a1 = a1 + s * (a2 - new_a2);
    if (new_a1 < kBoundEps) new_a1 = 0;
    if (new_a1 > c - kBoundEps) new_a1 = c;

    const double d1 = y1 * (new_a1 - a1);
    const double d2 = y2 * (new_a2 - a2);
    const double b1 = bias_ - e1 - d1 * k11 - d2 * k12;
    const double b2 = bias_ - e2 - d1 * k12 - d2 * k22;
    double new_bias;
    if (new_a1 > kBoundEps && new_a1 < c - kBoundEps) {
      new_bias = b1;
    } else if (new_a2 > kBoundEps && new_a2 < c - kBoundEps) {
      new_bias = b2;
    } else {
      new_bias = 0.5 * (b1 + b2);
    }

    const double db = new_bias - bias_;
    for (size_t i = 0; i < n_; ++i) {
      f_[i] += d1 * K(i, i1) + d2 * K(i, i2) + db;
    }
    alpha_[i1] = new_a1;
    alpha_[i2] = new_a2;
    bias_ = new_bias;
    return true;
  }

  const std::vector<SparseVector> &x_;
  const std::vector<int> &y_;
  const SvmOptions &opt_;
  const size_t n_;
  Rng rng_;
  std::vector<double> gram_;
  std::vector<double> alpha_;
  // Cached outputs f(x_i), including the bias.
  std::vector<double> f_;
  double bias_ = 0.0;
};

}  // namespace

double KktResidual(const std::vector<SparseVector> &x, const std::vector<int> &y,
                   const std::vector<double> &alpha, double bias,
                   const KernelSpec &kernel, double c) {
  double worst = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    double f = bias;
    for (size_t j = 0; j < x.size(); ++j) {
      if (alpha[j] != 0) f += alpha[j] * y[j] * kernel(x[j], x[i]);
    }
    double r = y[i] * f - 1.0;
    double violation;
    if (alpha[i] <= kBoundEps) {
      violation = std::max(0.0, -r);
    } else if (alpha[i] >= c - kBoundEps) {
      violation = std::max(0.0, r);
    } else {
      violation = std::abs(r);
    }
    worst = std::max(worst, violation);
  }
  return worst;
}

SvmSolution SolveSvmDual(const std::vector<SparseVector> &x,
                         const std::vector<int> &y, const SvmOptions &options) {
  if (x.size() != y.size()) throw TrainingError("vector/label size mismatch");
  bool has_pos = false, has_neg = false;
  for (int label : y) {
    if (label == 1) {
      has_pos = true;
    } else if (label == -1) {
      has_neg = true;
    } else {
      throw TrainingError("SVM labels must be +1 or -1");
    }
  }
  if (!has_pos || !has_neg) {
    throw TrainingError("SVM needs examples of both classes");
  }
  if (!(options.c > 0) || !(options.tol > 0)) {
    throw TrainingError("C and tol must be positive");
  }
  if (options.kernel.kind == KernelKind::kPolynomial &&
      options.kernel.degree < 1) {
    throw TrainingError("polynomial degree must be at least 1");
  }
  SmoSolver solver(x, y, options);
  return solver.Solve();
}

double SvmDecision(const SvmParams &svm, const SparseVector &x) {
  double f = svm.bias;
  for (size_t i = 0; i < svm.support_vectors.size(); ++i) {
    f += svm.coefficients[i] * svm.kernel(svm.support_vectors[i], x);
  }
  return f;
}

TrainedModel TrainSvmOnVectors(const std::vector<SparseVector> &x,
                               const std::vector<int> &y,
                               const SvmOptions &options) {
  SvmSolution sol = SolveSvmDual(x, y, options);
  if (!sol.converged) {
    double residual = sol.kkt_residual;
    int iterations = sol.iterations;
    throw SvmConvergenceError(
        "SMO did not converge: KKT residual " + std::to_string(residual) +
            " after " + std::to_string(iterations) + " passes",
        std::move(sol));
  }
  TrainedModel model;
  model.kind = ModelKind::kSvm;
  model.svm.kernel = options.kernel;
  model.svm.c = options.c;
  model.svm.tol = options.tol;
  model.svm.bias = sol.bias;
  model.svm.kkt_residual = sol.kkt_residual;
  model.svm.iterations = sol.iterations;
  for (size_t i = 0; i < x.size(); ++i) {
    if (sol.alpha[i] <= 0) continue;
    model.svm.support_vectors.push_back(x[i]);
    model.svm.coefficients.push_back(sol.alpha[i] * y[i]);
  }
  return model;
}

TrainedModel TrainSvm(const std::vector<LabeledExample> &data,
                      const SvmOptions &options) {
  std::unordered_map<std::string, int> index;
  for (const auto &ex : data) {
    for (const auto &f : ex.vector.features) {
      index.emplace(f, static_cast<int>(index.size()));
    }
  }
  TrainedModel shell;
  shell.feature_index = std::move(index);
  std::vector<SparseVector> x;
  std::vector<int> y;
  x.reserve(data.size());
  for (const auto &ex : data) {
    x.push_back(shell.Vectorize(ex.vector));
    y.push_back(ex.positive ? 1 : -1);
  }
  TrainedModel model = TrainSvmOnVectors(x, y, options);
  model.feature_index = std::move(shell.feature_index);
  return model;
}

}  // namespace simile
