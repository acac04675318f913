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
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "simile/classifier.h"
#include "simile/files.h"

namespace simile {

namespace {

constexpr const char *kFormat = "simile-model";
constexpr int kVersion = 1;

using nlohmann::json;

json SparseToJson(const SparseVector &v) {
  json out = json::array();
  for (const auto &[i, x] : v) out.push_back({i, x});
  return out;
}

SparseVector SparseFromJson(const json &j) {
  SparseVector v;
  for (const auto &e : j) v.emplace_back(e.at(0).get<int>(), e.at(1).get<double>());
  return v;
}

}  // namespace

const char *ModelKindName(ModelKind kind) {
  return kind == ModelKind::kSvm ? "svm" : "nb";
}

const char *KernelKindName(KernelKind kind) {
  return kind == KernelKind::kLinear ? "linear" : "polynomial";
}

KernelKind ParseKernelKind(std::string_view s) {
  if (s == "linear") return KernelKind::kLinear;
  if (s == "polynomial" || s == "poly") return KernelKind::kPolynomial;
  throw ParseError("unknown kernel: " + std::string(s));
}

std::vector<std::string> TrainedModel::FeaturesById() const {
  std::vector<std::string> out(feature_index.size());
  for (const auto &[f, id] : feature_index) out.at(id) = f;
  return out;
}

SparseVector TrainedModel::Vectorize(const FeatureVector &v) const {
  SparseVector out;
  for (const auto &f : v.features) {
    auto it = feature_index.find(f);
    if (it != feature_index.end()) out.emplace_back(it->second, 1.0);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](const auto &a, const auto &b) {
                          return a.first == b.first;
                        }),
            out.end());
  return out;
}

std::string SerializeModel(const TrainedModel &model) {
  json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["kind"] = ModelKindName(model.kind);
  j["features"] = model.FeaturesById();
  if (model.kind == ModelKind::kNaiveBayes) {
    j["nb"] = {{"alpha", model.nb.alpha},
               {"log_prior", model.nb.log_prior},
               {"log_likelihood", model.nb.log_likelihood}};
  } else {
    json svs = json::array();
    for (size_t i = 0; i < model.svm.support_vectors.size(); ++i) {
      svs.push_back({{"coef", model.svm.coefficients[i]},
                     {"x", SparseToJson(model.svm.support_vectors[i])}});
    }
    j["svm"] = {{"kernel", KernelKindName(model.svm.kernel.kind)},
                {"degree", model.svm.kernel.degree},
                {"c", model.svm.c},
                {"tol", model.svm.tol},
                {"bias", model.svm.bias},
                {"kkt_residual", model.svm.kkt_residual},
                {"iterations", model.svm.iterations},
                {"support_vectors", svs}};
  }
  return j.dump(1) + "\n";
}

TrainedModel DeserializeModel(const std::string &text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception &e) {
    throw ParseError(std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != kFormat) {
      throw ParseError("not a simile model file");
    }
    if (j.at("version").get<int>() != kVersion) {
      throw ParseError("unsupported model version " +
                       std::to_string(j.at("version").get<int>()));
    }
    TrainedModel model;
    auto kind = j.at("kind").get<std::string>();
    if (kind == "nb") {
      model.kind = ModelKind::kNaiveBayes;
    } else if (kind == "svm") {
      model.kind = ModelKind::kSvm;
    } else {
      throw ParseError("unknown model kind " + kind);
    }
    auto features = j.at("features").get<std::vector<std::string>>();
    for (size_t i = 0; i < features.size(); ++i) {
      model.feature_index.emplace(features[i], static_cast<int>(i));
    }
    if (model.kind == ModelKind::kNaiveBayes) {
      const auto &nb = j.at("nb");
      model.nb.alpha = nb.at("alpha").get<double>();
      model.nb.log_prior = nb.at("log_prior").get<std::array<double, 2>>();
      model.nb.log_likelihood =
          nb.at("log_likelihood").get<std::array<std::vector<double>, 2>>();
      for (const auto &ll : model.nb.log_likelihood) {
        if (ll.size() != features.size()) {
          throw ParseError("likelihood table does not match vocabulary");
        }
      }
    } else {
      const auto &svm = j.at("svm");
      model.svm.kernel.kind = ParseKernelKind(svm.at("kernel").get<std::string>());
      model.svm.kernel.degree = svm.at("degree").get<int>();
      model.svm.c = svm.at("c").get<double>();
      model.svm.tol = svm.at("tol").get<double>();
      model.svm.bias = svm.at("bias").get<double>();
      model.svm.kkt_residual = svm.at("kkt_residual").get<double>();
      model.svm.iterations = svm.at("iterations").get<int>();
      for (const auto &sv : svm.at("support_vectors")) {
        model.svm.coefficients.push_back(sv.at("coef").get<double>());
        model.svm.support_vectors.push_back(SparseFromJson(sv.at("x")));
      }
    }
    return model;
  } catch (const json::exception &e) {
    throw ParseError(std::string("malformed model file: ") + e.what());
  }
}

void SaveModel(const TrainedModel &model, const std::filesystem::path &path) {
  WriteFileAtomically(path, SerializeModel(model));
}

TrainedModel LoadModel(const std::filesystem::path &path) {
  return DeserializeModel(ReadFile(path));
}

}  // namespace simile
