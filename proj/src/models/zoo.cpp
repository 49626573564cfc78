// Copyright 2026 The graphevo Authors.
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

#include "graphevo/model_zoo.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "graphevo/errors.hpp"
#include "graphevo/models.hpp"

namespace graphevo {

namespace {

using P = ParamDomain;

std::vector<ZooEntry> build_catalog() {
  std::vector<ZooEntry> zoo;
  zoo.push_back({"input", "Input", ModelRole::kInput, {}, OutputArity::kSameAsInput,
                 [](const ParamAssignment&) { return std::make_unique<PassThrough>(); }});

  zoo.push_back({"standard_scaler", "StandardScaler", ModelRole::kPreprocessor, {}, OutputArity::kSameAsInput,
                 [](const ParamAssignment&) { return std::make_unique<StandardScaler>(); }});
  zoo.push_back({"minmax_scaler", "MinMaxScaler", ModelRole::kPreprocessor, {}, OutputArity::kSameAsInput,
                 [](const ParamAssignment&) { return std::make_unique<MinMaxScaler>(); }});
  zoo.push_back({"robust_scaler", "RobustScaler", ModelRole::kPreprocessor, {}, OutputArity::kSameAsInput,
                 [](const ParamAssignment&) { return std::make_unique<RobustScaler>(); }});
  zoo.push_back({"l2_normalizer", "Normalizer", ModelRole::kPreprocessor, {}, OutputArity::kSameAsInput,
                 [](const ParamAssignment&) { return std::make_unique<L2Normalizer>(); }});
  zoo.push_back({"pca", "PCA", ModelRole::kPreprocessor, {P::integer("n_components", 1, 8)}, OutputArity::kComponents,
                 [](const ParamAssignment& p) { return std::make_unique<Pca>(param_as_int(p, "n_components")); }});

  zoo.push_back({"kmeans", "KMeans", ModelRole::kUnsupervised, {P::integer("k", 2, 10)}, OutputArity::kClusters,
                 [](const ParamAssignment& p) { return std::make_unique<KMeans>(param_as_int(p, "k")); }});

  zoo.push_back({"logistic_regression", "LogisticRegression", ModelRole::kClassifier,
                 {P::log_continuous("lambda", 1e-4, 1e1), P::integer("epochs", 50, 500),
                  P::log_continuous("step", 1e-3, 1.0)},
                 OutputArity::kClassCount, [](const ParamAssignment& p) {
                   return std::make_unique<LogisticRegression>(param_as_double(p, "lambda"), param_as_int(p, "epochs"),
                                                               param_as_double(p, "step"));
                 }});
  zoo.push_back({"ridge_classifier", "RidgeClassifier", ModelRole::kClassifier,
                 {P::log_continuous("lambda", 1e-4, 1e2)}, OutputArity::kClassCount,
                 [](const ParamAssignment& p) { return std::make_unique<RidgeClassifier>(param_as_double(p, "lambda")); }});
  zoo.push_back({"gaussian_nb", "GaussianNB", ModelRole::kClassifier, {}, OutputArity::kClassCount,
                 [](const ParamAssignment&) { return std::make_unique<GaussianNaiveBayes>(); }});
  zoo.push_back({"knn_classifier", "KNeighborsClassifier", ModelRole::kClassifier,
                 {P::integer("k", 1, 25), P::categorical("weights", {"uniform", "distance"})},
                 OutputArity::kClassCount, [](const ParamAssignment& p) {
                   return std::make_unique<KnnClassifier>(param_as_int(p, "k"),
                                                          param_as_string(p, "weights") == "distance");
                 }});
  zoo.push_back({"decision_tree", "DecisionTree", ModelRole::kClassifier,
                 {P::integer("max_depth", 1, 32), P::integer("min_leaf", 1, 20),
                  P::categorical("criterion", {"gini", "entropy"})},
                 OutputArity::kClassCount, [](const ParamAssignment& p) {
                   const auto criterion = param_as_string(p, "criterion") == "entropy" ? DecisionTree::Criterion::kEntropy
                                                                                       : DecisionTree::Criterion::kGini;
                   return std::make_unique<DecisionTree>(param_as_int(p, "max_depth"), param_as_int(p, "min_leaf"),
                                                         criterion);
                 }});
  zoo.push_back({"linear_svm", "LinearSVC", ModelRole::kClassifier,
                 {P::log_continuous("lambda", 1e-5, 1.0), P::integer("epochs", 20, 200)}, OutputArity::kClassCount,
                 [](const ParamAssignment& p) {
                   return std::make_unique<LinearSvm>(param_as_double(p, "lambda"), param_as_int(p, "epochs"));
                 }});

  zoo.push_back({"ridge_regressor", "RidgeRegressor", ModelRole::kRegressor, {P::log_continuous("lambda", 1e-4, 1e2)},
                 OutputArity::kSingle,
                 [](const ParamAssignment& p) { return std::make_unique<RidgeRegressor>(param_as_double(p, "lambda")); }});
  zoo.push_back({"knn_regressor", "KNeighborsRegressor", ModelRole::kRegressor, {P::integer("k", 1, 25)},
                 OutputArity::kSingle,
                 [](const ParamAssignment& p) { return std::make_unique<KnnRegressor>(param_as_int(p, "k")); }});
  return zoo;
}

}  // namespace

const std::vector<ZooEntry>& zoo_catalog() {
  static const std::vector<ZooEntry> catalog = build_catalog();
  return catalog;
}

const ZooEntry& zoo_entry(std::string_view id) {
  const auto& zoo = zoo_catalog();
  const auto it = std::find_if(zoo.begin(), zoo.end(), [&](const ZooEntry& e) { return e.id == id; });
  if (it == zoo.end()) throw ConfigError(fmt::format("unknown model '{}'", id));
  return *it;
}

ModelSpec default_spec(std::string_view id) {
  const ZooEntry& entry = zoo_entry(id);
  ModelSpec spec{entry.id, entry.role, {}};
  for (const auto& domain : entry.space) spec.params[domain.name()] = domain.midpoint();
  return spec;
}

ModelSpec input_spec() { return default_spec("input"); }

std::vector<ModelSpec> default_model_set() {
  std::vector<ModelSpec> out;
  for (const auto& entry : zoo_catalog()) {
    if (entry.role != ModelRole::kInput) out.push_back(default_spec(entry.id));
  }
  return out;
}

std::unique_ptr<Estimator> make_estimator(const ModelSpec& spec) {
  const ZooEntry& entry = zoo_entry(spec.model_id);
  if (entry.role != spec.role) {
    throw ConfigError(fmt::format("model '{}' has role {}, not {}", spec.model_id, to_string(entry.role),
                                  to_string(spec.role)));
  }
  for (const auto& domain : entry.space) {
    const auto it = spec.params.find(domain.name());
    if (it == spec.params.end()) {
      throw ConfigError(fmt::format("model '{}' is missing hyperparameter '{}'", spec.model_id, domain.name()));
    }
    if (!domain.contains(it->second)) {
      throw ConfigError(fmt::format("model '{}': {}={} outside its domain", spec.model_id, domain.name(),
                                    format_param(it->second)));
    }
  }
  return entry.factory(spec.params);
}

const std::string& display_name(const ModelSpec& spec) { return zoo_entry(spec.model_id).display_name; }

Eigen::Index output_width(const ModelSpec& spec, Eigen::Index input_width, int num_classes) {
  const ZooEntry& entry = zoo_entry(spec.model_id);
  switch (entry.arity) {
    case OutputArity::kSameAsInput: return input_width;
    case OutputArity::kComponents:
      return std::clamp<Eigen::Index>(static_cast<Eigen::Index>(param_as_int(spec.params, "n_components")), 1,
                                      input_width);
    case OutputArity::kClusters: return static_cast<Eigen::Index>(param_as_int(spec.params, "k"));
    case OutputArity::kClassCount: return num_classes;
    case OutputArity::kSingle: return 1;
  }
  return input_width;
}

}  // namespace graphevo
