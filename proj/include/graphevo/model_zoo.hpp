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

#ifndef GRAPHEVO_MODEL_ZOO_HPP_
#define GRAPHEVO_MODEL_ZOO_HPP_

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "graphevo/estimator.hpp"
#include "graphevo/model_spec.hpp"

namespace graphevo {

// How many columns a model emits.
enum class OutputArity {
  kSameAsInput,     // preprocessors and the input vertex
  kComponents,      // PCA: min(n_components, input width)
  kClusters,        // k-means: k indicator columns
  kClassCount,      // classifiers: one probability per class
  kSingle,          // regressors
};

struct ZooEntry {
  std::string id;
  std::string display_name;
  ModelRole role;
  ParamSpace space;
  OutputArity arity;
  std::function<std::unique_ptr<Estimator>(const ParamAssignment&)> factory;
};

const std::vector<ZooEntry>& zoo_catalog();

// Throws ConfigError for unknown ids.
const ZooEntry& zoo_entry(std::string_view id);

// Spec carrying the mid-point default of every parameter.
ModelSpec default_spec(std::string_view id);
ModelSpec input_spec();

// Default templates for every catalog model except the input pass-through.
std::vector<ModelSpec> default_model_set();

// Throws ConfigError when a parameter is missing or outside its domain.
std::unique_ptr<Estimator> make_estimator(const ModelSpec& spec);

const std::string& display_name(const ModelSpec& spec);

// Expected output width given the vertex's input width.
Eigen::Index output_width(const ModelSpec& spec, Eigen::Index input_width, int num_classes);

}  // namespace graphevo

#endif  // GRAPHEVO_MODEL_ZOO_HPP_
