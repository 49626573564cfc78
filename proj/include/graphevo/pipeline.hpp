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

// Executing model graphs: training a graph into a composite model, predicting
// with it, and scoring it by stratified cross-validation.

#ifndef GRAPHEVO_PIPELINE_HPP_
#define GRAPHEVO_PIPELINE_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "graphevo/dataset.hpp"
#include "graphevo/estimator.hpp"
#include "graphevo/graph.hpp"
#include "graphevo/rng.hpp"

namespace graphevo {

// A graph whose vertices hold fitted estimators. Immutable after training.
class TrainedComposite {
 public:
  const Graph& graph() const { return graph_; }
  int num_classes() const { return num_classes_; }
  Eigen::Index feature_width() const { return feature_width_; }
  // Parents of each vertex in the order their outputs are concatenated.
  const std::vector<std::vector<std::size_t>>& layout() const { return layout_; }
  // Observed input width of each vertex at training time.
  const std::vector<Eigen::Index>& input_widths() const { return input_widths_; }

  // Output classifier's probability columns.
  Matrix predict_proba(const Matrix& x) const;
  // Argmax of predict_proba; ties go to the lowest class index.
  Labels predict(const Matrix& x) const;

 private:
  friend TrainedComposite train_composite(const Graph&, const Matrix&, std::span<const int>, int, const Deadline&,
                                          std::uint64_t);

  Graph graph_;
  int num_classes_ = 0;
  Eigen::Index feature_width_ = 0;
  std::vector<std::vector<std::size_t>> layout_;
  std::vector<Eigen::Index> input_widths_;
  std::vector<std::shared_ptr<const Estimator>> estimators_;
};

// Fits every vertex in topological order on the union of its parents' outputs.
// The graph must be canonical with a classifier output. Throws
// TrainingFailure, TimeoutExceeded or ShapeMismatch.
TrainedComposite train_composite(const Graph& graph, const Matrix& x, std::span<const int> y, int num_classes,
                                 const Deadline& deadline = Deadline(), std::uint64_t seed = 0);

Labels argmax_rows(const Matrix& scores);

// Mean recall over the classes present in `truth`. Throws EmptyInput and
// ShapeMismatch.
double balanced_accuracy(std::span<const int> truth, std::span<const int> predicted);

struct TrainTestSplit {
  std::vector<std::size_t> train_rows;
  std::vector<std::size_t> test_rows;
  Dataset train;
  Dataset test;
};

// Shuffled stratified split. Throws DomainError unless 0 < ratio < 1 and
// ClassTooSmall when a class has fewer than two members.
TrainTestSplit split_train_test(const Dataset& data, double ratio, Rng& rng);

// Fold id of every row. The fold count is reduced to the smallest class size
// (never below 2); the effective count is returned through `effective`.
std::vector<int> stratified_folds(std::span<const int> labels, int num_classes, int folds, Rng& rng,
                                  int* effective = nullptr);

struct CrossValidation {
  double loss = 1.0;  // 1 - mean held-out balanced accuracy
  double balanced_accuracy = 0.0;
  int folds = 0;
};

// Stratified k-fold. One deadline of `time_budget` seconds covers every fold.
CrossValidation cross_validate(const Graph& graph, const Dataset& data, int folds, double time_budget, Rng& rng);

}  // namespace graphevo

#endif  // GRAPHEVO_PIPELINE_HPP_
