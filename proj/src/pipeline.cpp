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

#include "graphevo/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "graphevo/errors.hpp"
#include "graphevo/model_zoo.hpp"
#include "graphevo/models.hpp"

namespace graphevo {

std::vector<std::size_t> Dataset::class_counts() const {
  std::vector<std::size_t> counts(class_names.size(), 0);
  for (int label : labels) {
    if (label >= 0 && static_cast<std::size_t>(label) < counts.size()) ++counts[static_cast<std::size_t>(label)];
  }
  return counts;
}

void Dataset::check() const {
  if (static_cast<std::size_t>(features.rows()) != labels.size()) {
    throw DatasetError(fmt::format("{} feature rows but {} labels", features.rows(), labels.size()));
  }
  if (labels.empty()) throw DatasetError("dataset is empty");
  if (class_names.size() < 2) throw DatasetError("need at least two classes");
  if (!features.allFinite()) throw DatasetError("features contain non-finite values");
  for (int label : labels) {
    if (label < 0 || label >= num_classes()) throw DatasetError(fmt::format("label {} out of range", label));
  }
}

Dataset Dataset::subset(std::span<const std::size_t> rows) const {
  Dataset out;
  out.class_names = class_names;
  out.feature_names = feature_names;
  out.features.resize(static_cast<Eigen::Index>(rows.size()), features.cols());
  out.labels.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.features.row(static_cast<Eigen::Index>(i)) = features.row(static_cast<Eigen::Index>(rows[i]));
    out.labels.push_back(labels[rows[i]]);
  }
  return out;
}

namespace {

Matrix union_of(const std::vector<std::size_t>& parents, const std::vector<Matrix>& outputs) {
  std::vector<const Matrix*> inputs;
  inputs.reserve(parents.size());
  for (std::size_t p : parents) inputs.push_back(&outputs[p]);
  return feature_union(std::span<const Matrix* const>(inputs));
}

}  // namespace

TrainedComposite train_composite(const Graph& graph, const Matrix& x, std::span<const int> y, int num_classes,
                                 const Deadline& deadline, std::uint64_t seed) {
  const std::size_t n = graph.size();
  if (n < 2) throw InvalidGraph("a composite needs an input and an output vertex");
  if (graph.vertex(0).role != ModelRole::kInput) throw InvalidGraph("first vertex must be the input");
  if (graph.vertex(n - 1).role != ModelRole::kClassifier) throw InvalidGraph("output vertex must be a classifier");
  for (const auto& [i, j] : graph.edges()) {
    if (i >= j) throw InvalidGraph("graph is not topologically sorted");
  }
  if (static_cast<std::size_t>(x.rows()) != y.size()) {
    throw ShapeMismatch(fmt::format("{} rows but {} labels", x.rows(), y.size()));
  }

  TrainedComposite composite;
  composite.graph_ = graph;
  composite.num_classes_ = num_classes;
  composite.feature_width_ = x.cols();
  composite.layout_.resize(n);
  composite.input_widths_.assign(n, x.cols());
  composite.estimators_.resize(n);

  std::vector<Matrix> outputs(n);
  outputs[0] = x;
  auto input = std::make_shared<PassThrough>();
  input->fit(x, y, FitContext{num_classes, seed, &deadline});
  composite.estimators_[0] = input;

  for (std::size_t k = 1; k < n; ++k) {
    deadline.check();
    composite.layout_[k] = graph.parents(k);
    if (composite.layout_[k].empty()) throw InvalidGraph(fmt::format("vertex {} has no inputs", k + 1));
    const Matrix features = union_of(composite.layout_[k], outputs);
    composite.input_widths_[k] = features.cols();

    std::shared_ptr<Estimator> estimator = make_estimator(graph.vertex(k));
    estimator->fit(features, y, FitContext{num_classes, mix64(seed + k), &deadline});
    // The output vertex's in-sample output feeds nothing.
    if (k + 1 < n) {
      outputs[k] = estimator->apply(features);
    }
    composite.estimators_[k] = std::move(estimator);
  }
  return composite;
}

Matrix TrainedComposite::predict_proba(const Matrix& x) const {
  if (x.cols() != feature_width_) {
    throw ShapeMismatch(fmt::format("composite trained on {} columns, given {}", feature_width_, x.cols()));
  }
  const std::size_t n = graph_.size();
  std::vector<Matrix> outputs(n);
  outputs[0] = x;
  for (std::size_t k = 1; k < n; ++k) {
    const Matrix features = union_of(layout_[k], outputs);
    if (features.cols() != input_widths_[k]) {
      throw ShapeMismatch(fmt::format("vertex {} expects {} columns, got {}", k + 1, input_widths_[k], features.cols()));
    }
    outputs[k] = estimators_[k]->apply(features);
  }
  return outputs[n - 1];
}

Labels TrainedComposite::predict(const Matrix& x) const { return argmax_rows(predict_proba(x)); }

Labels argmax_rows(const Matrix& scores) {
  Labels out(static_cast<std::size_t>(scores.rows()), 0);
  for (Eigen::Index r = 0; r < scores.rows(); ++r) {
    Eigen::Index best = 0;
    for (Eigen::Index c = 1; c < scores.cols(); ++c) {
      if (scores(r, c) > scores(r, best)) best = c;
    }
    out[static_cast<std::size_t>(r)] = static_cast<int>(best);
  }
  return out;
}

double balanced_accuracy(std::span<const int> truth, std::span<const int> predicted) {
  if (truth.size() != predicted.size()) {
    throw ShapeMismatch(fmt::format("{} true labels but {} predictions", truth.size(), predicted.size()));
  }
  if (truth.empty()) throw EmptyInput("balanced accuracy of an empty sample");
  const int classes = *std::max_element(truth.begin(), truth.end()) + 1;
  std::vector<double> total(static_cast<std::size_t>(classes), 0.0);
  std::vector<double> correct(static_cast<std::size_t>(classes), 0.0);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const auto c = static_cast<std::size_t>(truth[i]);
    total[c] += 1.0;
    if (predicted[i] == truth[i]) correct[c] += 1.0;
  }
  double sum = 0.0;
  int present = 0;
  for (std::size_t c = 0; c < total.size(); ++c) {
    if (total[c] == 0.0) continue;
    sum += correct[c] / total[c];
    ++present;
  }
  return sum / present;
}

TrainTestSplit split_train_test(const Dataset& data, double ratio, Rng& rng) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw DomainError(fmt::format("split ratio {} outside (0, 1)", ratio));
  std::vector<std::vector<std::size_t>> by_class(static_cast<std::size_t>(data.num_classes()));
  for (std::size_t i = 0; i < data.size(); ++i) by_class[static_cast<std::size_t>(data.labels[i])].push_back(i);

  TrainTestSplit split;
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    auto& members = by_class[c];
    if (members.empty()) continue;
    if (members.size() < 2) {
      throw ClassTooSmall(fmt::format("class '{}' has {} member(s); a split needs 2", data.class_names[c],
                                      members.size()));
    }
    rng.shuffle(members);
    auto n_train = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(members.size())));
    n_train = std::clamp<std::size_t>(n_train, 1, members.size() - 1);
    split.train_rows.insert(split.train_rows.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(n_train));
    split.test_rows.insert(split.test_rows.end(), members.begin() + static_cast<std::ptrdiff_t>(n_train), members.end());
  }
  rng.shuffle(split.train_rows);
  rng.shuffle(split.test_rows);
  split.train = data.subset(split.train_rows);
  split.test = data.subset(split.test_rows);
  return split;
}

std::vector<int> stratified_folds(std::span<const int> labels, int num_classes, int folds, Rng& rng, int* effective) {
  if (folds < 2) throw DomainError("cross-validation needs at least two folds");
  std::vector<std::vector<std::size_t>> by_class(static_cast<std::size_t>(num_classes));
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[static_cast<std::size_t>(labels[i])].push_back(i);
  std::size_t smallest = labels.size();
  for (const auto& members : by_class) {
    if (!members.empty()) smallest = std::min(smallest, members.size());
  }
  const int k = std::max(2, std::min(folds, static_cast<int>(smallest)));
  if (effective) *effective = k;

  std::vector<int> fold(labels.size(), 0);
  std::size_t offset = 0;
  for (auto& members : by_class) {
    rng.shuffle(members);
    for (std::size_t i = 0; i < members.size(); ++i) fold[members[i]] = static_cast<int>((offset + i) % static_cast<std::size_t>(k));
    offset += members.size();
  }
  return fold;
}

CrossValidation cross_validate(const Graph& graph, const Dataset& data, int folds, double time_budget, Rng& rng) {
  int k = 0;
  const std::vector<int> fold = stratified_folds(data.labels, data.num_classes(), folds, rng, &k);
  const std::uint64_t seed = rng();
  const Deadline deadline(time_budget);

  double total = 0.0;
  for (int f = 0; f < k; ++f) {
    std::vector<std::size_t> train_rows, test_rows;
    for (std::size_t i = 0; i < fold.size(); ++i) (fold[i] == f ? test_rows : train_rows).push_back(i);
    const Dataset train = data.subset(train_rows);
    const Dataset test = data.subset(test_rows);
    const auto composite = train_composite(graph, train.features, train.labels, data.num_classes(), deadline,
                                           mix64(seed + static_cast<std::uint64_t>(f)));
    total += balanced_accuracy(test.labels, composite.predict(test.features));
  }
  CrossValidation result;
  result.folds = k;
  result.balanced_accuracy = total / k;
  result.loss = 1.0 - result.balanced_accuracy;
  return result;
}

}  // namespace graphevo
