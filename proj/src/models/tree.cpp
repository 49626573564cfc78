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

#include <algorithm>
#include <cmath>
#include <limits>

#include "graphevo/errors.hpp"
#include "graphevo/models.hpp"

namespace graphevo {

namespace {

double impurity(const std::vector<double>& counts, double total, DecisionTree::Criterion criterion) {
  if (total <= 0.0) return 0.0;
  double value = criterion == DecisionTree::Criterion::kGini ? 1.0 : 0.0;
  for (double c : counts) {
    if (c <= 0.0) continue;
    const double p = c / total;
    if (criterion == DecisionTree::Criterion::kGini) {
      value -= p * p;
    } else {
      value -= p * std::log2(p);
    }
  }
  return value;
}

}  // namespace

void DecisionTree::do_fit(const Matrix& x, std::span<const int> labels, const FitContext& context) {
  num_classes_ = context.num_classes;
  for (int label : labels) {
    if (label < 0 || label >= num_classes_) throw TrainingFailure("label outside [0, classes)");
  }
  nodes_.clear();
  std::vector<Eigen::Index> rows(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index r = 0; r < x.rows(); ++r) rows[static_cast<std::size_t>(r)] = r;
  build(x, labels, rows, 0, context);
}

std::size_t DecisionTree::build(const Matrix& x, std::span<const int> labels, std::vector<Eigen::Index>& rows,
                                std::int64_t depth, const FitContext& context) {
  context.check_deadline();
  const std::size_t id = nodes_.size();
  nodes_.emplace_back();

  std::vector<double> counts(static_cast<std::size_t>(num_classes_), 0.0);
  for (Eigen::Index r : rows) counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(r)])] += 1.0;
  const auto n = static_cast<double>(rows.size());
  Eigen::RowVectorXd distribution(num_classes_);
  for (int c = 0; c < num_classes_; ++c) distribution(c) = counts[static_cast<std::size_t>(c)] / n;
  nodes_[id].distribution = distribution;

  const double parent_impurity = impurity(counts, n, criterion_);
  const auto min_leaf = static_cast<std::size_t>(std::max<std::int64_t>(min_leaf_, 1));
  if (depth >= max_depth_ || parent_impurity <= 0.0 || rows.size() < 2 * min_leaf) return id;

  // Impure nodes split even at zero gain (XOR-like parities have no
  // first-split gain); each split strictly shrinks both children.
  double best_score = std::numeric_limits<double>::infinity();
  Eigen::Index best_feature = -1;
  double best_threshold = 0.0;
  std::vector<Eigen::Index> sorted = rows;
  for (Eigen::Index f = 0; f < x.cols(); ++f) {
    std::stable_sort(sorted.begin(), sorted.end(), [&](Eigen::Index a, Eigen::Index b) { return x(a, f) < x(b, f); });
    std::vector<double> left(static_cast<std::size_t>(num_classes_), 0.0);
    std::vector<double> right = counts;
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
      const auto label = static_cast<std::size_t>(labels[static_cast<std::size_t>(sorted[i])]);
      left[label] += 1.0;
      right[label] -= 1.0;
      const std::size_t n_left = i + 1;
      const std::size_t n_right = sorted.size() - n_left;
      if (n_left < min_leaf || n_right < min_leaf) continue;
      const double lo = x(sorted[i], f);
      const double hi = x(sorted[i + 1], f);
      if (!(lo < hi)) continue;
      const double score = (static_cast<double>(n_left) * impurity(left, static_cast<double>(n_left), criterion_) +
                            static_cast<double>(n_right) * impurity(right, static_cast<double>(n_right), criterion_)) /
                           n;
      if (score < best_score - 1e-12) {
        best_score = score;
        best_feature = f;
        best_threshold = 0.5 * (lo + hi);
      }
    }
  }
  if (best_feature < 0) return id;

  std::vector<Eigen::Index> left_rows, right_rows;
  for (Eigen::Index r : rows) (x(r, best_feature) <= best_threshold ? left_rows : right_rows).push_back(r);
  rows.clear();
  rows.shrink_to_fit();

  nodes_[id].feature = best_feature;
  nodes_[id].threshold = best_threshold;
  const std::size_t left = build(x, labels, left_rows, depth + 1, context);
  const std::size_t right = build(x, labels, right_rows, depth + 1, context);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

Matrix DecisionTree::do_apply(const Matrix& x) const {
  Matrix out(x.rows(), num_classes_);
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    std::size_t node = 0;
    while (nodes_[node].feature >= 0) {
      node = x(r, nodes_[node].feature) <= nodes_[node].threshold ? nodes_[node].left : nodes_[node].right;
    }
    out.row(r) = nodes_[node].distribution;
  }
  return out;
}

}  // namespace graphevo
