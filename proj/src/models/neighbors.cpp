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
#include <utility>
#include <vector>

#include "graphevo/models.hpp"

namespace graphevo {

namespace {

using Neighbor = std::pair<double, Eigen::Index>;  // (squared distance, row)

// The k nearest training rows, ordered by distance then row index.
std::vector<Neighbor> nearest(const Matrix& train, const Eigen::RowVectorXd& query, std::int64_t k) {
  std::vector<Neighbor> all(static_cast<std::size_t>(train.rows()));
  for (Eigen::Index r = 0; r < train.rows(); ++r) {
    all[static_cast<std::size_t>(r)] = {(train.row(r) - query).squaredNorm(), r};
  }
  const auto keep = static_cast<std::size_t>(std::clamp<std::int64_t>(k, 1, train.rows()));
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end());
  all.resize(keep);
  return all;
}

}  // namespace

void KnnClassifier::do_fit(const Matrix& x, std::span<const int> labels, const FitContext& context) {
  train_ = x;
  labels_.assign(labels.begin(), labels.end());
  num_classes_ = context.num_classes;
}

Matrix KnnClassifier::do_apply(const Matrix& x) const {
  Matrix out = Matrix::Zero(x.rows(), num_classes_);
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const auto neighbors = nearest(train_, x.row(r), k_);
    // Under distance weighting, exact matches outvote everything else.
    const bool exact = distance_weighted_ && neighbors.front().first == 0.0;
    for (const auto& [dist, row] : neighbors) {
      double weight = 1.0;
      if (distance_weighted_) {
        if (exact) {
          weight = dist == 0.0 ? 1.0 : 0.0;
        } else {
          weight = 1.0 / std::sqrt(dist);
        }
      }
      out(r, labels_[static_cast<std::size_t>(row)]) += weight;
    }
    out.row(r) /= out.row(r).sum();
  }
  return out;
}

void KnnRegressor::do_fit(const Matrix& x, std::span<const int> labels, const FitContext&) {
  train_ = x;
  targets_.resize(static_cast<Eigen::Index>(labels.size()));
  for (std::size_t r = 0; r < labels.size(); ++r) targets_(static_cast<Eigen::Index>(r)) = labels[r];
}

Matrix KnnRegressor::do_apply(const Matrix& x) const {
  Matrix out(x.rows(), 1);
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const auto neighbors = nearest(train_, x.row(r), k_);
    double total = 0.0;
    for (const auto& [dist, row] : neighbors) total += targets_(row);
    out(r, 0) = total / static_cast<double>(neighbors.size());
  }
  return out;
}

}  // namespace graphevo
