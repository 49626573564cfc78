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
#include <limits>

#include "graphevo/models.hpp"
#include "graphevo/rng.hpp"

namespace graphevo {

namespace {

// Index of the nearest centroid; ties go to the lower index.
Eigen::Index nearest_centroid(const Matrix& centroids, const Eigen::RowVectorXd& row, double* distance = nullptr) {
  Eigen::Index best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (Eigen::Index c = 0; c < centroids.rows(); ++c) {
    const double d = (centroids.row(c) - row).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  if (distance) *distance = best_d;
  return best;
}

// Row with the largest distance to its nearest centroid; ties go to the lower
// row.
Eigen::Index farthest_row(const Matrix& x, const Matrix& centroids) {
  Eigen::Index best = 0;
  double best_d = -1.0;
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    double d = 0.0;
    nearest_centroid(centroids, x.row(r), &d);
    if (d > best_d) {
      best_d = d;
      best = r;
    }
  }
  return best;
}

}  // namespace

void KMeans::do_fit(const Matrix& x, std::span<const int>, const FitContext& context) {
  const Eigen::Index k = std::clamp<Eigen::Index>(static_cast<Eigen::Index>(clusters_), 1, x.rows());
  Rng rng(context.seed, StreamId{0, 0x4B4D});

  centroids_.resize(1, x.cols());
  centroids_.row(0) = x.row(static_cast<Eigen::Index>(rng.index(static_cast<std::size_t>(x.rows()))));
  while (centroids_.rows() < k) {
    const Eigen::Index next = farthest_row(x, centroids_);
    centroids_.conservativeResize(centroids_.rows() + 1, Eigen::NoChange);
    centroids_.row(centroids_.rows() - 1) = x.row(next);
  }

  std::vector<Eigen::Index> assignment(static_cast<std::size_t>(x.rows()));
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    context.check_deadline();
    for (Eigen::Index r = 0; r < x.rows(); ++r) assignment[static_cast<std::size_t>(r)] = nearest_centroid(centroids_, x.row(r));

    Matrix sums = Matrix::Zero(k, x.cols());
    std::vector<Eigen::Index> counts(static_cast<std::size_t>(k), 0);
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      sums.row(assignment[static_cast<std::size_t>(r)]) += x.row(r);
      ++counts[static_cast<std::size_t>(assignment[static_cast<std::size_t>(r)])];
    }
    Matrix updated = centroids_;
    for (Eigen::Index c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) {
        updated.row(c) = sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
      }
    }
    // Empty clusters move to the point worst served by the others.
    for (Eigen::Index c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] == 0) updated.row(c) = x.row(farthest_row(x, updated));
    }
    const double shift = (updated - centroids_).rowwise().norm().maxCoeff();
    centroids_ = std::move(updated);
    if (shift < kTolerance) break;
  }
}

Matrix KMeans::do_apply(const Matrix& x) const {
  Matrix out = Matrix::Zero(x.rows(), centroids_.rows());
  for (Eigen::Index r = 0; r < x.rows(); ++r) out(r, nearest_centroid(centroids_, x.row(r))) = 1.0;
  return out;
}

}  // namespace graphevo
