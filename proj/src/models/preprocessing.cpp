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
#include <vector>

#include "graphevo/models.hpp"

namespace graphevo {

namespace {

constexpr double kTinyScale = 1e-12;

// Linear-interpolated quantile of a sorted sample.
double quantile_sorted(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

void StandardScaler::do_fit(const Matrix& x, std::span<const int>, const FitContext&) {
  mean_ = x.colwise().mean();
  const Matrix centered = x.rowwise() - mean_;
  scale_ = (centered.array().square().colwise().sum() / static_cast<double>(x.rows())).sqrt();
  for (Eigen::Index c = 0; c < scale_.size(); ++c) {
    if (scale_(c) < kTinyScale) scale_(c) = 1.0;
  }
}

Matrix StandardScaler::do_apply(const Matrix& x) const {
  return (x.rowwise() - mean_).array().rowwise() / scale_.array();
}

void MinMaxScaler::do_fit(const Matrix& x, std::span<const int>, const FitContext&) {
  min_ = x.colwise().minCoeff();
  range_ = x.colwise().maxCoeff() - min_;
  for (Eigen::Index c = 0; c < range_.size(); ++c) {
    if (range_(c) < kTinyScale) range_(c) = 1.0;
  }
}

Matrix MinMaxScaler::do_apply(const Matrix& x) const {
  return (x.rowwise() - min_).array().rowwise() / range_.array();
}

Matrix MinMaxScaler::inverse(const Matrix& scaled) const {
  Matrix out = scaled.array().rowwise() * range_.array();
  return out.rowwise() + min_;
}

void RobustScaler::do_fit(const Matrix& x, std::span<const int>, const FitContext&) {
  median_.resize(x.cols());
  iqr_.resize(x.cols());
  std::vector<double> column(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    for (Eigen::Index r = 0; r < x.rows(); ++r) column[static_cast<std::size_t>(r)] = x(r, c);
    std::sort(column.begin(), column.end());
    median_(c) = quantile_sorted(column, 0.5);
    const double iqr = quantile_sorted(column, 0.75) - quantile_sorted(column, 0.25);
    iqr_(c) = iqr < kTinyScale ? 1.0 : iqr;
  }
}

Matrix RobustScaler::do_apply(const Matrix& x) const {
  return (x.rowwise() - median_).array().rowwise() / iqr_.array();
}

Matrix L2Normalizer::do_apply(const Matrix& x) const {
  Matrix out = x;
  for (Eigen::Index r = 0; r < out.rows(); ++r) {
    const double norm = out.row(r).norm();
    if (norm > 0.0) out.row(r) /= norm;
  }
  return out;
}

void Pca::do_fit(const Matrix& x, std::span<const int>, const FitContext&) {
  const Eigen::Index p = x.cols();
  const Eigen::Index k = std::clamp<Eigen::Index>(static_cast<Eigen::Index>(components_), 1, p);
  mean_ = x.colwise().mean();
  const Matrix centered = x.rowwise() - mean_;
  const Matrix covariance = centered.transpose() * centered / static_cast<double>(x.rows());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(covariance);
  // Eigenvalues come back ascending; keep the trailing k columns, reversed.
  basis_.resize(p, k);
  for (Eigen::Index j = 0; j < k; ++j) basis_.col(j) = solver.eigenvectors().col(p - 1 - j);
}

Matrix Pca::do_apply(const Matrix& x) const { return (x.rowwise() - mean_) * basis_; }

}  // namespace graphevo
