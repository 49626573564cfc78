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

#include <cmath>
#include <limits>
#include <numbers>

#include "graphevo/errors.hpp"
#include "graphevo/models.hpp"

namespace graphevo {

void GaussianNaiveBayes::do_fit(const Matrix& x, std::span<const int> labels, const FitContext& context) {
  const int classes = context.num_classes;
  const Eigen::Index p = x.cols();
  mean_ = Matrix::Zero(classes, p);
  var_ = Matrix::Ones(classes, p);
  log_prior_ = Eigen::RowVectorXd::Constant(classes, -std::numeric_limits<double>::infinity());

  std::vector<Eigen::Index> counts(static_cast<std::size_t>(classes), 0);
  for (std::size_t r = 0; r < labels.size(); ++r) {
    if (labels[r] < 0 || labels[r] >= classes) throw TrainingFailure("label outside [0, classes)");
    ++counts[static_cast<std::size_t>(labels[r])];
  }
  Matrix sums = Matrix::Zero(classes, p);
  Matrix squares = Matrix::Zero(classes, p);
  for (std::size_t r = 0; r < labels.size(); ++r) {
    const auto row = x.row(static_cast<Eigen::Index>(r));
    sums.row(labels[r]) += row;
    squares.row(labels[r]) += row.cwiseProduct(row);
  }

  // Variance floor proportional to the widest feature, as in common GNB
  // implementations.
  const Eigen::RowVectorXd overall_mean = x.colwise().mean();
  const double widest =
      ((x.rowwise() - overall_mean).array().square().colwise().sum() / static_cast<double>(x.rows())).maxCoeff();
  const double epsilon = 1e-9 * std::max(widest, 1e-12);

  for (int c = 0; c < classes; ++c) {
    const auto n = static_cast<double>(counts[static_cast<std::size_t>(c)]);
    if (n == 0.0) continue;
    mean_.row(c) = sums.row(c) / n;
    var_.row(c) = (squares.row(c) / n - mean_.row(c).cwiseProduct(mean_.row(c))).cwiseMax(0.0).array() + epsilon;
    log_prior_(c) = std::log(n / static_cast<double>(labels.size()));
  }
}

Matrix GaussianNaiveBayes::do_apply(const Matrix& x) const {
  const Eigen::Index classes = mean_.rows();
  Matrix log_joint(x.rows(), classes);
  for (Eigen::Index c = 0; c < classes; ++c) {
    if (!std::isfinite(log_prior_(c))) {
      log_joint.col(c).setConstant(-std::numeric_limits<double>::infinity());
      continue;
    }
    const double norm = -0.5 * (2.0 * std::numbers::pi * var_.row(c).array()).log().sum();
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      const double quad = ((x.row(r) - mean_.row(c)).array().square() / var_.row(c).array()).sum();
      log_joint(r, c) = log_prior_(c) + norm - 0.5 * quad;
    }
  }
  return softmax_rows(log_joint);
}

}  // namespace graphevo
