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

#include "graphevo/errors.hpp"
#include "graphevo/models.hpp"

namespace graphevo {

namespace {

constexpr double kPseudoInverseCutoff = 1e-10;
constexpr int kDeadlineStride = 16;

struct Standardization {
  Eigen::RowVectorXd mean, scale;
};

Standardization fit_standardization(const Matrix& x) {
  Standardization s;
  s.mean = x.colwise().mean();
  const Matrix centered = x.rowwise() - s.mean;
  s.scale = (centered.array().square().colwise().sum() / static_cast<double>(x.rows())).sqrt();
  for (Eigen::Index c = 0; c < s.scale.size(); ++c) {
    if (s.scale(c) < 1e-12) s.scale(c) = 1.0;
  }
  return s;
}

Matrix standardize(const Matrix& x, const Eigen::RowVectorXd& mean, const Eigen::RowVectorXd& scale) {
  return (x.rowwise() - mean).array().rowwise() / scale.array();
}

Matrix one_hot(std::span<const int> labels, int classes) {
  Matrix y = Matrix::Zero(static_cast<Eigen::Index>(labels.size()), classes);
  for (std::size_t r = 0; r < labels.size(); ++r) {
    if (labels[r] < 0 || labels[r] >= classes) throw TrainingFailure("label outside [0, classes)");
    y(static_cast<Eigen::Index>(r), labels[r]) = 1.0;
  }
  return y;
}

Matrix scores(const Matrix& x, const Matrix& weights, const Eigen::RowVectorXd& bias) {
  Matrix s = x * weights;
  s.rowwise() += bias;
  return s;
}

}  // namespace

LinearFit ridge_solve(const Matrix& x, const Matrix& y, double lambda) {
  const Eigen::RowVectorXd x_mean = x.colwise().mean();
  const Eigen::RowVectorXd y_mean = y.colwise().mean();
  const Matrix xc = x.rowwise() - x_mean;
  const Matrix yc = y.rowwise() - y_mean;

  Matrix gram = xc.transpose() * xc;
  gram.diagonal().array() += lambda;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(gram);
  if (solver.info() != Eigen::Success) throw TrainingFailure("eigen-decomposition failed");
  const Vector& eig = solver.eigenvalues();
  const double top = eig.size() > 0 ? eig.maxCoeff() : 0.0;
  Vector inverse = Vector::Zero(eig.size());
  if (top > 0.0) {
    for (Eigen::Index i = 0; i < eig.size(); ++i) {
      if (eig(i) > kPseudoInverseCutoff * top) inverse(i) = 1.0 / eig(i);
    }
  }
  const Matrix& v = solver.eigenvectors();
  LinearFit fit;
  fit.weights = v * inverse.asDiagonal() * (v.transpose() * (xc.transpose() * yc));
  fit.bias = y_mean - x_mean * fit.weights;
  if (!fit.weights.allFinite() || !fit.bias.allFinite()) throw TrainingFailure("ridge solution is not finite");
  return fit;
}

void LogisticRegression::do_fit(const Matrix& x, std::span<const int> labels, const FitContext& context) {
  const auto s = fit_standardization(x);
  mean_ = s.mean;
  scale_ = s.scale;
  const Matrix z = standardize(x, mean_, scale_);
  const Matrix y = one_hot(labels, context.num_classes);
  const double n = static_cast<double>(x.rows());

  weights_ = Matrix::Zero(x.cols(), context.num_classes);
  bias_ = Eigen::RowVectorXd::Zero(context.num_classes);
  for (std::int64_t epoch = 0; epoch < epochs_; ++epoch) {
    if (epoch % kDeadlineStride == 0) context.check_deadline();
    const Matrix residual = softmax_rows(scores(z, weights_, bias_)) - y;
    weights_ -= step_ * (z.transpose() * residual / n + lambda_ * weights_);
    bias_ -= step_ * residual.colwise().mean();
  }
  if (!weights_.allFinite() || !bias_.allFinite()) throw TrainingFailure("logistic regression diverged");
}

Matrix LogisticRegression::do_apply(const Matrix& x) const {
  return softmax_rows(scores(standardize(x, mean_, scale_), weights_, bias_));
}

void RidgeClassifier::do_fit(const Matrix& x, std::span<const int> labels, const FitContext& context) {
  const Matrix targets = 2.0 * one_hot(labels, context.num_classes).array() - 1.0;
  auto fit = ridge_solve(x, targets, lambda_);
  weights_ = std::move(fit.weights);
  bias_ = std::move(fit.bias);
}

Matrix RidgeClassifier::do_apply(const Matrix& x) const { return softmax_rows(scores(x, weights_, bias_)); }

void LinearSvm::do_fit(const Matrix& x, std::span<const int> labels, const FitContext& context) {
  const auto s = fit_standardization(x);
  mean_ = s.mean;
  scale_ = s.scale;
  const Matrix z = standardize(x, mean_, scale_);
  const Matrix targets = 2.0 * one_hot(labels, context.num_classes).array() - 1.0;
  const double n = static_cast<double>(x.rows());

  weights_ = Matrix::Zero(x.cols(), context.num_classes);
  bias_ = Eigen::RowVectorXd::Zero(context.num_classes);
  for (std::int64_t epoch = 1; epoch <= epochs_; ++epoch) {
    if (epoch % kDeadlineStride == 0) context.check_deadline();
    const double step = 0.5 / std::sqrt(static_cast<double>(epoch));
    const Matrix margins = targets.array() * scores(z, weights_, bias_).array();
    // Only rows inside the margin contribute to the hinge subgradient.
    const Matrix active = (margins.array() < 1.0).cast<double>() * targets.array();
    weights_ -= step * (lambda_ * weights_ - z.transpose() * active / n);
    bias_ += step * active.colwise().mean();
  }
  if (!weights_.allFinite() || !bias_.allFinite()) throw TrainingFailure("linear SVM diverged");
}

Matrix LinearSvm::do_apply(const Matrix& x) const {
  return softmax_rows(scores(standardize(x, mean_, scale_), weights_, bias_));
}

void RidgeRegressor::fit_targets(const Matrix& x, const Vector& y) {
  FitContext context;
  std::vector<int> unused(static_cast<std::size_t>(x.rows()), 0);
  // Route through fit() so the fitted flag and width are recorded, then
  // replace the solution with the real-valued one.
  fit(x, unused, context);
  auto solution = ridge_solve(x, y, lambda_);
  weights_ = solution.weights.col(0);
  bias_ = solution.bias(0);
}

void RidgeRegressor::do_fit(const Matrix& x, std::span<const int> labels, const FitContext&) {
  Vector y(static_cast<Eigen::Index>(labels.size()));
  for (std::size_t r = 0; r < labels.size(); ++r) y(static_cast<Eigen::Index>(r)) = labels[r];
  auto solution = ridge_solve(x, y, lambda_);
  weights_ = solution.weights.col(0);
  bias_ = solution.bias(0);
}

Matrix RidgeRegressor::do_apply(const Matrix& x) const {
  Matrix out = x * weights_;
  out.array() += bias_;
  return out;
}

}  // namespace graphevo
