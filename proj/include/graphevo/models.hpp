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

// Primitive estimators used as graph vertices.
//
// Classifiers emit one probability column per class. Regressors fit the class
// index as a real-valued target and emit one column. k-means emits one-of-k
// indicator columns. Preprocessors keep the column count (PCA: min(k, p)).

#ifndef GRAPHEVO_MODELS_HPP_
#define GRAPHEVO_MODELS_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "graphevo/estimator.hpp"

namespace graphevo {

class PassThrough final : public Estimator {
 public:
  ModelRole role() const override { return ModelRole::kInput; }

 protected:
  void do_fit(const Matrix&, std::span<const int>, const FitContext&) override {}
  Matrix do_apply(const Matrix& x) const override { return x; }
};

class StandardScaler final : public Estimator {
 public:
  ModelRole role() const override { return ModelRole::kPreprocessor; }

 protected:
  void do_fit(const Matrix& x, std::span<const int>, const FitContext&) override;
  Matrix do_apply(const Matrix& x) const override;

 private:
  Eigen::RowVectorXd mean_, scale_;
};

class MinMaxScaler final : public Estimator {
 public:
  ModelRole role() const override { return ModelRole::kPreprocessor; }
  Matrix inverse(const Matrix& scaled) const;

 protected:
  void do_fit(const Matrix& x, std::span<const int>, const FitContext&) override;
  Matrix do_apply(const Matrix& x) const override;

 private:
  Eigen::RowVectorXd min_, range_;
};

// Centers on the median and scales by the interquartile range.
class RobustScaler final : public Estimator {
 public:
  ModelRole role() const override { return ModelRole::kPreprocessor; }

 protected:
  void do_fit(const Matrix& x, std::span<const int>, const FitContext&) override;
  Matrix do_apply(const Matrix& x) const override;

 private:
  Eigen::RowVectorXd median_, iqr_;
};

// Scales each row to unit Euclidean norm; all-zero rows pass unchanged.
class L2Normalizer final : public Estimator {
 public:
  ModelRole role() const override { return ModelRole::kPreprocessor; }

 protected:
  void do_fit(const Matrix&, std::span<const int>, const FitContext&) override {}
  Matrix do_apply(const Matrix& x) const override;
};

class Pca final : public Estimator {
 public:
  explicit Pca(std::int64_t components) : components_(components) {}
  ModelRole role() const override { return ModelRole::kPreprocessor; }

 protected:
  void do_fit(const Matrix& x, std::span<const int>, const FitContext& context) override;
  Matrix do_apply(const Matrix& x) const override;

 private:
  std::int64_t components_;
  Eigen::RowVectorXd mean_;
  Matrix basis_;  // p x k, columns ordered by decreasing variance
};

// Lloyd iterations from farthest-point seeding; emits one-of-k indicators.
class KMeans final : public Estimator {
 public:
  explicit KMeans(std::int64_t clusters) : clusters_(clusters) {}
  ModelRole role() const override { return ModelRole::kUnsupervised; }
  const Matrix& centroids() const { return centroids_; }

  static constexpr int kMaxIterations = 50;
  static constexpr double kTolerance = 1e-6;

 protected:
  void do_fit(const Matrix& x, std::span<const int>, const FitContext& context) override;
  Matrix do_apply(const Matrix& x) const override;

 private:
  std::int64_t clusters_;
  Matrix centroids_;  // k x p
};

// Multinomial logistic regression by full-batch gradient descent on
// internally standardized features.
class LogisticRegression final : public Estimator {
 public:
  LogisticRegression(double lambda, std::int64_t epochs, double step)
      : lambda_(lambda), epochs_(epochs), step_(step) {}
  ModelRole role() const override { return ModelRole::kClassifier; }

 protected:
  void do_fit(const Matrix& x, std::span<const int> labels, const FitContext& context) override;
  Matrix do_apply(const Matrix& x) const override;

 private:
  double lambda_;
  std::int64_t epochs_;
  double step_;
  Eigen::RowVectorXd mean_, scale_;
  Matrix weights_;  // p x c
  Eigen::RowVectorXd bias_;
};

// One-vs-rest ridge regression on +/-1 targets; scores pass through softmax.
class RidgeClassifier final : public Estimator {
 public:
  explicit RidgeClassifier(double lambda) : lambda_(lambda) {}
  ModelRole role() const override { return ModelRole::kClassifier; }

 protected:
  void do_fit(const Matrix& x, std::span<const int> labels, const FitContext& context) override;
  Matrix do_apply(const Matrix& x) const override;

 private:
  double lambda_;
  Matrix weights_;
  Eigen::RowVectorXd bias_;
};

class GaussianNaiveBayes final : public Estimator {
 public:
  ModelRole role() const override { return ModelRole::kClassifier; }

 protected:
  void do_fit(const Matrix& x, std::span<const int> labels, const FitContext& context) override;
  Matrix do_apply(const Matrix& x) const override;

 private:
  Matrix mean_, var_;  // c x p
  Eigen::RowVectorXd log_prior_;
};

class KnnClassifier final : public Estimator {
 public:
  KnnClassifier(std::int64_t k, bool distance_weighted) : k_(k), distance_weighted_(distance_weighted) {}
  ModelRole role() const override { return ModelRole::kClassifier; }

 protected:
  void do_fit(const Matrix& x, std::span<const int> labels, const FitContext& context) override;
  Matrix do_apply(const Matrix& x) const override;

 private:
  std::int64_t k_;
  bool distance_weighted_;
  int num_classes_ = 0;
  Matrix train_;
  Labels labels_;
};

// CART with binary threshold splits.
class DecisionTree final : public Estimator {
 public:
  enum class Criterion { kGini, kEntropy };

  DecisionTree(std::int64_t max_depth, std::int64_t min_leaf, Criterion criterion = Criterion::kGini)
      : max_depth_(max_depth), min_leaf_(min_leaf), criterion_(criterion) {}
  ModelRole role() const override { return ModelRole::kClassifier; }
  std::size_t node_count() const { return nodes_.size(); }

 protected:
  void do_fit(const Matrix& x, std::span<const int> labels, const FitContext& context) override;
  Matrix do_apply(const Matrix& x) const override;

 private:
  struct Node {
    Eigen::Index feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    std::size_t left = 0, right = 0;
    Eigen::RowVectorXd distribution;
  };

  std::size_t build(const Matrix& x, std::span<const int> labels, std::vector<Eigen::Index>& rows, std::int64_t depth,
                    const FitContext& context);

  std::int64_t max_depth_;
  std::int64_t min_leaf_;
  Criterion criterion_;
  int num_classes_ = 0;
  std::vector<Node> nodes_;
};

// One-vs-rest linear SVM: hinge loss plus L2 penalty by subgradient descent on
// internally standardized features. Margins pass through softmax.
class LinearSvm final : public Estimator {
 public:
  LinearSvm(double lambda, std::int64_t epochs) : lambda_(lambda), epochs_(epochs) {}
  ModelRole role() const override { return ModelRole::kClassifier; }

 protected:
  void do_fit(const Matrix& x, std::span<const int> labels, const FitContext& context) override;
  Matrix do_apply(const Matrix& x) const override;

 private:
  double lambda_;
  std::int64_t epochs_;
  Eigen::RowVectorXd mean_, scale_;
  Matrix weights_;
  Eigen::RowVectorXd bias_;
};

class RidgeRegressor final : public Estimator {
 public:
  explicit RidgeRegressor(double lambda) : lambda_(lambda) {}
  ModelRole role() const override { return ModelRole::kRegressor; }
  // Fits real-valued targets directly.
  void fit_targets(const Matrix& x, const Vector& y);

 protected:
  void do_fit(const Matrix& x, std::span<const int> labels, const FitContext& context) override;
  Matrix do_apply(const Matrix& x) const override;

 private:
  double lambda_;
  Vector weights_;
  double bias_ = 0.0;
};

class KnnRegressor final : public Estimator {
 public:
  explicit KnnRegressor(std::int64_t k) : k_(k) {}
  ModelRole role() const override { return ModelRole::kRegressor; }

 protected:
  void do_fit(const Matrix& x, std::span<const int> labels, const FitContext& context) override;
  Matrix do_apply(const Matrix& x) const override;

 private:
  std::int64_t k_;
  Matrix train_;
  Vector targets_;
};

// Ridge solution of min ||X W + 1 b - Y||^2 + lambda ||W||^2 with an
// unpenalized intercept. Singular Gram matrices fall back to a pseudo-inverse
// that drops eigenvalues below 1e-10 of the largest.
struct LinearFit {
  Matrix weights;  // p x t
  Eigen::RowVectorXd bias;  // 1 x t
};
LinearFit ridge_solve(const Matrix& x, const Matrix& y, double lambda);

}  // namespace graphevo

#endif  // GRAPHEVO_MODELS_HPP_
