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

#ifndef GRAPHEVO_ESTIMATOR_HPP_
#define GRAPHEVO_ESTIMATOR_HPP_

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "graphevo/model_spec.hpp"

namespace graphevo {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Labels = std::vector<int>;

// Wall-clock budget shared by everything trained for one graph.
class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  Deadline() = default;  // unlimited
  explicit Deadline(double seconds);

  bool expired() const { return end_ && Clock::now() >= *end_; }
  // Throws TimeoutExceeded once the budget is spent.
  void check() const;

 private:
  std::optional<Clock::time_point> end_;
};

struct FitContext {
  int num_classes = 2;
  std::uint64_t seed = 0;
  const Deadline* deadline = nullptr;

  void check_deadline() const {
    if (deadline) deadline->check();
  }
};

// Uniform fit/apply contract for every primitive model.
//
// fit() receives the vertex's feature matrix and, for supervised roles, the
// class ids of every row. apply() maps any matrix with the fitted column count
// to an output matrix with the same number of rows.
class Estimator {
 public:
  virtual ~Estimator() = default;

  void fit(const Matrix& x, std::span<const int> labels, const FitContext& context);
  Matrix apply(const Matrix& x) const;

  bool fitted() const { return fitted_; }
  Eigen::Index input_width() const { return input_width_; }
  virtual ModelRole role() const = 0;

 protected:
  virtual void do_fit(const Matrix& x, std::span<const int> labels, const FitContext& context) = 0;
  virtual Matrix do_apply(const Matrix& x) const = 0;

 private:
  bool fitted_ = false;
  Eigen::Index input_width_ = 0;
};

// Row-wise softmax of decision scores; each row sums to one.
Matrix softmax_rows(const Matrix& scores);

// Column-wise concatenation in the given order. Throws ShapeMismatch on
// differing row counts and EmptyInput when `inputs` is empty.
Matrix feature_union(std::span<const Matrix* const> inputs);
Matrix feature_union(const std::vector<Matrix>& inputs);

}  // namespace graphevo

#endif  // GRAPHEVO_ESTIMATOR_HPP_
