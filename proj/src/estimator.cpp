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

#include "graphevo/estimator.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "graphevo/errors.hpp"

namespace graphevo {

Deadline::Deadline(double seconds)
    : end_(Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds))) {}

void Deadline::check() const {
  if (expired()) throw TimeoutExceeded("training time budget exhausted");
}

void Estimator::fit(const Matrix& x, std::span<const int> labels, const FitContext& context) {
  if (x.rows() == 0) throw TrainingFailure("cannot fit on an empty matrix");
  const ModelRole r = role();
  if (is_predictive(r)) {
    if (labels.size() != static_cast<std::size_t>(x.rows())) {
      throw ShapeMismatch(fmt::format("{} labels for {} rows", labels.size(), x.rows()));
    }
  }
  context.check_deadline();
  do_fit(x, labels, context);
  fitted_ = true;
  input_width_ = x.cols();
}

Matrix Estimator::apply(const Matrix& x) const {
  if (!fitted_) throw std::logic_error("apply() called before fit()");
  if (x.cols() != input_width_) {
    throw ShapeMismatch(fmt::format("fitted on {} columns, applied to {}", input_width_, x.cols()));
  }
  Matrix out = do_apply(x);
  if (out.rows() != x.rows()) throw std::logic_error("estimator changed the row count");
  if (!out.allFinite()) throw TrainingFailure("estimator produced non-finite output");
  return out;
}

Matrix softmax_rows(const Matrix& scores) {
  Matrix out(scores.rows(), scores.cols());
  for (Eigen::Index r = 0; r < scores.rows(); ++r) {
    const double top = scores.row(r).maxCoeff();
    double total = 0.0;
    for (Eigen::Index c = 0; c < scores.cols(); ++c) {
      out(r, c) = std::exp(scores(r, c) - top);
      total += out(r, c);
    }
    out.row(r) /= total;
  }
  return out;
}

Matrix feature_union(std::span<const Matrix* const> inputs) {
  if (inputs.empty()) throw EmptyInput("feature union needs at least one input");
  const Eigen::Index rows = inputs.front()->rows();
  Eigen::Index cols = 0;
  for (const Matrix* m : inputs) {
    if (m->rows() != rows) throw ShapeMismatch(fmt::format("row counts {} and {} differ", rows, m->rows()));
    cols += m->cols();
  }
  Matrix out(rows, cols);
  Eigen::Index offset = 0;
  for (const Matrix* m : inputs) {
    out.middleCols(offset, m->cols()) = *m;
    offset += m->cols();
  }
  return out;
}

Matrix feature_union(const std::vector<Matrix>& inputs) {
  std::vector<const Matrix*> ptrs;
  ptrs.reserve(inputs.size());
  for (const auto& m : inputs) ptrs.push_back(&m);
  return feature_union(std::span<const Matrix* const>(ptrs));
}

}  // namespace graphevo
