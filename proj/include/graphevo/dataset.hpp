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

#ifndef GRAPHEVO_DATASET_HPP_
#define GRAPHEVO_DATASET_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "graphevo/estimator.hpp"

namespace graphevo {

// Classification data: features, class ids in [0, classes), class names in
// sorted order.
struct Dataset {
  Matrix features;
  Labels labels;
  std::vector<std::string> class_names;
  std::vector<std::string> feature_names;

  std::size_t size() const { return labels.size(); }
  int num_classes() const { return static_cast<int>(class_names.size()); }
  std::vector<std::size_t> class_counts() const;

  // Throws DatasetError unless rows match, values are finite, labels are in
  // range and at least two classes exist.
  void check() const;

  Dataset subset(std::span<const std::size_t> rows) const;
};

}  // namespace graphevo

#endif  // GRAPHEVO_DATASET_HPP_
