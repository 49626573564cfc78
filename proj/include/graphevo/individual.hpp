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

#ifndef GRAPHEVO_INDIVIDUAL_HPP_
#define GRAPHEVO_INDIVIDUAL_HPP_

#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "graphevo/graph.hpp"

namespace graphevo {

enum class OperatorKind { kRandom, kVertexMutation, kEdgeMutation, kLayerMutation, kHeredity, kKeepBest };

std::string_view to_string(OperatorKind kind);
OperatorKind parse_operator(std::string_view text);

enum class Status {
  kEvaluated,
  kKept,  // carried unchanged from the previous generation by keep-best
  kDroppedInvalid,
  kDroppedTimeout,
};

std::string_view to_string(Status status);
Status parse_status(std::string_view text);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Individual {
  std::uint64_t id = 0;
  Graph graph;
  double fitness = kInfinity;  // loss + alpha * complexity; minimized
  double loss = kInfinity;
  double balanced_accuracy = 0.0;
  OperatorKind provenance = OperatorKind::kRandom;
  std::vector<std::uint64_t> parents;
  int generation = 0;
  double wall_seconds = 0.0;
  Status status = Status::kEvaluated;
  bool retrain = true;

  bool has_fitness() const { return status == Status::kEvaluated || status == Status::kKept; }
};

// Strict ordering used wherever "best" is chosen: fitness, then complexity,
// then id.
bool better_than(const Individual& a, const Individual& b);

// The `count` best individuals with a fitness, marked as not needing
// retraining. Throws EmptyPopulation when `population` is empty.
std::vector<Individual> select_best(std::span<const Individual> population, std::size_t count);

// select_best with count = ceil(fraction * population size).
std::vector<Individual> keep_best(std::span<const Individual> population, double fraction);

std::size_t keep_count(std::size_t population, double fraction);

}  // namespace graphevo

#endif  // GRAPHEVO_INDIVIDUAL_HPP_
