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

#include "graphevo/individual.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "graphevo/errors.hpp"

namespace graphevo {

std::string_view to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::kRandom: return "random";
    case OperatorKind::kVertexMutation: return "vertex_mutation";
    case OperatorKind::kEdgeMutation: return "edge_mutation";
    case OperatorKind::kLayerMutation: return "layer_mutation";
    case OperatorKind::kHeredity: return "heredity";
    case OperatorKind::kKeepBest: return "keep_best";
  }
  return "unknown";
}

OperatorKind parse_operator(std::string_view text) {
  for (auto kind : {OperatorKind::kRandom, OperatorKind::kVertexMutation, OperatorKind::kEdgeMutation,
                    OperatorKind::kLayerMutation, OperatorKind::kHeredity, OperatorKind::kKeepBest}) {
    if (to_string(kind) == text) return kind;
  }
  throw ParseError(fmt::format("unknown operator '{}'", text));
}

std::string_view to_string(Status status) {
  switch (status) {
    case Status::kEvaluated: return "evaluated";
    case Status::kKept: return "kept";
    case Status::kDroppedInvalid: return "dropped_invalid";
    case Status::kDroppedTimeout: return "dropped_timeout";
  }
  return "unknown";
}

Status parse_status(std::string_view text) {
  for (auto status : {Status::kEvaluated, Status::kKept, Status::kDroppedInvalid, Status::kDroppedTimeout}) {
    if (to_string(status) == text) return status;
  }
  throw ParseError(fmt::format("unknown status '{}'", text));
}

bool better_than(const Individual& a, const Individual& b) {
  if (a.fitness != b.fitness) return a.fitness < b.fitness;
  const std::size_t ca = complexity(a.graph);
  const std::size_t cb = complexity(b.graph);
  if (ca != cb) return ca < cb;
  return a.id < b.id;
}

std::size_t keep_count(std::size_t population, double fraction) {
  // The small slack absorbs representation error (0.15 * 20 must give 3).
  return static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(population) - 1e-9));
}

std::vector<Individual> select_best(std::span<const Individual> population, std::size_t count) {
  if (population.empty()) throw EmptyPopulation("cannot select from an empty population");
  std::vector<Individual> eligible;
  for (const auto& individual : population) {
    if (individual.has_fitness() && std::isfinite(individual.fitness)) eligible.push_back(individual);
  }
  std::sort(eligible.begin(), eligible.end(), better_than);
  if (eligible.size() > count) eligible.resize(count);
  for (auto& individual : eligible) individual.retrain = false;
  return eligible;
}

std::vector<Individual> keep_best(std::span<const Individual> population, double fraction) {
  return select_best(population, keep_count(population.size(), fraction));
}

}  // namespace graphevo
