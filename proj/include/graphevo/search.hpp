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

// Generation loop: tournament selection, operator mix, keep-best carry-over
// and budgeted fitness evaluation.
//
// Every population slot draws from its own stream (generation, slot) under
// the master seed and every fitness evaluation uses the same cross-validation
// stream, so results do not depend on how many evaluator threads run.

#ifndef GRAPHEVO_SEARCH_HPP_
#define GRAPHEVO_SEARCH_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "graphevo/dataset.hpp"
#include "graphevo/graph.hpp"
#include "graphevo/individual.hpp"
#include "graphevo/model_spec.hpp"
#include "graphevo/operators.hpp"
#include "graphevo/rng.hpp"

namespace graphevo {

struct OperatorMix {
  double random = 0.30;
  double heredity = 0.40;
  double mutation = 0.30;
};

struct SearchConfig {
  std::size_t population = 120;  // budget of evaluated individuals
  std::size_t generations = 10;
  OperatorMix mix;
  double keep_best_fraction = 0.15;
  std::size_t tournament_size = 0;  // 0 selects max(2, ceil(0.2 * generation size))
  EdgeSampling sampling;
  double alpha = 0.001;
  GraphLimits limits;
  int folds = 5;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  double wall_clock_seconds = 0.0;  // 0 disables the wall-clock stop
  std::size_t bho_trials = 40;
  std::size_t bho_top = 5;
  double train_ratio = 0.8;
  std::vector<ModelSpec> model_set;  // empty selects the full catalog

  std::size_t generation_size() const { return generations == 0 ? 0 : population / generations; }
  std::size_t tournament_subgroup() const;
  std::vector<ModelSpec> models() const;

  // Throws ConfigError on inconsistent settings.
  void check() const;
};

struct SlotCounts {
  std::size_t random = 0;
  std::size_t heredity = 0;
  std::size_t mutation = 0;
};

// Largest-remainder apportionment of a generation; ties favour random, then
// heredity, then mutation.
SlotCounts allocate_slots(std::size_t generation_size, const OperatorMix& mix);

struct Evaluation {
  Status status = Status::kDroppedInvalid;
  double fitness = kInfinity;
  double loss = kInfinity;
  double balanced_accuracy = 0.0;
  double seconds = 0.0;
};

// Cross-validated loss plus alpha * complexity. Numeric failures yield
// kDroppedInvalid; exceeding `time_budget` yields kDroppedTimeout.
Evaluation evaluate_fitness(const Graph& graph, const Dataset& data, double alpha, int folds, double time_budget,
                            Rng cv_rng);

// Best of `subgroup_size` distinct uniformly drawn candidates (all of them if
// fewer). Throws EmptyPopulation.
const Individual& tournament_select(std::span<const Individual> candidates, std::size_t subgroup_size, Rng& rng);

struct Proposal {
  std::optional<Graph> graph;  // empty when the slot was dropped
  OperatorKind kind = OperatorKind::kRandom;
  std::vector<std::uint64_t> parents;
  std::size_t attempts = 0;
};

struct GenerationPlan {
  std::vector<Proposal> proposals;  // heredity, then mutation, then random slots
  std::vector<Individual> carried;  // keep-best of the previous generation
};

// Builds generation `index` (1-based). Generation 1 is all random. Later
// generations select parents from `previous` plus `kept_before_previous`.
GenerationPlan next_generation(int index, std::span<const Individual> previous,
                               std::span<const Individual> kept_before_previous, const SearchConfig& config);

struct GenerationRecord {
  int index = 0;
  std::vector<Individual> members;  // in slot order, carried individuals last
  std::vector<std::uint64_t> kept_ids;
};

struct SearchResult {
  std::vector<GenerationRecord> generations;
  Individual best;
  std::size_t evaluated = 0;

  std::vector<Individual> all_members() const;
  const GenerationRecord& final_generation() const { return generations.back(); }
};

struct SearchObserver {
  // Called on the driver thread, in generation and slot order.
  std::function<void(const Individual&)> on_individual;
};

// Throws DatasetError or ConfigError.
SearchResult run_search(const Dataset& data, const SearchConfig& config, const SearchObserver& observer = {});

// Evaluator threads after applying the GRAPHEVO_THREADS cap, if set.
std::size_t effective_threads(std::size_t requested);

}  // namespace graphevo

#endif  // GRAPHEVO_SEARCH_HPP_
