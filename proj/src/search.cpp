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

#include "graphevo/search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

#include <fmt/format.h>

#include "graphevo/errors.hpp"
#include "graphevo/model_zoo.hpp"
#include "graphevo/pipeline.hpp"

namespace graphevo {

std::size_t SearchConfig::tournament_subgroup() const {
  if (tournament_size > 0) return tournament_size;
  const auto twenty_percent = static_cast<std::size_t>(std::ceil(0.2 * static_cast<double>(generation_size()) - 1e-9));
  return std::max<std::size_t>(2, twenty_percent);
}

std::vector<ModelSpec> SearchConfig::models() const { return model_set.empty() ? default_model_set() : model_set; }

void SearchConfig::check() const {
  limits.check();
  if (generations == 0) throw ConfigError("generations must be positive");
  if (generation_size() < 2) {
    throw ConfigError(fmt::format("population {} over {} generations leaves fewer than 2 per generation", population,
                                  generations));
  }
  for (double f : {mix.random, mix.heredity, mix.mutation}) {
    if (!(f >= 0.0)) throw ConfigError("operator fractions must be non-negative");
  }
  if (std::abs(mix.random + mix.heredity + mix.mutation - 1.0) > 1e-9) {
    throw ConfigError("operator fractions must sum to 1");
  }
  if (!(keep_best_fraction >= 0.0 && keep_best_fraction <= 1.0)) throw ConfigError("keep-best fraction outside [0, 1]");
  const std::size_t subgroup = tournament_subgroup();
  if (subgroup < 1 || (tournament_size > 0 && subgroup > generation_size())) {
    throw ConfigError("tournament size must lie in [1, generation size]");
  }
  if (!(sampling.p0 > 0.0 && sampling.p0 <= 1.0)) throw ConfigError("p0 must lie in (0, 1]");
  if (!(sampling.gamma >= 0.0)) throw ConfigError("gamma must be non-negative");
  if (!(sampling.rho >= 0.0 && sampling.rho < 1.0)) throw ConfigError("rho must lie in [0, 1)");
  if (!(alpha >= 0.0)) throw ConfigError("alpha must be non-negative");
  if (folds < 2) throw ConfigError("folds must be at least 2");
  if (!(train_ratio > 0.0 && train_ratio < 1.0)) throw ConfigError("train ratio must lie in (0, 1)");
  if (wall_clock_seconds < 0.0) throw ConfigError("wall-clock limit must be non-negative");
  const auto models_in_use = models();
  if (std::none_of(models_in_use.begin(), models_in_use.end(),
                   [](const ModelSpec& m) { return m.role == ModelRole::kClassifier; })) {
    throw ConfigError("model set contains no classifier");
  }
}

SlotCounts allocate_slots(std::size_t generation_size, const OperatorMix& mix) {
  const double n = static_cast<double>(generation_size);
  const std::array<double, 3> share{mix.random * n, mix.heredity * n, mix.mutation * n};
  std::array<std::size_t, 3> count{};
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    count[i] = static_cast<std::size_t>(std::floor(share[i] + 1e-9));
    assigned += count[i];
  }
  std::array<std::size_t, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return share[a] - static_cast<double>(count[a]) > share[b] - static_cast<double>(count[b]) + 1e-12;
  });
  for (std::size_t r = 0; assigned < generation_size; ++r, ++assigned) ++count[order[r % 3]];
  return {count[0], count[1], count[2]};
}

Evaluation evaluate_fitness(const Graph& graph, const Dataset& data, double alpha, int folds, double time_budget,
                            Rng cv_rng) {
  Evaluation result;
  const auto start = std::chrono::steady_clock::now();
  try {
    const auto cv = cross_validate(graph, data, folds, time_budget, cv_rng);
    result.status = Status::kEvaluated;
    result.loss = cv.loss;
    result.balanced_accuracy = cv.balanced_accuracy;
    result.fitness = cv.loss + alpha * static_cast<double>(complexity(graph));
  } catch (const TimeoutExceeded&) {
    result.status = Status::kDroppedTimeout;
  } catch (const Error&) {
    result.status = Status::kDroppedInvalid;
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (result.status == Status::kEvaluated && result.seconds > time_budget) {
    result = Evaluation{Status::kDroppedTimeout, kInfinity, kInfinity, 0.0, result.seconds};
  }
  return result;
}

const Individual& tournament_select(std::span<const Individual> candidates, std::size_t subgroup_size, Rng& rng) {
  if (candidates.empty()) throw EmptyPopulation("tournament over an empty pool");
  std::vector<std::size_t> index(candidates.size());
  std::iota(index.begin(), index.end(), std::size_t{0});
  const std::size_t draws = std::min(std::max<std::size_t>(subgroup_size, 1), candidates.size());
  // Partial Fisher-Yates: the first `draws` entries become a uniform sample
  // without replacement.
  for (std::size_t i = 0; i < draws; ++i) std::swap(index[i], index[i + rng.index(index.size() - i)]);
  std::size_t best = index[0];
  for (std::size_t i = 1; i < draws; ++i) {
    if (better_than(candidates[index[i]], candidates[best])) best = index[i];
  }
  return candidates[best];
}

namespace {

enum class MutationKind { kVertex, kEdge, kLayer };

OperatorKind to_operator(MutationKind kind) {
  switch (kind) {
    case MutationKind::kVertex: return OperatorKind::kVertexMutation;
    case MutationKind::kEdge: return OperatorKind::kEdgeMutation;
    case MutationKind::kLayer: return OperatorKind::kLayerMutation;
  }
  return OperatorKind::kVertexMutation;
}

Proposal propose(OperatorKind kind, std::span<const Individual> pool, const SearchConfig& config,
                 std::span<const ModelSpec> models, Rng& rng) {
  Proposal proposal;
  proposal.kind = kind;
  std::vector<std::uint64_t> parents;
  const std::size_t subgroup = config.tournament_subgroup();

  RetrialOutcome outcome;
  switch (kind) {
    case OperatorKind::kRandom:
      outcome = with_retrials([&](Rng& r) { return random_graph(config.limits, models, config.sampling, r); },
                              config.limits, rng);
      break;
    case OperatorKind::kHeredity:
      outcome = with_retrials(
          [&](Rng& r) {
            const Individual& a = tournament_select(pool, subgroup, r);
            const Individual& b = tournament_select(pool, subgroup, r);
            parents = {a.id, b.id};
            return heredity(a.graph, b.graph, config.sampling, r);
          },
          config.limits, rng);
      break;
    case OperatorKind::kVertexMutation:
    case OperatorKind::kEdgeMutation:
    case OperatorKind::kLayerMutation:
      outcome = with_retrials(
          [&](Rng& r) {
            const Individual& parent = tournament_select(pool, subgroup, r);
            parents = {parent.id};
            if (kind == OperatorKind::kVertexMutation) return vertex_mutation(parent.graph, models, r);
            if (kind == OperatorKind::kEdgeMutation) return edge_mutation(parent.graph, r);
            return layer_mutation(parent.graph, models, config.sampling, r);
          },
          config.limits, rng);
      break;
    case OperatorKind::kKeepBest:
      throw ConfigError("keep-best is not a slot operator");
  }
  proposal.graph = std::move(outcome.graph);
  proposal.attempts = outcome.attempts;
  if (proposal.graph) proposal.parents = std::move(parents);
  return proposal;
}

}  // namespace

GenerationPlan next_generation(int index, std::span<const Individual> previous,
                               std::span<const Individual> kept_before_previous, const SearchConfig& config) {
  const auto models = config.models();
  const std::size_t size = config.generation_size();
  GenerationPlan plan;

  std::vector<OperatorKind> slots;
  if (index <= 1) {
    slots.assign(size, OperatorKind::kRandom);
  } else {
    const auto counts = allocate_slots(size, config.mix);
    slots.insert(slots.end(), counts.heredity, OperatorKind::kHeredity);
    slots.insert(slots.end(), counts.mutation, OperatorKind::kVertexMutation);  // kind drawn per slot below
    slots.insert(slots.end(), counts.random, OperatorKind::kRandom);
  }

  std::vector<Individual> pool;
  std::set<std::uint64_t> seen;
  for (auto source : {previous, kept_before_previous}) {
    for (const auto& individual : source) {
      if (individual.has_fitness() && std::isfinite(individual.fitness) && seen.insert(individual.id).second) {
        pool.push_back(individual);
      }
    }
  }

  for (std::size_t slot = 0; slot < slots.size(); ++slot) {
    Rng rng(config.seed, StreamId{static_cast<std::uint64_t>(index), slot});
    OperatorKind kind = slots[slot];
    if (kind == OperatorKind::kVertexMutation) {
      kind = to_operator(static_cast<MutationKind>(rng.index(3)));
    }
    plan.proposals.push_back(propose(kind, pool, config, models, rng));
  }

  if (index > 1 && !previous.empty()) {
    plan.carried = select_best(previous, keep_count(size, config.keep_best_fraction));
    for (auto& individual : plan.carried) {
      individual.provenance = OperatorKind::kKeepBest;
      individual.status = Status::kKept;
      individual.generation = index;
      individual.wall_seconds = 0.0;
    }
  }
  return plan;
}

std::vector<Individual> SearchResult::all_members() const {
  std::vector<Individual> out;
  for (const auto& g : generations) out.insert(out.end(), g.members.begin(), g.members.end());
  return out;
}

std::size_t effective_threads(std::size_t requested) {
  std::size_t threads = std::max<std::size_t>(requested, 1);
  if (const char* cap = std::getenv("GRAPHEVO_THREADS")) {
    char* end = nullptr;
    const unsigned long value = std::strtoul(cap, &end, 10);
    if (end != cap && value > 0) threads = std::min<std::size_t>(threads, value);
  }
  return threads;
}

namespace {

// Runs `work(i)` for i in [0, count) on up to `threads` threads. The first
// exception is rethrown after all workers finish.
template <class Work>
void parallel_for(std::size_t count, std::size_t threads, Work&& work) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) work(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  for (std::size_t t = 0; t < std::min(threads, count); ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          work(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

SearchResult run_search(const Dataset& data, const SearchConfig& config, const SearchObserver& observer) {
  data.check();
  config.check();
  const auto started = std::chrono::steady_clock::now();
  const Rng cv_rng(config.seed, StreamId{streams::kCrossValidation, 0});
  const std::size_t threads = effective_threads(config.threads);

  SearchResult result;
  std::uint64_t next_id = 1;
  std::vector<Individual> previous;
  std::vector<Individual> kept_before_previous;
  std::vector<Individual> kept_previous;

  for (std::size_t g = 1; g <= config.generations; ++g) {
    if (result.evaluated >= config.population) break;
    if (config.wall_clock_seconds > 0.0 &&
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count() >= config.wall_clock_seconds) {
      break;
    }

    auto plan = next_generation(static_cast<int>(g), previous, kept_before_previous, config);
    GenerationRecord record;
    record.index = static_cast<int>(g);

    std::vector<std::size_t> pending;
    for (auto& proposal : plan.proposals) {
      if (proposal.graph && result.evaluated + pending.size() >= config.population) continue;
      Individual individual;
      individual.id = next_id++;
      individual.provenance = proposal.kind;
      individual.parents = proposal.parents;
      individual.generation = static_cast<int>(g);
      if (proposal.graph) {
        individual.graph = std::move(*proposal.graph);
        pending.push_back(record.members.size());
      } else {
        individual.status = Status::kDroppedInvalid;
      }
      record.members.push_back(std::move(individual));
    }

    parallel_for(pending.size(), threads, [&](std::size_t i) {
      Individual& individual = record.members[pending[i]];
      const auto eval = evaluate_fitness(individual.graph, data, config.alpha, config.folds,
                                         config.limits.max_train_seconds, cv_rng);
      individual.status = eval.status;
      individual.fitness = eval.fitness;
      individual.loss = eval.loss;
      individual.balanced_accuracy = eval.balanced_accuracy;
      individual.wall_seconds = eval.seconds;
    });
    result.evaluated += pending.size();

    for (auto& carried : plan.carried) record.members.push_back(std::move(carried));

    const auto kept = select_best(record.members, keep_count(config.generation_size(), config.keep_best_fraction));
    for (const auto& k : kept) record.kept_ids.push_back(k.id);

    if (observer.on_individual) {
      for (const auto& individual : record.members) observer.on_individual(individual);
    }

    kept_before_previous = std::move(kept_previous);
    kept_previous = kept;
    previous = record.members;
    result.generations.push_back(std::move(record));
  }

  bool found = false;
  for (const auto& g : result.generations) {
    for (const auto& individual : g.members) {
      if (!individual.has_fitness() || !std::isfinite(individual.fitness)) continue;
      if (!found || better_than(individual, result.best)) {
        result.best = individual;
        found = true;
      }
    }
  }
  if (!found) throw TrainingFailure("no individual could be evaluated");
  return result;
}

}  // namespace graphevo
