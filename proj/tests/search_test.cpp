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

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "graphevo/errors.hpp"
#include "graphevo/io.hpp"
#include "graphevo/search.hpp"
#include "test_support.hpp"

namespace graphevo {
namespace {

Individual scored(std::uint64_t id, double fitness) {
  Individual ind;
  ind.id = id;
  ind.graph = testing::chain3();
  ind.fitness = fitness;
  ind.status = Status::kEvaluated;
  return ind;
}

SearchConfig small_config(std::size_t population, std::size_t generations, std::uint64_t seed) {
  SearchConfig c;
  c.population = population;
  c.generations = generations;
  c.seed = seed;
  c.folds = 3;
  return c;
}

TEST(EvaluateFitness, PerfectGraphWithoutPenalty) {
  const auto d = testing::clouds(60, 2, 30.0, 1);
  const Graph g = canonicalize(testing::make_graph({"input", "gaussian_nb"}, {{1, 2}}));
  const auto e = evaluate_fitness(g, d, 0.0, 3, 60.0, Rng(1));
  EXPECT_EQ(e.status, Status::kEvaluated);
  EXPECT_EQ(e.fitness, 0.0);
}

TEST(EvaluateFitness, LossPlusWeightedComplexity) {
  const auto d = testing::clouds(60, 2, 1.0, 2);
  const Graph g = testing::diamond();
  const auto e = evaluate_fitness(g, d, 0.01, 3, 60.0, Rng(2));
  EXPECT_EQ(e.fitness, e.loss + 0.01 * static_cast<double>(complexity(g)));
  EXPECT_EQ(e.loss, 1.0 - e.balanced_accuracy);
}

TEST(EvaluateFitness, TimeBudgetExceeded) {
  const auto d = testing::clouds(200, 4, 1.0, 3);
  const auto e = evaluate_fitness(testing::chain3(), d, 0.001, 5, 1e-9, Rng(3));
  EXPECT_EQ(e.status, Status::kDroppedTimeout);
  EXPECT_TRUE(std::isinf(e.fitness));
}

TEST(AllocateSlots, LargestRemainder) {
  const auto twenty = allocate_slots(20, OperatorMix{});
  EXPECT_EQ(twenty.random, 6u);
  EXPECT_EQ(twenty.heredity, 8u);
  EXPECT_EQ(twenty.mutation, 6u);
  const auto twelve = allocate_slots(12, OperatorMix{});
  EXPECT_EQ(twelve.random, 4u);
  EXPECT_EQ(twelve.heredity, 5u);
  EXPECT_EQ(twelve.mutation, 3u);
  for (std::size_t n = 1; n < 60; ++n) {
    const auto s = allocate_slots(n, OperatorMix{});
    ASSERT_EQ(s.random + s.heredity + s.mutation, n);
  }
}

TEST(TournamentSelect, SubgroupOfOneIsUniform) {
  std::vector<Individual> pop;
  for (std::uint64_t i = 0; i < 5; ++i) pop.push_back(scored(i, 0.1 * static_cast<double>(i)));
  Rng rng(1);
  std::map<std::uint64_t, int> counts;
  for (int t = 0; t < 5000; ++t) counts[tournament_select(pop, 1, rng).id] += 1;
  ASSERT_EQ(counts.size(), 5u);
  for (const auto& [id, c] : counts) EXPECT_NEAR(c, 1000, 150);
}

TEST(TournamentSelect, FullSubgroupIsGlobalBest) {
  std::vector<Individual> pop{scored(1, 0.4), scored(2, 0.1), scored(3, 0.3)};
  Rng rng(2);
  EXPECT_EQ(tournament_select(pop, 3, rng).id, 2u);
  EXPECT_EQ(tournament_select(pop, 10, rng).id, 2u);
}

TEST(TournamentSelect, ReplayedTriple) {
  std::vector<Individual> pop;
  const std::vector<double> fitness{0.5, 0.2, 0.9, 0.4, 0.3};
  for (std::uint64_t i = 0; i < 5; ++i) pop.push_back(scored(i, fitness[i]));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    // Replay the stream: three draws without replacement by partial shuffle.
    Rng replay(seed, StreamId{4, 4});
    std::vector<std::size_t> idx{0, 1, 2, 3, 4};
    for (std::size_t i = 0; i < 3; ++i) std::swap(idx[i], idx[i + replay.index(5 - i)]);
    std::size_t expected = idx[0];
    for (std::size_t i = 1; i < 3; ++i) {
      if (fitness[idx[i]] < fitness[expected]) expected = idx[i];
    }
    Rng rng(seed, StreamId{4, 4});
    EXPECT_EQ(tournament_select(pop, 3, rng).id, expected);
  }
}

TEST(TournamentSelect, EmptyThrows) {
  Rng rng(1);
  EXPECT_THROW(tournament_select(std::vector<Individual>{}, 2, rng), EmptyPopulation);
}

TEST(SearchConfig, Validation) {
  SearchConfig c;
  EXPECT_NO_THROW(c.check());
  c.mix.random = 0.5;
  EXPECT_THROW(c.check(), ConfigError);
  c = SearchConfig{};
  c.population = 3;
  c.generations = 2;
  EXPECT_THROW(c.check(), ConfigError);
  c = SearchConfig{};
  c.tournament_size = 50;
  EXPECT_THROW(c.check(), ConfigError);
  c = SearchConfig{};
  c.mix = {-0.1, 0.6, 0.5};
  EXPECT_THROW(c.check(), ConfigError);
  EXPECT_EQ(SearchConfig{}.tournament_subgroup(), 3u);  // ceil(0.2 * 12)
}

TEST(NextGeneration, FirstGenerationAllRandom) {
  const auto plan = next_generation(1, {}, {}, small_config(40, 2, 5));
  ASSERT_EQ(plan.proposals.size(), 20u);
  for (const auto& p : plan.proposals) EXPECT_EQ(p.kind, OperatorKind::kRandom);
  EXPECT_TRUE(plan.carried.empty());
}

TEST(NextGeneration, SlotMixAndCarriedIndividuals) {
  std::vector<Individual> prev;
  for (std::uint64_t i = 0; i < 20; ++i) {
    prev.push_back(scored(i + 1, 0.01 * static_cast<double>(i + 1)));
    prev.back().graph = i % 2 == 0 ? testing::chain3() : testing::diamond();
  }
  const auto plan = next_generation(2, prev, {}, small_config(40, 2, 6));
  ASSERT_EQ(plan.proposals.size(), 20u);
  std::size_t heredity = 0, mutation = 0, random = 0;
  for (const auto& p : plan.proposals) {
    if (p.kind == OperatorKind::kHeredity) {
      ++heredity;
    } else if (p.kind == OperatorKind::kRandom) {
      ++random;
    } else {
      ++mutation;
    }
    if (p.graph && p.kind != OperatorKind::kRandom) {
      EXPECT_FALSE(p.parents.empty());
    }
  }
  EXPECT_EQ(heredity, 8u);
  EXPECT_EQ(mutation, 6u);
  EXPECT_EQ(random, 6u);
  ASSERT_EQ(plan.carried.size(), 3u);
  for (const auto& c : plan.carried) {
    EXPECT_EQ(c.status, Status::kKept);
    EXPECT_EQ(c.provenance, OperatorKind::kKeepBest);
    EXPECT_FALSE(c.retrain);
  }
  EXPECT_EQ(plan.carried[0].id, 1u);
}

TEST(NextGeneration, DeterministicPerSeed) {
  std::vector<Individual> prev{scored(1, 0.2), scored(2, 0.3)};
  prev[1].graph = testing::diamond();
  const auto a = next_generation(3, prev, {}, small_config(20, 2, 9));
  const auto b = next_generation(3, prev, {}, small_config(20, 2, 9));
  ASSERT_EQ(a.proposals.size(), b.proposals.size());
  for (std::size_t i = 0; i < a.proposals.size(); ++i) {
    EXPECT_EQ(a.proposals[i].graph, b.proposals[i].graph);
    EXPECT_EQ(a.proposals[i].kind, b.proposals[i].kind);
  }
}

std::string telemetry_of(const SearchResult& r) {
  std::ostringstream out;
  const auto rows = r.all_members();
  write_telemetry(out, rows);
  return out.str();
}

TEST(RunSearch, BudgetMonotonicityAndDecomposition) {
  const auto d = testing::clouds(90, 3, 1.5, 4);
  const auto config = small_config(24, 4, 11);
  const auto result = run_search(d, config);
  EXPECT_LE(result.evaluated, 24u);
  EXPECT_LE(result.generations.size(), 4u);

  double best_so_far = kInfinity;
  std::size_t evaluated_rows = 0;
  for (const auto& g : result.generations) {
    double gen_best = kInfinity;
    for (const auto& ind : g.members) {
      if (ind.status == Status::kEvaluated) {
        ++evaluated_rows;
        EXPECT_EQ(ind.fitness, ind.loss + config.alpha * static_cast<double>(complexity(ind.graph)));
        EXPECT_TRUE(is_valid(ind.graph, config.limits));
      }
      if (ind.status == Status::kDroppedInvalid || ind.status == Status::kDroppedTimeout) {
        EXPECT_TRUE(std::isinf(ind.fitness));
      }
      if (ind.has_fitness()) gen_best = std::min(gen_best, ind.fitness);
    }
    const double next = std::min(best_so_far, gen_best);
    if (g.index > 1) {
      EXPECT_LE(gen_best, best_so_far);  // the incumbent is carried
    }
    best_so_far = next;
  }
  EXPECT_EQ(evaluated_rows, result.evaluated);
  EXPECT_EQ(result.best.fitness, best_so_far);
}

TEST(RunSearch, SameSeedSameTelemetry) {
  const auto d = testing::clouds(60, 2, 1.0, 5);
  const auto config = small_config(12, 3, 12);
  EXPECT_EQ(telemetry_of(run_search(d, config)), telemetry_of(run_search(d, config)));
}

TEST(RunSearch, ConcurrentEvaluationMatchesSerial) {
  const auto d = testing::clouds(60, 2, 1.0, 6);
  auto config = small_config(12, 3, 13);
  const auto serial = telemetry_of(run_search(d, config));
  config.threads = 4;
  EXPECT_EQ(telemetry_of(run_search(d, config)), serial);
}

TEST(RunSearch, GenerationOfTwoKeepsOne) {
  const auto d = testing::clouds(40, 2, 2.0, 7);
  const auto result = run_search(d, small_config(6, 3, 14));
  ASSERT_GE(result.generations.size(), 2u);
  for (const auto& g : result.generations) EXPECT_LE(g.kept_ids.size(), 1u);
  std::size_t carried = 0;
  for (const auto& ind : result.generations[1].members) carried += ind.status == Status::kKept ? 1 : 0;
  EXPECT_LE(carried, 1u);
}

TEST(RunSearch, SelectionPoolBoundedToRecentGenerations) {
  const auto d = testing::clouds(60, 2, 1.0, 8);
  const auto result = run_search(d, small_config(30, 5, 15));
  std::map<std::uint64_t, int> born;
  for (const auto& g : result.generations) {
    for (const auto& ind : g.members) {
      if (ind.status != Status::kKept) born[ind.id] = g.index;
    }
  }
  for (const auto& g : result.generations) {
    for (const auto& ind : g.members) {
      for (auto parent : ind.parents) {
        if (ind.status == Status::kKept) continue;
        // Parents come from the previous generation or were carried through it.
        const bool recent = born[parent] >= g.index - 2;
        const bool carried_forward = std::any_of(
            result.generations[static_cast<std::size_t>(g.index - 2)].members.begin(),
            result.generations[static_cast<std::size_t>(g.index - 2)].members.end(),
            [&](const Individual& m) { return m.id == parent; });
        EXPECT_TRUE(recent || carried_forward) << "parent " << parent << " of " << ind.id;
      }
    }
  }
}

TEST(RunSearch, RejectsBadInputs) {
  Dataset empty;
  EXPECT_THROW(run_search(empty, SearchConfig{}), DatasetError);
  auto bad = SearchConfig{};
  bad.folds = 1;
  EXPECT_THROW(run_search(testing::clouds(40, 2, 1.0, 1), bad), ConfigError);
}

TEST(EffectiveThreads, EnvironmentCap) {
  ::setenv("GRAPHEVO_THREADS", "2", 1);
  EXPECT_EQ(effective_threads(8), 2u);
  EXPECT_EQ(effective_threads(1), 1u);
  ::unsetenv("GRAPHEVO_THREADS");
  EXPECT_EQ(effective_threads(8), 8u);
}

}  // namespace
}  // namespace graphevo
