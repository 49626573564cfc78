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

#include <gtest/gtest.h>

#include "graphevo/errors.hpp"
#include "graphevo/individual.hpp"
#include "graphevo/io.hpp"
#include "graphevo/model_zoo.hpp"
#include "graphevo/operators.hpp"
#include "test_support.hpp"

namespace graphevo {
namespace {

using testing::make_graph;

std::vector<ModelSpec> models() { return default_model_set(); }

Individual individual(std::uint64_t id, double fitness, Graph graph = testing::chain3()) {
  Individual ind;
  ind.id = id;
  ind.graph = std::move(graph);
  ind.fitness = fitness;
  ind.loss = fitness;
  ind.status = Status::kEvaluated;
  return ind;
}

TEST(SampleEdge, MatchesBlockProbability) {
  Rng rng(3);
  const EdgeSampling sampling;
  int hits = 0;
  const int trials = 20000;
  for (int i = 0; i < trials; ++i) hits += sample_edge(1, 3, sampling, rng) ? 1 : 0;
  const double p = connection_probability(1, 3, 0.3, 1.0);
  const double se = std::sqrt(p * (1 - p) / trials);
  EXPECT_NEAR(hits / static_cast<double>(trials), p, 3 * se);
}

TEST(SampleEdge, ThresholdSuppressesSparseBlocks) {
  Rng rng(4);
  EdgeSampling sampling;
  sampling.rho = 0.2;  // blocks with p <= 0.2 never connect
  for (int i = 0; i < 1000; ++i) ASSERT_FALSE(sample_edge(1, 3, sampling, rng));
}

TEST(RandomOp, GoldenGraphForSeed42) {
  Rng rng(42);
  const Graph g = random_op(GraphLimits{}, models(), EdgeSampling{}, rng);
  const auto expected = nlohmann::json::parse(
      R"({"depths":[1,2],"edges":[[1,2]],"format":"graphevo-graph","version":1,"vertices":[)"
      R"({"hyperparams":{},"model_id":"input","role":"input"},)"
      R"({"hyperparams":{"epochs":110,"lambda":0.0031622776601683794},"model_id":"linear_svm","role":"classifier"}]})");
  EXPECT_EQ(graph_to_json(g), expected);
  EXPECT_TRUE(is_valid(g, GraphLimits{}));
}

TEST(RandomOp, CapOfTwoGivesSingleShape) {
  GraphLimits limits;
  limits.random_vertex_cap = 2;
  for (std::uint64_t s = 0; s < 20; ++s) {
    Rng rng(s);
    const Graph g = random_op(limits, models(), EdgeSampling{}, rng);
    ASSERT_EQ(g.size(), 2u);
    ASSERT_EQ(g.edges(), (std::vector<Edge>{{0, 1}}));
    ASSERT_EQ(g.vertex(1).role, ModelRole::kClassifier);
  }
}

TEST(RandomOp, NoClassifierExhaustsRetrials) {
  GraphLimits limits;
  limits.retrials = 20;
  const std::vector<ModelSpec> set{default_spec("standard_scaler"), default_spec("pca")};
  Rng rng(1);
  EXPECT_THROW(random_op(limits, set, EdgeSampling{}, rng), RetrialExhausted);
}

// Valid random graphs with at least `min_size` vertices.
std::vector<Graph> parent_pool(std::size_t count, std::size_t min_size) {
  std::vector<Graph> out;
  const auto set = models();
  for (std::uint64_t s = 0; out.size() < count; ++s) {
    Rng rng(s, StreamId{5, 0});
    auto outcome = with_retrials([&](Rng& r) { return random_graph(GraphLimits{}, set, EdgeSampling{}, r); },
                                 GraphLimits{}, rng);
    if (outcome.graph && outcome.graph->size() >= min_size) out.push_back(*outcome.graph);
  }
  return out;
}

TEST(VertexMutation, KeepsAdjacency) {
  Rng rng(1);
  for (const Graph& g : parent_pool(50, 2)) {
    const Graph m = vertex_mutation(g, models(), rng);
    ASSERT_EQ(m.adjacency(), g.adjacency());
    ASSERT_EQ(m.depths(), g.depths());
    std::size_t changed = 0;
    for (std::size_t k = 0; k < g.size(); ++k) changed += g.vertex(k).model_id != m.vertex(k).model_id ? 1 : 0;
    ASSERT_EQ(changed, 1u);
  }
}

TEST(VertexMutation, TwoVertexGraphChangesOutputClassifier) {
  const Graph g = canonicalize(make_graph({"input", "gaussian_nb"}, {{1, 2}}));
  Rng rng(2);
  const Graph m = vertex_mutation(g, models(), rng);
  EXPECT_EQ(m.vertex(0).model_id, "input");
  EXPECT_NE(m.vertex(1).model_id, "gaussian_nb");
  EXPECT_EQ(m.vertex(1).role, ModelRole::kClassifier);
}

TEST(VertexMutation, NoAlternativeThrows) {
  const Graph g = canonicalize(make_graph({"input", "gaussian_nb"}, {{1, 2}}));
  Rng rng(3);
  const std::vector<ModelSpec> only{default_spec("gaussian_nb")};
  EXPECT_THROW(vertex_mutation(g, only, rng), NoEligibleReplacement);
}

TEST(EdgeMutation, AddsSkipEdgeToChain) {
  const Graph g = testing::chain3();
  const Graph f = flip_edge(g, 0, 2);
  EXPECT_EQ(f.edge_count(), 3u);
  EXPECT_TRUE(f.has_edge(0, 2));
}

TEST(EdgeMutation, FlipIsInvolution) {
  const Graph g = testing::diamond();
  EXPECT_FALSE(flip_edge(g, 0, 1).has_edge(0, 1));
  EXPECT_EQ(flip_edge(flip_edge(g, 0, 3), 0, 3), g);
  EXPECT_EQ(flip_edge(flip_edge(g, 1, 3), 1, 3), g);
}

TEST(LayerMutation, RemovingOnlyInteriorLayer) {
  const Graph skip = canonicalize(make_graph({"input", "standard_scaler", "gaussian_nb"}, {{1, 2}, {2, 3}, {1, 3}}));
  const Graph reduced = remove_layer(skip, 1);
  EXPECT_EQ(reduced.size(), 2u);
  EXPECT_TRUE(is_valid(reduced, GraphLimits{}));
  // Without the skip edge the output is orphaned.
  EXPECT_FALSE(is_valid(remove_layer(testing::chain3(), 1), GraphLimits{}));
}

TEST(LayerMutation, InsertIntoTwoVertexGraph) {
  const Graph g = canonicalize(make_graph({"input", "gaussian_nb"}, {{1, 2}}));
  Rng rng(5);
  const Graph grown = insert_layer(g, 0, {default_spec("knn_regressor"), default_spec("linear_svm"),
                                          default_spec("ridge_classifier")}, EdgeSampling{}, rng);
  EXPECT_EQ(grown.size(), 5u);
  EXPECT_EQ(grown.vertex(0).model_id, "input");
  EXPECT_EQ(grown.vertex(4).model_id, "gaussian_nb");
  for (const auto& [a, b] : grown.edges()) EXPECT_LT(grown.depths()[a], grown.depths()[b]);
}

TEST(Heredity, RecipientWithoutInteriorLayerThrows) {
  const Graph a = canonicalize(make_graph({"input", "gaussian_nb"}, {{1, 2}}));
  Rng rng(6);
  EXPECT_THROW(heredity(a, testing::chain3(), EdgeSampling{}, rng), NoInteriorLayer);
}

TEST(Heredity, SingleVertexLayerKeepsDepth) {
  Rng rng(7);
  const Graph donor = testing::chain3("pca", "knn_classifier");
  for (int i = 0; i < 20; ++i) {
    const auto outcome =
        with_retrials([&](Rng& r) { return heredity(testing::chain3(), donor, EdgeSampling{}, r); }, GraphLimits{}, rng);
    ASSERT_TRUE(outcome.graph);
    const Graph& child = *outcome.graph;
    ASSERT_EQ(child.size(), 3u);
    ASSERT_EQ(layer_partition(child).depth_count(), 3u);
    ASSERT_EQ(child.vertex(1).model_id, "pca");
    ASSERT_EQ(child.vertex(2).model_id, "logistic_regression");
  }
}

TEST(Heredity, VertexCountAccounting) {
  // Recipient has one interior layer of size 2; donor's only interior layer has size 1.
  Rng rng(8);
  for (int i = 0; i < 50; ++i) {
    const Graph child = heredity(testing::diamond(), testing::chain3("robust_scaler"), EdgeSampling{}, rng);
    ASSERT_EQ(child.size(), 4u - 2u + 1u);
    std::size_t donated = 0;
    for (const auto& v : child.vertices()) donated += v.model_id == "robust_scaler" ? 1 : 0;
    ASSERT_EQ(donated, 1u);
  }
}

TEST(WithRetrials, CountsAttempts) {
  Rng rng(1);
  int calls = 0;
  auto op = [&](Rng&) {
    ++calls;
    return testing::chain3();
  };
  auto outcome = with_retrials(op, [&](const Graph&) { return calls == 3; }, 100, rng);
  EXPECT_FALSE(outcome.dropped());
  EXPECT_EQ(outcome.attempts, 3u);

  outcome = with_retrials(op, [](const Graph&) { return true; }, 100, rng);
  EXPECT_EQ(outcome.attempts, 1u);

  outcome = with_retrials(op, [](const Graph&) { return false; }, 5, rng);
  EXPECT_TRUE(outcome.dropped());
  EXPECT_EQ(outcome.attempts, 5u);
}

TEST(WithRetrials, LibraryErrorsAreFailedAttempts) {
  Rng rng(1);
  auto outcome = with_retrials([](Rng&) -> Graph { throw NoInteriorLayer("x"); }, [](const Graph&) { return true; },
                               4, rng);
  EXPECT_TRUE(outcome.dropped());
  EXPECT_EQ(outcome.attempts, 4u);
}

TEST(WithRetrials, OperatorOutputsAreValid) {
  const GraphLimits limits;
  const auto set = models();
  const auto parents = parent_pool(20, 3);
  for (std::uint64_t i = 0; i < 200; ++i) {
    Rng rng(i, StreamId{6, 0});
    const Graph& a = parents[i % parents.size()];
    const Graph& b = parents[(i * 7 + 3) % parents.size()];
    for (auto outcome : {with_retrials([&](Rng& r) { return vertex_mutation(a, set, r); }, limits, rng),
                         with_retrials([&](Rng& r) { return edge_mutation(a, r); }, limits, rng),
                         with_retrials([&](Rng& r) { return layer_mutation(a, set, EdgeSampling{}, r); }, limits, rng),
                         with_retrials([&](Rng& r) { return heredity(a, b, EdgeSampling{}, r); }, limits, rng)}) {
      if (outcome.graph) {
        ASSERT_TRUE(is_valid(*outcome.graph, limits));
      }
    }
  }
}

TEST(KeepBest, FifteenPercentOfTwenty) {
  std::vector<Individual> pop;
  for (std::uint64_t i = 0; i < 20; ++i) pop.push_back(individual(i + 1, 0.05 * static_cast<double>(20 - i)));
  const auto kept = keep_best(pop, 0.15);
  ASSERT_EQ(kept.size(), 3u);
  EXPECT_EQ(kept[0].id, 20u);
  EXPECT_EQ(kept[1].id, 19u);
  EXPECT_EQ(kept[2].id, 18u);
  for (const auto& k : kept) {
    EXPECT_FALSE(k.retrain);
    for (const auto& p : pop) {
      if (std::none_of(kept.begin(), kept.end(), [&](const Individual& x) { return x.id == p.id; })) {
        EXPECT_LE(k.fitness, p.fitness);
      }
    }
  }
}

TEST(KeepBest, TiesPreferLowerComplexityThenId) {
  std::vector<Individual> pop{individual(1, 0.2, testing::diamond()), individual(2, 0.2, testing::chain3()),
                              individual(3, 0.2, testing::chain3())};
  const auto kept = select_best(pop, 2);
  ASSERT_EQ(kept.size(), 2u);
  EXPECT_EQ(kept[0].id, 2u);
  EXPECT_EQ(kept[1].id, 3u);
}

TEST(KeepBest, SingleIndividualAndEmpty) {
  std::vector<Individual> one{individual(7, 0.4)};
  EXPECT_EQ(keep_best(one, 0.15).size(), 1u);
  EXPECT_THROW(keep_best(std::vector<Individual>{}, 0.15), EmptyPopulation);
}

TEST(KeepBest, DroppedNeverKept) {
  std::vector<Individual> pop{individual(1, 0.3), individual(2, 0.1)};
  pop[1].status = Status::kDroppedTimeout;
  pop[1].fitness = kInfinity;
  const auto kept = select_best(pop, 2);
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(kept[0].id, 1u);
}

}  // namespace
}  // namespace graphevo
