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
#include <vector>

#include <gtest/gtest.h>

#include "graphevo/errors.hpp"
#include "graphevo/hyperopt.hpp"
#include "graphevo/model_zoo.hpp"
#include "test_support.hpp"

namespace graphevo {
namespace {

using testing::make_graph;

Individual evaluated(const Graph& graph, const Dataset& data, const EvaluationSettings& s, std::uint64_t id = 1) {
  const auto e = evaluate_fitness(graph, data, s.alpha, s.folds, s.time_budget,
                                  Rng(s.seed, StreamId{streams::kCrossValidation, 0}));
  Individual ind;
  ind.id = id;
  ind.graph = graph;
  ind.status = e.status;
  ind.fitness = e.fitness;
  ind.loss = e.loss;
  ind.balanced_accuracy = e.balanced_accuracy;
  return ind;
}

EvaluationSettings settings(std::uint64_t seed) {
  EvaluationSettings s;
  s.folds = 3;
  s.time_budget = 60.0;
  s.seed = seed;
  return s;
}

TEST(EncodedSpace, RegressorsGiveOneCoordinateEach) {
  const Graph g = canonicalize(make_graph({"input", "ridge_regressor", "knn_regressor", "gaussian_nb"},
                                          {{1, 2}, {1, 3}, {2, 4}, {3, 4}}));
  const auto space = encode_space(g);
  EXPECT_EQ(space.dimension(), 2u);
  ASSERT_EQ(space.coordinates().size(), 2u);
  EXPECT_EQ(space.coordinates()[0].offset, 0u);
  EXPECT_EQ(space.coordinates()[1].offset, 1u);
}

TEST(EncodedSpace, ParameterlessGraphIsEmpty) {
  const Graph g = canonicalize(make_graph({"input", "standard_scaler", "gaussian_nb"}, {{1, 2}, {2, 3}}));
  EXPECT_TRUE(encode_space(g).empty());
}

TEST(EncodedSpace, LogMidpointDecodesGeometrically) {
  const Graph g = canonicalize(make_graph({"input", "ridge_classifier"}, {{1, 2}}));
  const auto space = encode_space(g);
  ASSERT_EQ(space.dimension(), 1u);
  const std::vector<double> half{0.5};
  const auto params = space.decode(g, half);
  EXPECT_NEAR(std::get<double>(params[1].at("lambda")), 0.1, 1e-12);
}

TEST(EncodedSpace, RoundTripOfDefaults) {
  const Graph g = canonicalize(make_graph({"input", "pca", "knn_classifier", "decision_tree", "logistic_regression"},
                                          {{1, 2}, {2, 3}, {2, 4}, {3, 5}, {4, 5}}));
  const auto space = encode_space(g);
  const auto unit = space.encode(g);
  ASSERT_EQ(unit.size(), space.dimension());
  for (double u : unit) {
    EXPECT_GE(u, 0.0);
    EXPECT_LE(u, 1.0);
  }
  const Graph back = space.apply(g, unit);
  for (std::size_t k = 0; k < g.size(); ++k) {
    for (const auto& [name, value] : g.vertex(k).params) {
      const auto& got = back.vertex(k).params.at(name);
      if (const auto* d = std::get_if<double>(&value)) {
        EXPECT_NEAR(std::get<double>(got), *d, 1e-12 * std::abs(*d)) << name;
      } else {
        EXPECT_EQ(got, value) << name;
      }
    }
  }
}

TEST(EncodedSpace, DecodedValuesStayInDomain) {
  const Graph g = canonicalize(make_graph({"input", "kmeans", "linear_svm"}, {{1, 2}, {2, 3}}));
  const auto space = encode_space(g);
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> unit(space.dimension());
    for (auto& u : unit) u = rng.uniform();
    const Graph tuned = space.apply(g, unit);
    for (const auto& c : space.coordinates()) {
      EXPECT_TRUE(c.domain.contains(tuned.vertex(c.vertex).params.at(c.domain.name())));
    }
  }
}

TEST(Surrogate, InterpolatesObservations) {
  Surrogate gp(2);
  const std::vector<std::vector<double>> xs{{0.1, 0.2}, {0.8, 0.4}, {0.5, 0.9}, {0.3, 0.6}};
  const std::vector<double> ys{1.0, 3.0, -2.0, 0.5};
  for (std::size_t i = 0; i < xs.size(); ++i) gp.observe(xs[i], ys[i]);
  // Standardized noise 1e-4 keeps the posterior close to the data.
  double sd_y = 0.0, mean_y = 0.0;
  for (double y : ys) mean_y += y / 4.0;
  for (double y : ys) sd_y += (y - mean_y) * (y - mean_y) / 4.0;
  sd_y = std::sqrt(sd_y);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto p = gp.predict(xs[i]);
    EXPECT_NEAR(p.mean, ys[i], 1e-3 * sd_y);
    EXPECT_GE(p.variance, 0.0);
  }
  const std::vector<double> far{0.95, 0.05};
  EXPECT_GT(gp.predict(far).variance, gp.predict(xs[0]).variance);
}

TEST(Surrogate, DegenerateWhenAllEqual) {
  Surrogate gp(1);
  gp.observe({0.2}, 0.4);
  gp.observe({0.7}, 0.4);
  EXPECT_TRUE(gp.degenerate());
  gp.observe({0.9}, 0.3);
  EXPECT_FALSE(gp.degenerate());
  EXPECT_EQ(gp.best(), 0.3);
}

TEST(ExpectedImprovement, ZeroWithoutUncertaintyAtOrAboveBest) {
  EXPECT_EQ(expected_improvement(1.0, 0.0, 1.0), 0.0);
  EXPECT_EQ(expected_improvement(2.0, 0.0, 1.0), 0.0);
  EXPECT_EQ(expected_improvement(0.5, 0.0, 1.0), 0.5);
  // Closed form at mean == best: sd * phi(0).
  EXPECT_NEAR(expected_improvement(1.0, 2.0, 1.0), 2.0 / std::sqrt(2.0 * M_PI), 1e-12);
  EXPECT_GT(expected_improvement(1.0, 1.0, 0.0), 0.0);
}

TEST(ProposeNext, RandomProbeBeforeTwoObservations) {
  Surrogate gp(3);
  Rng a(5), b(5);
  const auto first = propose_next(gp, a);
  std::vector<double> expected(3);
  for (auto& v : expected) v = b.uniform();
  EXPECT_EQ(first, expected);

  gp.observe({0.1, 0.1, 0.1}, 1.0);
  Rng c(6), d(6);
  const auto second = propose_next(gp, c);
  for (auto& v : expected) v = d.uniform();
  EXPECT_EQ(second, expected);
}

TEST(BayesMinimize, FindsQuadraticMinimum) {
  int close = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    Surrogate gp(1);
    double best_x = 0.0, best_y = kInfinity;
    for (int t = 0; t < 15; ++t) {
      auto x = propose_next(gp, rng);
      const double y = (x[0] - 0.3) * (x[0] - 0.3);
      if (y < best_y) {
        best_y = y;
        best_x = x[0];
      }
      gp.observe(std::move(x), y);
    }
    close += std::abs(best_x - 0.3) <= 0.02 ? 1 : 0;
  }
  EXPECT_GE(close, 40);
}

TEST(BhoOptimize, NeverWorseThanIncumbentAndWithinBudget) {
  const auto d = testing::clouds(90, 3, 1.0, 11);
  const auto s = settings(4);
  const Individual inc = evaluated(testing::chain3("pca", "knn_classifier"), d, s);
  ASSERT_TRUE(inc.has_fitness());
  Rng rng(9);
  const auto r = bho_optimize(inc, d, 40, s, rng);
  EXPECT_LE(r.tuned.loss, inc.loss);
  EXPECT_EQ(r.trials.size(), 41u);
  EXPECT_EQ(r.trials[0].loss, inc.loss);
  EXPECT_EQ(r.incumbent.graph, inc.graph);
  EXPECT_EQ(r.tuned.id, inc.id);
  EXPECT_DOUBLE_EQ(r.tuned.fitness, r.tuned.loss + s.alpha * static_cast<double>(complexity(r.tuned.graph)));
}

TEST(BhoOptimize, ParameterlessGraphReturnsIncumbent) {
  const auto d = testing::clouds(60, 2, 2.0, 12);
  const auto s = settings(1);
  const Individual inc = evaluated(testing::chain3("standard_scaler", "gaussian_nb"), d, s);
  Rng rng(1);
  const auto r = bho_optimize(inc, d, 40, s, rng);
  EXPECT_EQ(r.trials.size(), 1u);
  EXPECT_EQ(r.tuned.graph, inc.graph);
  EXPECT_EQ(r.tuned.fitness, inc.fitness);
}

TEST(BhoOptimize, RejectsUnevaluatedOrZeroBudget) {
  const auto d = testing::clouds(30, 2, 2.0, 13);
  Individual raw;
  raw.graph = testing::chain3();
  Rng rng(1);
  EXPECT_THROW(bho_optimize(raw, d, 5, settings(1), rng), DomainError);
  const Individual inc = evaluated(testing::chain3(), d, settings(1));
  EXPECT_THROW(bho_optimize(inc, d, 0, settings(1), rng), DomainError);
}

TEST(BhoOptimize, KnnTrialsAgreeWithSweep) {
  // Every assignment of k and weights scored independently; the tuned result
  // must be one of them and no better than their minimum.
  const auto d = testing::clouds(80, 2, 1.2, 14);
  const auto s = settings(2);
  const Graph base = canonicalize(make_graph({"input", "knn_classifier"}, {{1, 2}}));
  double sweep_min = kInfinity;
  std::map<std::pair<std::int64_t, std::string>, double> sweep;
  for (std::int64_t k = 1; k <= 25; ++k) {
    for (const char* w : {"uniform", "distance"}) {
      auto params = std::vector<ParamAssignment>{{}, {{"k", k}, {"weights", std::string(w)}}};
      const auto ind = evaluated(base.with_params(params), d, s);
      sweep[{k, w}] = ind.loss;
      sweep_min = std::min(sweep_min, ind.loss);
    }
  }
  const Individual inc = evaluated(base, d, s);
  Rng rng(3);
  const auto r = bho_optimize(inc, d, 20, s, rng);
  EXPECT_GE(r.tuned.loss, sweep_min);
  for (const auto& trial : r.trials) {
    const auto& p = trial.params[1];
    EXPECT_EQ(trial.loss, sweep.at({std::get<std::int64_t>(p.at("k")), std::get<std::string>(p.at("weights"))}));
  }
}

TEST(FinalizeTop5, SmallPopulationRanksAll) {
  const auto train = testing::clouds(80, 2, 2.0, 15);
  const auto test = testing::clouds(40, 2, 2.0, 16);
  SearchConfig config;
  config.folds = 3;
  config.bho_trials = 4;
  const auto s = settings(config.seed);

  SearchResult result;
  GenerationRecord g;
  g.index = 1;
  g.members.push_back(evaluated(testing::chain3("standard_scaler", "knn_classifier"), train, s, 1));
  g.members.push_back(evaluated(testing::chain3("pca", "ridge_classifier"), train, s, 2));
  g.members.push_back(evaluated(canonicalize(make_graph({"input", "gaussian_nb"}, {{1, 2}})), train, s, 3));
  result.generations.push_back(g);

  const auto f = finalize_top5(result, train, test, config);
  ASSERT_EQ(f.ranked.size(), 3u);
  for (std::size_t i = 1; i < f.ranked.size(); ++i) {
    EXPECT_FALSE(better_than(f.ranked[i].tuned, f.ranked[i - 1].tuned));
  }
  EXPECT_EQ(f.final_model.graph, f.ranked[0].tuned.graph);
  EXPECT_EQ(f.final_model.test_balanced_accuracy, held_out_score(f.final_model.graph, train, test, config.seed));
  EXPECT_GE(f.final_model.test_balanced_accuracy, 0.7);
}

TEST(FinalizeTop5, EmptyResultThrows) {
  const auto d = testing::clouds(20, 2, 2.0, 17);
  EXPECT_THROW(finalize_top5(SearchResult{}, d, d, SearchConfig{}), EmptyPopulation);
}

}  // namespace
}  // namespace graphevo
