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

// Bayesian hyperparameter tuning of a fixed graph: a Gaussian-process
// surrogate over the unit cube with expected-improvement proposals.

#ifndef GRAPHEVO_HYPEROPT_HPP_
#define GRAPHEVO_HYPEROPT_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "graphevo/dataset.hpp"
#include "graphevo/graph.hpp"
#include "graphevo/individual.hpp"
#include "graphevo/model_spec.hpp"
#include "graphevo/pipeline.hpp"
#include "graphevo/rng.hpp"
#include "graphevo/search.hpp"

namespace graphevo {

// Joint hyperparameter space of one graph, in vertex order.
class EncodedSpace {
 public:
  struct Coordinate {
    std::size_t vertex = 0;
    std::size_t offset = 0;  // first unit-cube coordinate of this parameter
    ParamDomain domain;
  };

  explicit EncodedSpace(const Graph& graph);

  std::size_t dimension() const { return dimension_; }
  const std::vector<Coordinate>& coordinates() const { return coordinates_; }
  bool empty() const { return dimension_ == 0; }

  // Unit-cube image of the graph's current hyperparameters.
  std::vector<double> encode(const Graph& graph) const;
  // Per-vertex assignments for `unit`; parameters outside the space keep the
  // values from `graph`.
  std::vector<ParamAssignment> decode(const Graph& graph, std::span<const double> unit) const;
  Graph apply(const Graph& graph, std::span<const double> unit) const;

 private:
  std::vector<Coordinate> coordinates_;
  std::size_t dimension_ = 0;
};

inline EncodedSpace encode_space(const Graph& graph) { return EncodedSpace(graph); }

struct KernelParams {
  double length_scale = 0.3;
  double signal_variance = 1.0;
  double noise_variance = 1e-4;
};

struct Prediction {
  double mean = 0.0;
  double variance = 0.0;
};

// Zero-mean GP with an RBF kernel on standardized observations.
class Surrogate {
 public:
  explicit Surrogate(std::size_t dimension, KernelParams kernel = {});

  void observe(std::vector<double> x, double y);
  std::size_t size() const { return ys_.size(); }
  std::size_t dimension() const { return dimension_; }
  const KernelParams& kernel() const { return kernel_; }
  double best() const;

  // True when there are observations but all share one value.
  bool degenerate() const;
  // Posterior in the original units of y. Requires at least one observation.
  Prediction predict(std::span<const double> x) const;

 private:
  void refit() const;

  std::size_t dimension_;
  KernelParams kernel_;
  std::vector<std::vector<double>> xs_;
  std::vector<double> ys_;

  mutable bool fitted_ = false;
  mutable double y_mean_ = 0.0;
  mutable double y_scale_ = 1.0;
  mutable Eigen::LLT<Eigen::MatrixXd> llt_;
  mutable Eigen::VectorXd alpha_;
};

// Minimization convention; zero when sd is zero and the mean is not below best.
double expected_improvement(double mean, double sd, double best);

inline constexpr std::size_t kAcquisitionProbes = 1024;

// EI argmax over random probes; a random probe with fewer than two
// observations or a degenerate surrogate.
std::vector<double> propose_next(const Surrogate& surrogate, Rng& rng, std::size_t n_candidates = kAcquisitionProbes);

using UnitObjective = std::function<double(std::span<const double>)>;

// Best value found by `trials` evaluations of `objective`.
double bayes_minimize(const UnitObjective& objective, std::size_t dimension, std::size_t trials, Rng& rng);
double random_search_minimize(const UnitObjective& objective, std::size_t dimension, std::size_t trials, Rng& rng);

struct HpoTrial {
  std::size_t index = 0;  // 0 is the incumbent
  std::vector<double> unit;
  std::vector<ParamAssignment> params;
  double loss = kInfinity;  // +inf for failed trials
  double balanced_accuracy = 0.0;
  bool failed = false;
};

struct EvaluationSettings {
  double alpha = 0.001;
  int folds = 5;
  double time_budget = 3600.0;
  std::uint64_t seed = 0;  // selects the cross-validation stream
};

struct TuningResult {
  Individual tuned;
  Individual incumbent;
  std::vector<HpoTrial> trials;
};

// Up to `budget` trials beyond the incumbent, whose current assignment is
// trial 0 and is never re-trained. Returns the best observed assignment, which
// is the incumbent unless a trial has strictly lower loss.
TuningResult bho_optimize(const Individual& individual, const Dataset& data, std::size_t budget,
                          const EvaluationSettings& settings, Rng& rng);

struct FinalModel {
  Graph graph;
  double test_balanced_accuracy = 0.0;
};

struct Finalization {
  std::vector<TuningResult> ranked;  // by tuned fitness
  FinalModel final_model;
};

// Tunes the best min(bho_top, N) members of the final generation, re-ranks
// them, then retrains rank 1 on `train` and scores it once on `test`.
Finalization finalize_top5(const SearchResult& result, const Dataset& train, const Dataset& test,
                           const SearchConfig& config);

// Fits on all of `train` and returns held-out balanced accuracy on `test`.
double held_out_score(const Graph& graph, const Dataset& train, const Dataset& test, std::uint64_t seed);

}  // namespace graphevo

#endif  // GRAPHEVO_HYPEROPT_HPP_
