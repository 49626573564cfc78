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

#include "graphevo/hyperopt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "graphevo/errors.hpp"
#include "graphevo/model_zoo.hpp"

namespace graphevo {

EncodedSpace::EncodedSpace(const Graph& graph) {
  for (std::size_t k = 0; k < graph.size(); ++k) {
    const auto& spec = graph.vertex(k);
    if (spec.role == ModelRole::kInput) continue;
    for (const auto& domain : zoo_entry(spec.model_id).space) {
      coordinates_.push_back(Coordinate{k, dimension_, domain});
      dimension_ += domain.encoded_width();
    }
  }
}

std::vector<double> EncodedSpace::encode(const Graph& graph) const {
  std::vector<double> unit(dimension_, 0.0);
  for (const auto& c : coordinates_) {
    const auto& params = graph.vertex(c.vertex).params;
    const auto it = params.find(c.domain.name());
    c.domain.encode(it != params.end() ? it->second : c.domain.midpoint(), unit.data() + c.offset);
  }
  return unit;
}

std::vector<ParamAssignment> EncodedSpace::decode(const Graph& graph, std::span<const double> unit) const {
  if (unit.size() != dimension_) throw ShapeMismatch("unit vector length differs from space dimension");
  std::vector<ParamAssignment> params;
  params.reserve(graph.size());
  for (const auto& v : graph.vertices()) params.push_back(v.params);
  for (const auto& c : coordinates_) params[c.vertex][c.domain.name()] = c.domain.decode(unit.data() + c.offset);
  return params;
}

Graph EncodedSpace::apply(const Graph& graph, std::span<const double> unit) const {
  return graph.with_params(decode(graph, unit));
}

Surrogate::Surrogate(std::size_t dimension, KernelParams kernel) : dimension_(dimension), kernel_(kernel) {}

void Surrogate::observe(std::vector<double> x, double y) {
  if (x.size() != dimension_) throw ShapeMismatch("observation dimension differs from surrogate");
  if (!std::isfinite(y)) throw DomainError("surrogate observations must be finite");
  xs_.push_back(std::move(x));
  ys_.push_back(y);
  fitted_ = false;
}

double Surrogate::best() const {
  if (ys_.empty()) return kInfinity;
  return *std::min_element(ys_.begin(), ys_.end());
}

bool Surrogate::degenerate() const {
  if (ys_.empty()) return false;
  const auto [lo, hi] = std::minmax_element(ys_.begin(), ys_.end());
  return *hi - *lo <= 1e-12 * std::max(1.0, std::abs(*hi));
}

namespace {

double rbf(std::span<const double> a, std::span<const double> b, const KernelParams& kernel) {
  double sq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sq += (a[i] - b[i]) * (a[i] - b[i]);
  return kernel.signal_variance * std::exp(-0.5 * sq / (kernel.length_scale * kernel.length_scale));
}

}  // namespace

void Surrogate::refit() const {
  if (fitted_) return;
  const auto n = static_cast<Eigen::Index>(ys_.size());
  double mean = 0.0;
  for (double y : ys_) mean += y;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double y : ys_) var += (y - mean) * (y - mean);
  var /= static_cast<double>(n);
  y_mean_ = mean;
  y_scale_ = var > 0.0 ? std::sqrt(var) : 1.0;

  Eigen::MatrixXd k(n, n);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    y(i) = (ys_[static_cast<std::size_t>(i)] - y_mean_) / y_scale_;
    for (Eigen::Index j = 0; j <= i; ++j) {
      k(i, j) = k(j, i) = rbf(xs_[static_cast<std::size_t>(i)], xs_[static_cast<std::size_t>(j)], kernel_);
    }
    k(i, i) += kernel_.noise_variance;
  }
  llt_.compute(k);
  alpha_ = llt_.solve(y);
  fitted_ = true;
}

Prediction Surrogate::predict(std::span<const double> x) const {
  if (ys_.empty()) throw EmptyInput("surrogate has no observations");
  if (x.size() != dimension_) throw ShapeMismatch("query dimension differs from surrogate");
  refit();
  const auto n = static_cast<Eigen::Index>(ys_.size());
  Eigen::VectorXd cross(n);
  for (Eigen::Index i = 0; i < n; ++i) cross(i) = rbf(x, xs_[static_cast<std::size_t>(i)], kernel_);
  const double mean = cross.dot(alpha_);
  const Eigen::VectorXd v = llt_.matrixL().solve(cross);
  const double variance = std::max(0.0, kernel_.signal_variance - v.squaredNorm());
  return {y_mean_ + y_scale_ * mean, variance * y_scale_ * y_scale_};
}

double expected_improvement(double mean, double sd, double best) {
  const double gain = best - mean;
  if (!(sd > 1e-12)) return std::max(gain, 0.0);
  const double z = gain / sd;
  const double cdf = 0.5 * std::erfc(-z / std::numbers::sqrt2);
  const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
  return gain * cdf + sd * pdf;
}

namespace {

std::vector<double> random_probe(std::size_t dimension, Rng& rng) {
  std::vector<double> x(dimension);
  for (auto& v : x) v = rng.uniform();
  return x;
}

}  // namespace

std::vector<double> propose_next(const Surrogate& surrogate, Rng& rng, std::size_t n_candidates) {
  const std::size_t dim = surrogate.dimension();
  if (surrogate.size() < 2 || surrogate.degenerate() || n_candidates == 0) return random_probe(dim, rng);
  const double best = surrogate.best();
  std::vector<double> chosen;
  double chosen_ei = -1.0;
  for (std::size_t c = 0; c < n_candidates; ++c) {
    auto x = random_probe(dim, rng);
    const auto p = surrogate.predict(x);
    const double ei = expected_improvement(p.mean, std::sqrt(p.variance), best);
    if (ei > chosen_ei) {
      chosen_ei = ei;
      chosen = std::move(x);
    }
  }
  return chosen;
}

double bayes_minimize(const UnitObjective& objective, std::size_t dimension, std::size_t trials, Rng& rng) {
  Surrogate surrogate(dimension);
  double best = kInfinity;
  for (std::size_t t = 0; t < trials; ++t) {
    auto x = propose_next(surrogate, rng);
    const double y = objective(x);
    best = std::min(best, y);
    surrogate.observe(std::move(x), y);
  }
  return best;
}

double random_search_minimize(const UnitObjective& objective, std::size_t dimension, std::size_t trials, Rng& rng) {
  double best = kInfinity;
  for (std::size_t t = 0; t < trials; ++t) best = std::min(best, objective(random_probe(dimension, rng)));
  return best;
}

TuningResult bho_optimize(const Individual& individual, const Dataset& data, std::size_t budget,
                          const EvaluationSettings& settings, Rng& rng) {
  if (!individual.has_fitness()) throw DomainError("only evaluated individuals can be tuned");
  if (budget < 1) throw DomainError("tuning budget must be at least 1");

  TuningResult result;
  result.incumbent = individual;
  result.tuned = individual;

  const EncodedSpace space(individual.graph);
  HpoTrial incumbent_trial;
  incumbent_trial.unit = space.encode(individual.graph);
  for (const auto& v : individual.graph.vertices()) incumbent_trial.params.push_back(v.params);
  incumbent_trial.loss = individual.loss;
  incumbent_trial.balanced_accuracy = individual.balanced_accuracy;
  result.trials.push_back(incumbent_trial);
  if (space.empty()) return result;

  const Rng cv_rng(settings.seed, StreamId{streams::kCrossValidation, 0});
  Surrogate surrogate(space.dimension());
  surrogate.observe(incumbent_trial.unit, incumbent_trial.loss);
  double worst = incumbent_trial.loss;
  std::size_t best_trial = 0;

  for (std::size_t t = 1; t <= budget; ++t) {
    HpoTrial trial;
    trial.index = t;
    trial.unit = propose_next(surrogate, rng);
    trial.params = space.decode(individual.graph, trial.unit);

    // Rounding can map distinct probes onto an assignment already scored.
    const auto repeat = std::find_if(result.trials.begin(), result.trials.end(),
                                     [&](const HpoTrial& earlier) { return earlier.params == trial.params; });
    if (repeat != result.trials.end()) {
      trial.loss = repeat->loss;
      trial.balanced_accuracy = repeat->balanced_accuracy;
      trial.failed = repeat->failed;
    } else {
      const Graph candidate = individual.graph.with_params(trial.params);
      const auto eval = evaluate_fitness(candidate, data, settings.alpha, settings.folds, settings.time_budget, cv_rng);
      if (eval.status == Status::kEvaluated) {
        trial.loss = eval.loss;
        trial.balanced_accuracy = eval.balanced_accuracy;
      } else {
        trial.failed = true;
      }
    }

    if (trial.failed) {
      surrogate.observe(trial.unit, worst + 1.0);
    } else {
      worst = std::max(worst, trial.loss);
      surrogate.observe(trial.unit, trial.loss);
      if (trial.loss < result.trials[best_trial].loss) best_trial = result.trials.size();
    }
    result.trials.push_back(std::move(trial));
  }

  if (best_trial != 0) {
    const auto& best = result.trials[best_trial];
    result.tuned.graph = individual.graph.with_params(best.params);
    result.tuned.loss = best.loss;
    result.tuned.balanced_accuracy = best.balanced_accuracy;
    result.tuned.fitness = best.loss + settings.alpha * static_cast<double>(complexity(result.tuned.graph));
  }
  return result;
}

double held_out_score(const Graph& graph, const Dataset& train, const Dataset& test, std::uint64_t seed) {
  const auto model = train_composite(graph, train.features, train.labels, train.num_classes(), Deadline(), seed);
  return balanced_accuracy(test.labels, model.predict(test.features));
}

Finalization finalize_top5(const SearchResult& result, const Dataset& train, const Dataset& test,
                           const SearchConfig& config) {
  if (result.generations.empty()) throw EmptyPopulation("search produced no generations");
  const auto top = select_best(result.final_generation().members, config.bho_top);
  if (top.empty()) throw EmptyPopulation("final generation has no evaluated individual");

  const EvaluationSettings settings{config.alpha, config.folds, config.limits.max_train_seconds, config.seed};
  Finalization out;
  for (std::size_t rank = 0; rank < top.size(); ++rank) {
    Rng rng(config.seed, StreamId{streams::kHyperopt, rank});
    out.ranked.push_back(bho_optimize(top[rank], train, config.bho_trials, settings, rng));
  }
  std::stable_sort(out.ranked.begin(), out.ranked.end(),
                   [](const TuningResult& a, const TuningResult& b) { return better_than(a.tuned, b.tuned); });

  out.final_model.graph = out.ranked.front().tuned.graph;
  out.final_model.test_balanced_accuracy = held_out_score(out.final_model.graph, train, test, config.seed);
  return out;
}

}  // namespace graphevo
