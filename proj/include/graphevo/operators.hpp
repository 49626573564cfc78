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

// Architecture-generating operators. Each takes canonical graphs, draws from
// the caller's stream, and returns a canonical candidate that may still be
// invalid; with_retrials turns an operator into "valid graph or dropped".

#ifndef GRAPHEVO_OPERATORS_HPP_
#define GRAPHEVO_OPERATORS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "graphevo/errors.hpp"
#include "graphevo/graph.hpp"
#include "graphevo/model_spec.hpp"
#include "graphevo/rng.hpp"

namespace graphevo {

struct EdgeSampling {
  double p0 = 0.3;
  double gamma = 1.0;
  // Blocks whose connection probability does not exceed rho get no edges.
  double rho = 0.0;
};

// Largest layer the insertion branch creates.
inline constexpr std::size_t kMaxInsertedLayer = 3;

// Edge between vertices at depths d_src < d_dst: u < p && p > rho with
// p = connection_probability(d_src, d_dst) and u ~ U(0, 1).
bool sample_edge(int d_src, int d_dst, const EdgeSampling& sampling, Rng& rng);

// Unvalidated random architecture. The last vertex is drawn from the
// classifiers in `model_set` (from all models if there are none).
Graph random_graph(const GraphLimits& limits, std::span<const ModelSpec> model_set, const EdgeSampling& sampling,
                   Rng& rng);

// random_graph retried until valid. Throws RetrialExhausted.
Graph random_op(const GraphLimits& limits, std::span<const ModelSpec> model_set, const EdgeSampling& sampling,
                Rng& rng);

// Replaces the model of one uniformly chosen non-input vertex by a different,
// role-compatible model. Throws NoEligibleReplacement.
Graph vertex_mutation(const Graph& graph, std::span<const ModelSpec> model_set, Rng& rng);
// Models that may replace vertex k without breaking role rules.
std::vector<ModelSpec> replacement_candidates(const Graph& graph, std::size_t k, std::span<const ModelSpec> model_set);

// Flips one uniformly chosen pair (i, j), i < j.
Graph edge_mutation(const Graph& graph, Rng& rng);
Graph flip_edge(const Graph& graph, std::size_t i, std::size_t j);

// Removes a random interior layer with probability 1/2 (when one exists),
// otherwise inserts a new layer of 1..3 random models after a random layer.
Graph layer_mutation(const Graph& graph, std::span<const ModelSpec> model_set, const EdgeSampling& sampling, Rng& rng);

// Layer surgery on canonical graphs; `layer` is a 0-based layer index.
Graph remove_layer(const Graph& graph, std::size_t layer);
Graph insert_layer(const Graph& graph, std::size_t after_layer, std::vector<ModelSpec> models,
                   const EdgeSampling& sampling, Rng& rng);
Graph replace_layer(const Graph& graph, std::size_t layer, std::vector<ModelSpec> models, const EdgeSampling& sampling,
                    Rng& rng);

// Replaces a random interior layer of `recipient` by a copy of a random
// interior layer of `donor` with freshly sampled edges. Throws NoInteriorLayer.
Graph heredity(const Graph& recipient, const Graph& donor, const EdgeSampling& sampling, Rng& rng);

struct RetrialOutcome {
  std::optional<Graph> graph;  // empty when dropped
  std::size_t attempts = 0;

  bool dropped() const { return !graph.has_value(); }
};

// Re-applies `op` (fresh draws from `rng` each time) until `accept` passes or
// `limit` attempts fail. Library errors thrown by `op` count as failures.
template <class Op, class Accept>
RetrialOutcome with_retrials(Op&& op, Accept&& accept, std::size_t limit, Rng& rng) {
  RetrialOutcome outcome;
  while (outcome.attempts < limit) {
    ++outcome.attempts;
    try {
      Graph candidate = op(rng);
      if (accept(candidate)) {
        outcome.graph = std::move(candidate);
        return outcome;
      }
    } catch (const Error&) {
      // Failed attempt.
    }
  }
  return outcome;
}

template <class Op>
RetrialOutcome with_retrials(Op&& op, const GraphLimits& limits, Rng& rng) {
  return with_retrials(std::forward<Op>(op), [&](const Graph& g) { return is_valid(g, limits); }, limits.retrials,
                       rng);
}

}  // namespace graphevo

#endif  // GRAPHEVO_OPERATORS_HPP_
