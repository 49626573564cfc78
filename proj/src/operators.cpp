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

#include "graphevo/operators.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "graphevo/model_zoo.hpp"

namespace graphevo {

namespace {

const Graph& require_canonical(const Graph& graph, Graph& storage) {
  if (!graph.depths().empty()) return graph;
  storage = canonicalize(graph);
  return storage;
}

std::vector<ModelSpec> interior_models(std::span<const ModelSpec> model_set) {
  std::vector<ModelSpec> out;
  for (const auto& m : model_set) {
    if (m.role != ModelRole::kInput) out.push_back(m);
  }
  if (out.empty()) throw NoEligibleReplacement("model set has no non-input models");
  return out;
}

std::vector<ModelSpec> classifier_models(std::span<const ModelSpec> model_set) {
  std::vector<ModelSpec> out;
  for (const auto& m : model_set) {
    if (m.role == ModelRole::kClassifier) out.push_back(m);
  }
  return out;
}

// Splits `total` items into `parts` >= 1 each, proportional to random weights
// (largest remainder for the surplus).
std::vector<std::size_t> random_layer_sizes(std::size_t total, std::size_t parts, Rng& rng) {
  std::vector<std::size_t> sizes(parts, 1);
  if (parts == 0) return sizes;
  std::vector<double> weights(parts);
  for (auto& w : weights) w = rng.uniform() + 1e-12;
  const std::size_t surplus = total - parts;
  double weight_sum = 0.0;
  for (double w : weights) weight_sum += w;

  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < parts; ++i) {
    const double share = static_cast<double>(surplus) * weights[i] / weight_sum;
    const auto whole = static_cast<std::size_t>(std::floor(share));
    sizes[i] += whole;
    assigned += whole;
    remainders.emplace_back(share - static_cast<double>(whole), i);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t r = 0; assigned < surplus; ++r, ++assigned) ++sizes[remainders[r % parts].second];
  return sizes;
}

// Rebuilds a canonical graph with one layer removed and/or a new layer of
// `models` placed at depth `new_depth`. Existing edges among surviving
// vertices are kept; the new vertices get edges sampled against every vertex
// at another depth.
Graph splice(const Graph& graph, std::optional<std::size_t> removed_layer, int new_depth, bool shift_deeper,
             std::vector<ModelSpec> models, const EdgeSampling& sampling, Rng& rng) {
  const auto& depths = graph.depths();

  struct Slot {
    std::optional<std::size_t> source;  // original index, empty for new vertices
    ModelSpec model;
    int depth;
  };
  std::vector<Slot> shallow, fresh, deep;
  for (std::size_t k = 0; k < graph.size(); ++k) {
    if (removed_layer && static_cast<std::size_t>(depths[k] - 1) == *removed_layer) continue;
    int d = depths[k];
    if (shift_deeper && d >= new_depth) ++d;
    (d < new_depth ? shallow : deep).push_back({k, graph.vertex(k), d});
  }
  for (auto& model : models) fresh.push_back({std::nullopt, std::move(model), new_depth});

  std::vector<Slot> slots;
  slots.reserve(shallow.size() + fresh.size() + deep.size());
  for (auto* group : {&shallow, &fresh, &deep}) {
    for (auto& s : *group) slots.push_back(std::move(s));
  }

  const std::size_t n = slots.size();
  AdjacencyMatrix adj(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (slots[a].source && slots[b].source && graph.has_edge(*slots[a].source, *slots[b].source)) adj.set(a, b, true);
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (slots[v].source) continue;
    for (std::size_t u = 0; u < n; ++u) {
      if (u == v || slots[u].depth == slots[v].depth) continue;
      if (slots[u].depth < slots[v].depth) {
        if (sample_edge(slots[u].depth, slots[v].depth, sampling, rng)) adj.set(u, v, true);
      } else {
        if (sample_edge(slots[v].depth, slots[u].depth, sampling, rng)) adj.set(v, u, true);
      }
    }
  }
  // Edges that end up inside a layer are dropped before validation.
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (adj(a, b) && slots[a].depth == slots[b].depth) adj.set(a, b, false);
    }
  }

  std::vector<ModelSpec> vertices;
  vertices.reserve(n);
  for (auto& s : slots) vertices.push_back(std::move(s.model));
  return canonicalize(Graph(std::move(vertices), std::move(adj)));
}

std::vector<ModelSpec> draw_models(std::span<const ModelSpec> pool, std::size_t count, Rng& rng) {
  std::vector<ModelSpec> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(pool[rng.index(pool.size())]);
  return out;
}

}  // namespace

bool sample_edge(int d_src, int d_dst, const EdgeSampling& sampling, Rng& rng) {
  const double p = connection_probability(d_src, d_dst, sampling.p0, sampling.gamma);
  const double u = rng.uniform();
  return p > sampling.rho && u < p;
}

Graph random_graph(const GraphLimits& limits, std::span<const ModelSpec> model_set, const EdgeSampling& sampling,
                   Rng& rng) {
  const auto interior = interior_models(model_set);
  auto outputs = classifier_models(model_set);
  if (outputs.empty()) outputs = interior;

  const auto k_lo = static_cast<std::int64_t>(std::max<std::size_t>(2, limits.min_vertices));
  const auto k_hi = static_cast<std::int64_t>(std::min(limits.random_vertex_cap, limits.max_vertices));
  auto vertex_count = static_cast<std::size_t>(rng.uniform_int(k_lo, std::max(k_lo, k_hi)));

  // Two layers only fit two vertices; larger graphs need an interior layer.
  std::size_t layer_count = 2;
  const auto d_hi = std::min(limits.max_layers, vertex_count);
  if (vertex_count > 2) {
    if (d_hi < 3) {
      vertex_count = 2;
    } else {
      const auto d_lo = std::max<std::size_t>(3, limits.min_layers);
      layer_count = static_cast<std::size_t>(
          rng.uniform_int(static_cast<std::int64_t>(std::min(d_lo, d_hi)), static_cast<std::int64_t>(d_hi)));
    }
  }

  std::vector<std::size_t> sizes{1};
  for (std::size_t s : random_layer_sizes(vertex_count - 2, layer_count - 2, rng)) sizes.push_back(s);
  sizes.push_back(1);

  std::vector<ModelSpec> vertices;
  std::vector<int> depth;
  vertices.push_back(input_spec());
  depth.push_back(1);
  for (std::size_t layer = 1; layer + 1 < sizes.size(); ++layer) {
    for (std::size_t i = 0; i < sizes[layer]; ++i) {
      vertices.push_back(interior[rng.index(interior.size())]);
      depth.push_back(static_cast<int>(layer) + 1);
    }
  }
  vertices.push_back(outputs[rng.index(outputs.size())]);
  depth.push_back(static_cast<int>(sizes.size()));

  AdjacencyMatrix adj(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (depth[i] < depth[j] && sample_edge(depth[i], depth[j], sampling, rng)) adj.set(i, j, true);
    }
  }
  return canonicalize(Graph(std::move(vertices), std::move(adj)));
}

Graph random_op(const GraphLimits& limits, std::span<const ModelSpec> model_set, const EdgeSampling& sampling,
                Rng& rng) {
  auto outcome = with_retrials([&](Rng& r) { return random_graph(limits, model_set, sampling, r); }, limits, rng);
  if (outcome.dropped()) {
    throw RetrialExhausted(fmt::format("no valid random graph after {} attempts", outcome.attempts));
  }
  return std::move(*outcome.graph);
}

std::vector<ModelSpec> replacement_candidates(const Graph& graph, std::size_t k, std::span<const ModelSpec> model_set) {
  const bool is_output = k + 1 == graph.size();
  const auto parents = graph.parents(k);
  const bool sole_predictive_parent = parents.size() == 1 && is_predictive(graph.vertex(parents.front()).role);
  bool feeds_sole_predictive_child = false;
  for (std::size_t c : graph.children(k)) {
    if (is_predictive(graph.vertex(c).role) && graph.adjacency().in_degree(c) == 1) feeds_sole_predictive_child = true;
  }

  std::vector<ModelSpec> out;
  for (const auto& m : model_set) {
    if (m.role == ModelRole::kInput || m.model_id == graph.vertex(k).model_id) continue;
    if (is_output && m.role != ModelRole::kClassifier) continue;
    if (is_predictive(m.role) && (sole_predictive_parent || feeds_sole_predictive_child)) continue;
    out.push_back(m);
  }
  return out;
}

Graph vertex_mutation(const Graph& graph, std::span<const ModelSpec> model_set, Rng& rng) {
  Graph storage;
  const Graph& g = require_canonical(graph, storage);
  if (g.size() < 2) throw NoEligibleReplacement("graph has no mutable vertex");
  const std::size_t k = 1 + rng.index(g.size() - 1);
  const auto candidates = replacement_candidates(g, k, model_set);
  if (candidates.empty()) {
    throw NoEligibleReplacement(fmt::format("no alternative model for vertex {} ({})", k + 1, g.vertex(k).model_id));
  }
  return g.with_model(k, candidates[rng.index(candidates.size())]);
}

Graph flip_edge(const Graph& graph, std::size_t i, std::size_t j) {
  if (i >= j || j >= graph.size()) throw DomainError(fmt::format("cannot flip pair ({}, {})", i + 1, j + 1));
  AdjacencyMatrix adj = graph.adjacency();
  adj.flip(i, j);
  return canonicalize(Graph(graph.vertices(), std::move(adj)));
}

Graph edge_mutation(const Graph& graph, Rng& rng) {
  Graph storage;
  const Graph& g = require_canonical(graph, storage);
  const std::size_t n = g.size();
  if (n < 2) throw DomainError("edge mutation needs two vertices");
  // Pairs (i, j), i < j, enumerated row by row.
  std::size_t pick = rng.index(n * (n - 1) / 2);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t row = n - 1 - i;
    if (pick < row) return flip_edge(g, i, i + 1 + pick);
    pick -= row;
  }
  throw DomainError("edge pair enumeration overflow");
}

Graph remove_layer(const Graph& graph, std::size_t layer) {
  Graph storage;
  const Graph& g = require_canonical(graph, storage);
  const auto partition = layer_partition(g);
  if (layer == 0 || layer + 1 >= partition.depth_count()) {
    throw NoInteriorLayer(fmt::format("layer {} is not an interior layer", layer + 1));
  }
  Rng unused(0);
  return splice(g, layer, static_cast<int>(layer) + 1, false, {}, EdgeSampling{}, unused);
}

Graph insert_layer(const Graph& graph, std::size_t after_layer, std::vector<ModelSpec> models,
                   const EdgeSampling& sampling, Rng& rng) {
  Graph storage;
  const Graph& g = require_canonical(graph, storage);
  const auto partition = layer_partition(g);
  if (after_layer + 1 >= partition.depth_count()) throw DomainError("cannot insert a layer after the output");
  if (models.empty()) throw DomainError("inserted layer needs at least one model");
  return splice(g, std::nullopt, static_cast<int>(after_layer) + 2, true, std::move(models), sampling, rng);
}

Graph replace_layer(const Graph& graph, std::size_t layer, std::vector<ModelSpec> models, const EdgeSampling& sampling,
                    Rng& rng) {
  Graph storage;
  const Graph& g = require_canonical(graph, storage);
  const auto partition = layer_partition(g);
  if (layer == 0 || layer + 1 >= partition.depth_count()) {
    throw NoInteriorLayer(fmt::format("layer {} is not an interior layer", layer + 1));
  }
  return splice(g, layer, static_cast<int>(layer) + 1, false, std::move(models), sampling, rng);
}

Graph layer_mutation(const Graph& graph, std::span<const ModelSpec> model_set, const EdgeSampling& sampling, Rng& rng) {
  Graph storage;
  const Graph& g = require_canonical(graph, storage);
  const std::size_t layers = layer_partition(g).depth_count();
  const bool remove = rng.uniform() < 0.5 && layers >= 3;
  if (remove) return remove_layer(g, 1 + rng.index(layers - 2));

  const std::size_t after = rng.index(layers - 1);
  const auto size = static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(kMaxInsertedLayer)));
  return insert_layer(g, after, draw_models(interior_models(model_set), size, rng), sampling, rng);
}

Graph heredity(const Graph& recipient, const Graph& donor, const EdgeSampling& sampling, Rng& rng) {
  Graph storage_a, storage_b;
  const Graph& a = require_canonical(recipient, storage_a);
  const Graph& b = require_canonical(donor, storage_b);
  const auto layers_a = layer_partition(a);
  const auto layers_b = layer_partition(b);
  if (layers_a.depth_count() < 3) throw NoInteriorLayer("recipient graph has no interior layer");
  if (layers_b.depth_count() < 3) throw NoInteriorLayer("donor graph has no interior layer");

  const std::size_t removed = 1 + rng.index(layers_a.depth_count() - 2);
  const std::size_t donated = 1 + rng.index(layers_b.depth_count() - 2);
  std::vector<ModelSpec> models;
  for (std::size_t k : layers_b.layers[donated]) models.push_back(b.vertex(k));
  return replace_layer(a, removed, std::move(models), sampling, rng);
}

}  // namespace graphevo
