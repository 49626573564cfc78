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

#include "graphevo/graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>

#include <fmt/format.h>

#include "graphevo/errors.hpp"

namespace graphevo {

std::size_t AdjacencyMatrix::edge_count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::size_t AdjacencyMatrix::in_degree(std::size_t j) const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < n_; ++i) n += (*this)(i, j) ? 1 : 0;
  return n;
}

std::size_t AdjacencyMatrix::out_degree(std::size_t i) const {
  std::size_t n = 0;
  for (std::size_t j = 0; j < n_; ++j) n += (*this)(i, j) ? 1 : 0;
  return n;
}

Graph::Graph(std::vector<ModelSpec> vertices, AdjacencyMatrix adjacency, std::vector<int> depths)
    : vertices_(std::move(vertices)), adjacency_(std::move(adjacency)), depths_(std::move(depths)) {
  if (adjacency_.size() != vertices_.size()) {
    throw InvalidGraph(fmt::format("adjacency is {}x{} but graph has {} vertices", adjacency_.size(),
                                   adjacency_.size(), vertices_.size()));
  }
  if (!depths_.empty() && depths_.size() != vertices_.size()) {
    throw InvalidGraph("depth vector length differs from vertex count");
  }
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (adjacency_(i, i)) throw InvalidGraph(fmt::format("self edge on vertex {}", i + 1));
  }
}

Graph Graph::from_edges(std::vector<ModelSpec> vertices, const std::vector<Edge>& edges) {
  AdjacencyMatrix adjacency(vertices.size());
  for (const auto& [src, dst] : edges) {
    if (src >= vertices.size() || dst >= vertices.size()) {
      throw InvalidGraph(fmt::format("edge ({}, {}) out of range", src + 1, dst + 1));
    }
    adjacency.set(src, dst, true);
  }
  return Graph(std::move(vertices), std::move(adjacency));
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) {
      if (adjacency_(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

std::vector<std::size_t> Graph::parents(std::size_t j) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (adjacency_(i, j)) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> Graph::children(std::size_t i) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < size(); ++j) {
    if (adjacency_(i, j)) out.push_back(j);
  }
  return out;
}

std::vector<ModelRole> Graph::roles() const {
  std::vector<ModelRole> out;
  out.reserve(size());
  for (const auto& v : vertices_) out.push_back(v.role);
  return out;
}

Graph Graph::with_model(std::size_t k, ModelSpec spec) const {
  Graph copy = *this;
  copy.vertices_.at(k) = std::move(spec);
  return copy;
}

Graph Graph::with_params(const std::vector<ParamAssignment>& params) const {
  if (params.size() != size()) throw InvalidGraph("parameter list length differs from vertex count");
  Graph copy = *this;
  for (std::size_t k = 0; k < size(); ++k) copy.vertices_[k].params = params[k];
  return copy;
}

std::vector<std::size_t> LayerPartition::sizes() const {
  std::vector<std::size_t> out;
  out.reserve(layers.size());
  for (const auto& layer : layers) out.push_back(layer.size());
  return out;
}

void GraphLimits::check() const {
  if (min_vertices < 2 || min_vertices > max_vertices) throw ConfigError("vertex bounds must satisfy 2 <= min <= max");
  if (min_layers < 2 || min_layers > max_layers) throw ConfigError("layer bounds must satisfy 2 <= min <= max");
  if (random_vertex_cap < 2 || random_vertex_cap > max_vertices) {
    throw ConfigError("random vertex cap must lie in [2, max vertices]");
  }
  if (retrials == 0) throw ConfigError("retrial limit must be positive");
  if (!(max_train_seconds > 0.0)) throw ConfigError("max training time must be positive");
}

namespace {

// Kahn order with the lowest ready index first.
std::vector<std::size_t> kahn_order(const AdjacencyMatrix& adj) {
  const std::size_t n = adj.size();
  std::vector<std::size_t> indegree(n);
  for (std::size_t j = 0; j < n; ++j) indegree[j] = adj.in_degree(j);

  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push(v);
  }
  std::vector<std::size_t> order;
  order.reserve(n);
  while (!ready.empty()) {
    const std::size_t v = ready.top();
    ready.pop();
    order.push_back(v);
    for (std::size_t w = 0; w < n; ++w) {
      if (adj(v, w) && --indegree[w] == 0) ready.push(w);
    }
  }
  if (order.size() != n) throw CycleError("graph contains a directed cycle");
  return order;
}

// order[new_index] = old_index.
Graph permute(const Graph& graph, const std::vector<std::size_t>& order, std::vector<int> depths) {
  const std::size_t n = graph.size();
  std::vector<ModelSpec> vertices;
  vertices.reserve(n);
  for (std::size_t k : order) vertices.push_back(graph.vertex(k));
  AdjacencyMatrix adj(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (graph.has_edge(order[a], order[b])) adj.set(a, b, true);
    }
  }
  return Graph(std::move(vertices), std::move(adj), std::move(depths));
}

}  // namespace

std::vector<int> compute_depths(const Graph& graph) {
  const auto& adj = graph.adjacency();
  std::vector<int> depth(graph.size(), 1);
  for (std::size_t v : kahn_order(adj)) {
    for (std::size_t w = 0; w < graph.size(); ++w) {
      if (adj(v, w)) depth[w] = std::max(depth[w], depth[v] + 1);
    }
  }
  return depth;
}

Graph topological_sort(const Graph& graph) {
  const auto order = kahn_order(graph.adjacency());
  Graph sorted = permute(graph, order, {});
  auto depths = compute_depths(sorted);
  return Graph(sorted.vertices(), sorted.adjacency(), std::move(depths));
}

Graph canonicalize(const Graph& graph) {
  const Graph sorted = topological_sort(graph);
  std::vector<std::size_t> order(sorted.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto& depths = sorted.depths();
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return depths[a] < depths[b]; });
  std::vector<int> permuted_depths;
  permuted_depths.reserve(order.size());
  for (std::size_t k : order) permuted_depths.push_back(depths[k]);
  return permute(sorted, order, std::move(permuted_depths));
}

LayerPartition layer_partition(const Graph& graph) {
  const std::vector<int> depths = graph.depths().empty() ? compute_depths(graph) : graph.depths();
  LayerPartition partition;
  if (depths.empty()) return partition;
  const int max_depth = *std::max_element(depths.begin(), depths.end());
  partition.layers.resize(static_cast<std::size_t>(max_depth));
  for (std::size_t k = 0; k < depths.size(); ++k) {
    if (depths[k] < 1) throw InvalidGraph(fmt::format("vertex {} has depth {}", k + 1, depths[k]));
    partition.layers[static_cast<std::size_t>(depths[k] - 1)].push_back(k);
  }
  for (std::size_t d = 0; d < partition.layers.size(); ++d) {
    if (partition.layers[d].empty()) throw InvalidGraph(fmt::format("depth {} has no vertices", d + 1));
  }
  if (partition.layers.front().size() != 1) {
    throw InvalidGraph(fmt::format("input layer has {} vertices", partition.layers.front().size()));
  }
  if (partition.layers.back().size() != 1) {
    throw InvalidGraph(fmt::format("output layer has {} vertices", partition.layers.back().size()));
  }
  return partition;
}

double connection_probability(int d_src, int d_dst, double p0, double gamma) {
  if (d_src >= d_dst) {
    throw DomainError(fmt::format("edges run to deeper layers only (got {} -> {})", d_src, d_dst));
  }
  return p0 * std::exp(gamma * static_cast<double>(d_src - d_dst + 1));
}

std::string_view to_string(Rule rule) {
  switch (rule) {
    case Rule::kDegree: return "R1:degree";
    case Rule::kPredictiveChain: return "R2:predictive-chain";
    case Rule::kVertexCount: return "R3:vertex-count";
    case Rule::kLayerCount: return "R4:layer-count";
    case Rule::kAcyclic: return "R5:acyclic";
    case Rule::kRoles: return "R6:roles";
    case Rule::kLayerBlocks: return "R7:layer-blocks";
  }
  return "unknown";
}

std::vector<Violation> validate(const Graph& graph, const GraphLimits& limits) {
  std::vector<Violation> out;
  const std::size_t n = graph.size();
  const auto& adj = graph.adjacency();

  if (n < limits.min_vertices || n > limits.max_vertices) {
    out.push_back({Rule::kVertexCount, std::nullopt,
                   fmt::format("{} vertices outside [{}, {}]", n, limits.min_vertices, limits.max_vertices)});
  }
  if (n == 0) return out;

  bool upper_triangular = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      if (adj(i, j)) {
        upper_triangular = false;
        out.push_back({Rule::kAcyclic, j, fmt::format("edge {} -> {} runs backwards", i + 1, j + 1)});
      }
    }
  }

  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t in = adj.in_degree(k);
    const std::size_t outd = adj.out_degree(k);
    if (k == 0) {
      if (in != 0) out.push_back({Rule::kDegree, k, "input vertex has incoming edges"});
      if (outd == 0 && n > 1) out.push_back({Rule::kDegree, k, "input vertex has no outgoing edge"});
    } else if (k + 1 == n) {
      if (outd != 0) out.push_back({Rule::kDegree, k, "output vertex has outgoing edges"});
      if (in == 0) out.push_back({Rule::kDegree, k, "output vertex has no incoming edge"});
    } else {
      if (in == 0) out.push_back({Rule::kDegree, k, fmt::format("vertex {} has no incoming edge", k + 1)});
      if (outd == 0) out.push_back({Rule::kDegree, k, fmt::format("vertex {} has no outgoing edge", k + 1)});
    }
  }

  for (std::size_t v = 0; v < n; ++v) {
    if (!is_predictive(graph.vertex(v).role) || adj.in_degree(v) != 1) continue;
    const std::size_t u = graph.parents(v).front();
    if (is_predictive(graph.vertex(u).role)) {
      out.push_back({Rule::kPredictiveChain, v,
                     fmt::format("{} vertex {} is fed only by {} vertex {}", to_string(graph.vertex(v).role), v + 1,
                                 to_string(graph.vertex(u).role), u + 1)});
    }
  }

  if (graph.vertex(0).role != ModelRole::kInput) {
    out.push_back({Rule::kRoles, 0, "first vertex is not the input"});
  }
  for (std::size_t k = 1; k < n; ++k) {
    if (graph.vertex(k).role == ModelRole::kInput) {
      out.push_back({Rule::kRoles, k, fmt::format("vertex {} has the input role", k + 1)});
    }
  }
  if (n > 1 && graph.vertex(n - 1).role != ModelRole::kClassifier) {
    out.push_back({Rule::kRoles, n - 1, "output vertex is not a classifier"});
  }

  if (!upper_triangular) return out;

  const std::vector<int> depths = compute_depths(graph);
  const int layer_count = *std::max_element(depths.begin(), depths.end());
  if (static_cast<std::size_t>(layer_count) < limits.min_layers ||
      static_cast<std::size_t>(layer_count) > limits.max_layers) {
    out.push_back({Rule::kLayerCount, std::nullopt,
                   fmt::format("{} layers outside [{}, {}]", layer_count, limits.min_layers, limits.max_layers)});
  }

  if (!graph.depths().empty() && graph.depths() != depths) {
    out.push_back({Rule::kLayerBlocks, std::nullopt, "stored depths disagree with longest-path depths"});
  }
  const auto& stored = graph.depths().empty() ? depths : graph.depths();
  for (std::size_t k = 1; k < n; ++k) {
    if (stored[k] < stored[k - 1]) {
      out.push_back({Rule::kLayerBlocks, k, "layers are not contiguous in vertex order"});
      break;
    }
  }
  for (const auto& [i, j] : graph.edges()) {
    if (stored[i] == stored[j]) {
      out.push_back({Rule::kLayerBlocks, j, fmt::format("edge {} -> {} lies inside a layer", i + 1, j + 1)});
    }
  }
  return out;
}

std::size_t complexity(const Graph& graph) { return graph.size() + graph.edge_count(); }

}  // namespace graphevo
