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

// Model graphs: DAGs of model-bearing vertices stored as adjacency matrices.
//
// Vertex 0 is the synthetic input and the last vertex is the output
// classifier. A graph in canonical form is topologically sorted, carries the
// longest-path depth of every vertex, and lists vertices grouped by depth, so
// each layer occupies a contiguous diagonal block of the adjacency matrix and
// that block is all zeros.

#ifndef GRAPHEVO_GRAPH_HPP_
#define GRAPHEVO_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graphevo/model_spec.hpp"

namespace graphevo {

// Dense K x K binary matrix; entry (i, j) == 1 means an edge i -> j.
class AdjacencyMatrix {
 public:
  AdjacencyMatrix() = default;
  explicit AdjacencyMatrix(std::size_t n) : n_(n), bits_(n * n, 0) {}

  std::size_t size() const { return n_; }
  bool operator()(std::size_t i, std::size_t j) const { return bits_[i * n_ + j] != 0; }
  void set(std::size_t i, std::size_t j, bool value) { bits_[i * n_ + j] = value ? 1 : 0; }
  void flip(std::size_t i, std::size_t j) { bits_[i * n_ + j] ^= 1; }

  std::size_t edge_count() const;
  std::size_t in_degree(std::size_t j) const;
  std::size_t out_degree(std::size_t i) const;

  friend bool operator==(const AdjacencyMatrix&, const AdjacencyMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> bits_;
};

using Edge = std::pair<std::size_t, std::size_t>;

class Graph {
 public:
  Graph() = default;
  // `depths` may be empty (not yet computed); otherwise one entry per vertex.
  Graph(std::vector<ModelSpec> vertices, AdjacencyMatrix adjacency, std::vector<int> depths = {});

  // 0-based edge list. Throws InvalidGraph on out-of-range or self edges.
  static Graph from_edges(std::vector<ModelSpec> vertices, const std::vector<Edge>& edges);

  std::size_t size() const { return vertices_.size(); }
  bool empty() const { return vertices_.empty(); }
  const std::vector<ModelSpec>& vertices() const { return vertices_; }
  const ModelSpec& vertex(std::size_t k) const { return vertices_[k]; }
  const AdjacencyMatrix& adjacency() const { return adjacency_; }
  const std::vector<int>& depths() const { return depths_; }
  bool has_edge(std::size_t i, std::size_t j) const { return adjacency_(i, j); }

  std::size_t edge_count() const { return adjacency_.edge_count(); }
  // Row-major (ascending source, then destination) edge list.
  std::vector<Edge> edges() const;
  // Ascending indices of the vertices feeding `j`.
  std::vector<std::size_t> parents(std::size_t j) const;
  std::vector<std::size_t> children(std::size_t i) const;
  std::vector<ModelRole> roles() const;

  Graph with_model(std::size_t k, ModelSpec spec) const;
  Graph with_params(const std::vector<ParamAssignment>& params) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<ModelSpec> vertices_;
  AdjacencyMatrix adjacency_;
  std::vector<int> depths_;
};

struct LayerPartition {
  // layers[d] holds the 0-based indices of vertices at depth d + 1.
  std::vector<std::vector<std::size_t>> layers;

  std::size_t depth_count() const { return layers.size(); }
  std::vector<std::size_t> sizes() const;
};

struct GraphLimits {
  std::size_t min_vertices = 2;
  std::size_t max_vertices = 12;
  std::size_t min_layers = 2;
  std::size_t max_layers = 6;
  // Upper bound on the vertex count drawn by the random operator.
  std::size_t random_vertex_cap = 10;
  std::size_t retrials = 100;
  double max_train_seconds = 3600.0;

  // Throws ConfigError when the bounds are inconsistent.
  void check() const;
};

// Kahn's algorithm; among ready vertices the lowest original index goes first.
// The result carries recomputed depths. Throws CycleError.
Graph topological_sort(const Graph& graph);

// Longest-path depth of every vertex, in the graph's own index order. Sources
// sit at depth 1, so vertex 0 of a single-input graph has depth 1. Throws
// CycleError.
std::vector<int> compute_depths(const Graph& graph);

// Topological sort followed by a stable regrouping by depth. Idempotent.
Graph canonicalize(const Graph& graph);

// Groups vertices by depth (stored depths when present, else recomputed).
// Throws InvalidGraph unless the first and last layers are singletons.
LayerPartition layer_partition(const Graph& graph);

// Block connection probability p0 * exp(gamma * (d_src - d_dst + 1)).
// Throws DomainError unless d_src < d_dst.
double connection_probability(int d_src, int d_dst, double p0, double gamma);

enum class Rule {
  kDegree = 1,           // interior vertices need in- and out-edges
  kPredictiveChain = 2,  // predictive vertex fed solely by a predictive vertex
  kVertexCount = 3,
  kLayerCount = 4,
  kAcyclic = 5,          // adjacency must be strictly upper triangular
  kRoles = 6,            // single input vertex first, classifier output last
  kLayerBlocks = 7,      // no edges inside a layer; depths consistent
};

std::string_view to_string(Rule rule);

struct Violation {
  Rule rule;
  std::optional<std::size_t> vertex;
  std::string detail;
};

// Complete list of violated rules; an empty list means the graph is valid.
std::vector<Violation> validate(const Graph& graph, const GraphLimits& limits);
inline bool is_valid(const Graph& graph, const GraphLimits& limits) { return validate(graph, limits).empty(); }

// |V| + |E|.
std::size_t complexity(const Graph& graph);

}  // namespace graphevo

#endif  // GRAPHEVO_GRAPH_HPP_
