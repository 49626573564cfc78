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

// File formats: CSV datasets, key=value run configuration, the JSON graph
// document, Graphviz DOT and the per-individual telemetry table.

#ifndef GRAPHEVO_IO_HPP_
#define GRAPHEVO_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "graphevo/dataset.hpp"
#include "graphevo/graph.hpp"
#include "graphevo/individual.hpp"
#include "graphevo/search.hpp"

namespace graphevo {

struct LoadedDataset {
  Dataset data;
  std::size_t rejected_rows = 0;
  std::vector<std::string> warnings;  // "line N: ..." per rejected row
};

// Comma-separated text with a header row. `label_column` names the label
// column; empty selects the last one. Non-numeric feature columns are one-hot
// encoded; rows with missing cells ("", "?", "NA", "nan") are rejected.
// Throws ParseError (with line number), LabelError or DatasetError.
LoadedDataset parse_dataset(std::istream& in, std::string_view label_column = {});
// Also throws IoError when the file cannot be opened.
LoadedDataset load_dataset(const std::filesystem::path& path, std::string_view label_column = {});

void write_dataset(std::ostream& out, const Dataset& data, std::string_view label_column = "label");
void save_dataset(const std::filesystem::path& path, const Dataset& data, std::string_view label_column = "label");

// Flat "key = value" lines; '#' starts a comment. Unknown keys, duplicate keys
// and malformed values throw ConfigError. The result is not yet checked.
SearchConfig parse_config(std::istream& in, SearchConfig base = {});
SearchConfig load_config(const std::filesystem::path& path, SearchConfig base = {});
// Canonical key=value text accepted by parse_config.
std::string format_config(const SearchConfig& config);

nlohmann::json graph_to_json(const Graph& graph);
// Rebuilds and canonicalizes the graph. Throws ParseError on malformed
// documents and ConfigError on unknown models.
Graph graph_from_json(const nlohmann::json& doc);
void save_graph(const std::filesystem::path& path, const Graph& graph);
Graph load_graph(const std::filesystem::path& path);

std::string graph_to_dot(const Graph& graph);

// Deterministic table: generation, id, provenance, status, loss,
// balanced_accuracy, fitness, vertices, edges, parents. Wall-clock times are
// written separately by write_timings so repeated runs compare byte for byte.
void write_telemetry(std::ostream& out, std::span<const Individual> rows);
void write_timings(std::ostream& out, std::span<const Individual> rows);

struct TelemetryRow {
  int generation = 0;
  std::uint64_t id = 0;
  OperatorKind provenance = OperatorKind::kRandom;
  Status status = Status::kEvaluated;
  double loss = kInfinity;
  double balanced_accuracy = 0.0;
  double fitness = kInfinity;
  std::size_t vertices = 0;
  std::size_t edges = 0;
};
std::vector<TelemetryRow> read_telemetry(std::istream& in);

// Round-trip formatting for reals; infinities print as "inf".
std::string format_real(double value);

// 64-bit FNV-1a over raw bytes.
std::uint64_t fnv1a64(std::string_view bytes);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace graphevo

#endif  // GRAPHEVO_IO_HPP_
