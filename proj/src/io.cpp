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

#include "graphevo/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "graphevo/errors.hpp"
#include "graphevo/model_zoo.hpp"

namespace graphevo {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// One CSV record; double quotes may wrap a field and "" escapes a quote.
std::vector<std::string> split_record(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.push_back(was_quoted ? field : std::string(trim(field)));
      field.clear();
      was_quoted = false;
    } else {
      field += c;
    }
  }
  if (quoted) throw ParseError(fmt::format("line {}: unterminated quoted field", line_no));
  fields.push_back(was_quoted ? field : std::string(trim(field)));
  return fields;
}

bool is_missing(std::string_view cell) {
  const auto v = lower(trim(cell));
  return v.empty() || v == "?" || v == "na" || v == "nan";
}

bool parse_number(std::string_view text, double& out) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

}  // namespace

LoadedDataset parse_dataset(std::istream& in, std::string_view label_column) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) {
      header = split_record(line, line_no);
      break;
    }
  }
  if (header.empty()) throw ParseError("dataset has no header row");
  if (header.size() < 2) throw ParseError(fmt::format("line {}: need at least one feature and a label", line_no));

  std::size_t label_index = header.size() - 1;
  if (!label_column.empty()) {
    const auto it = std::find(header.begin(), header.end(), label_column);
    if (it == header.end()) throw LabelError(fmt::format("label column '{}' not found", label_column));
    label_index = static_cast<std::size_t>(it - header.begin());
  }

  LoadedDataset out;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_record(line, line_no);
    if (fields.size() != header.size()) {
      throw ParseError(fmt::format("line {}: expected {} fields, found {}", line_no, header.size(), fields.size()));
    }
    const auto missing = std::find_if(fields.begin(), fields.end(), [](const std::string& f) { return is_missing(f); });
    if (missing != fields.end()) {
      ++out.rejected_rows;
      out.warnings.push_back(fmt::format("line {}: missing value in column '{}', row rejected", line_no,
                                         header[static_cast<std::size_t>(missing - fields.begin())]));
      continue;
    }
    rows.push_back(std::move(fields));
  }
  if (rows.empty()) throw DatasetError("dataset has no complete rows");

  // Numeric columns stay as they are; any other column is one-hot encoded
  // over its sorted distinct values.
  struct Column {
    std::size_t source;
    bool numeric = true;
    std::vector<std::string> categories;
  };
  std::vector<Column> columns;
  Eigen::Index width = 0;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c == label_index) continue;
    Column col;
    col.source = c;
    double ignored = 0.0;
    for (const auto& row : rows) {
      if (!parse_number(row[c], ignored)) {
        col.numeric = false;
        break;
      }
    }
    if (!col.numeric) {
      std::set<std::string> distinct;
      for (const auto& row : rows) distinct.insert(row[c]);
      col.categories.assign(distinct.begin(), distinct.end());
      for (const auto& v : col.categories) out.data.feature_names.push_back(header[c] + "=" + v);
      width += static_cast<Eigen::Index>(col.categories.size());
    } else {
      out.data.feature_names.push_back(header[c]);
      ++width;
    }
    columns.push_back(std::move(col));
  }

  std::set<std::string> classes;
  for (const auto& row : rows) classes.insert(row[label_index]);
  if (classes.size() < 2) throw LabelError("label column has a single class");
  out.data.class_names.assign(classes.begin(), classes.end());

  out.data.features = Matrix::Zero(static_cast<Eigen::Index>(rows.size()), width);
  out.data.labels.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const auto ri = static_cast<Eigen::Index>(r);
    Eigen::Index j = 0;
    for (const auto& col : columns) {
      if (col.numeric) {
        double value = 0.0;
        parse_number(row[col.source], value);
        out.data.features(ri, j++) = value;
      } else {
        const auto it = std::lower_bound(col.categories.begin(), col.categories.end(), row[col.source]);
        out.data.features(ri, j + static_cast<Eigen::Index>(it - col.categories.begin())) = 1.0;
        j += static_cast<Eigen::Index>(col.categories.size());
      }
    }
    const auto label = std::lower_bound(out.data.class_names.begin(), out.data.class_names.end(), row[label_index]);
    out.data.labels.push_back(static_cast<int>(label - out.data.class_names.begin()));
  }
  out.data.check();
  return out;
}

LoadedDataset load_dataset(const std::filesystem::path& path, std::string_view label_column) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open dataset '{}'", path.string()));
  return parse_dataset(in, label_column);
}

void write_dataset(std::ostream& out, const Dataset& data, std::string_view label_column) {
  for (std::size_t j = 0; j < static_cast<std::size_t>(data.features.cols()); ++j) {
    out << (j < data.feature_names.size() ? data.feature_names[j] : fmt::format("x{}", j)) << ',';
  }
  out << label_column << '\n';
  for (Eigen::Index i = 0; i < data.features.rows(); ++i) {
    for (Eigen::Index j = 0; j < data.features.cols(); ++j) out << format_real(data.features(i, j)) << ',';
    out << data.class_names[static_cast<std::size_t>(data.labels[static_cast<std::size_t>(i)])] << '\n';
  }
}

void save_dataset(const std::filesystem::path& path, const Dataset& data, std::string_view label_column) {
  std::ostringstream text;
  write_dataset(text, data, label_column);
  write_file(path, text.str());
}

// ---- configuration ---------------------------------------------------------

namespace {

struct ConfigKey {
  std::string name;
  std::function<void(SearchConfig&, std::string_view)> set;
  std::function<std::string(const SearchConfig&)> get;
};

template <class T>
T parse_value(std::string_view key, std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw ConfigError(fmt::format("{}: cannot parse '{}'", key, text));
  return value;
}

template <class T, class Field>
ConfigKey key(std::string name, Field field) {
  ConfigKey k;
  k.name = name;
  k.set = [name, field](SearchConfig& c, std::string_view v) { field(c) = parse_value<T>(name, v); };
  k.get = [field](const SearchConfig& c) {
    SearchConfig copy = c;
    if constexpr (std::is_floating_point_v<T>) {
      return format_real(field(copy));
    } else {
      return fmt::format("{}", field(copy));
    }
  };
  return k;
}

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = [] {
    std::vector<ConfigKey> k;
    k.push_back(key<std::size_t>("population", [](SearchConfig& c) -> auto& { return c.population; }));
    k.push_back(key<std::size_t>("generations", [](SearchConfig& c) -> auto& { return c.generations; }));
    k.push_back(key<double>("mix_random", [](SearchConfig& c) -> auto& { return c.mix.random; }));
    k.push_back(key<double>("mix_heredity", [](SearchConfig& c) -> auto& { return c.mix.heredity; }));
    k.push_back(key<double>("mix_mutation", [](SearchConfig& c) -> auto& { return c.mix.mutation; }));
    k.push_back(key<double>("keep_best_fraction", [](SearchConfig& c) -> auto& { return c.keep_best_fraction; }));
    k.push_back(key<std::size_t>("tournament_size", [](SearchConfig& c) -> auto& { return c.tournament_size; }));
    k.push_back(key<double>("p0", [](SearchConfig& c) -> auto& { return c.sampling.p0; }));
    k.push_back(key<double>("gamma", [](SearchConfig& c) -> auto& { return c.sampling.gamma; }));
    k.push_back(key<double>("rho", [](SearchConfig& c) -> auto& { return c.sampling.rho; }));
    k.push_back(key<double>("alpha", [](SearchConfig& c) -> auto& { return c.alpha; }));
    k.push_back(key<std::size_t>("min_vertices", [](SearchConfig& c) -> auto& { return c.limits.min_vertices; }));
    k.push_back(key<std::size_t>("max_vertices", [](SearchConfig& c) -> auto& { return c.limits.max_vertices; }));
    k.push_back(key<std::size_t>("min_layers", [](SearchConfig& c) -> auto& { return c.limits.min_layers; }));
    k.push_back(key<std::size_t>("max_layers", [](SearchConfig& c) -> auto& { return c.limits.max_layers; }));
    k.push_back(
        key<std::size_t>("random_vertex_cap", [](SearchConfig& c) -> auto& { return c.limits.random_vertex_cap; }));
    k.push_back(key<std::size_t>("retrials", [](SearchConfig& c) -> auto& { return c.limits.retrials; }));
    k.push_back(
        key<double>("max_train_seconds", [](SearchConfig& c) -> auto& { return c.limits.max_train_seconds; }));
    k.push_back(key<int>("folds", [](SearchConfig& c) -> auto& { return c.folds; }));
    k.push_back(key<std::uint64_t>("seed", [](SearchConfig& c) -> auto& { return c.seed; }));
    k.push_back(key<std::size_t>("threads", [](SearchConfig& c) -> auto& { return c.threads; }));
    k.push_back(key<double>("wall_clock_seconds", [](SearchConfig& c) -> auto& { return c.wall_clock_seconds; }));
    k.push_back(key<std::size_t>("bho_trials", [](SearchConfig& c) -> auto& { return c.bho_trials; }));
    k.push_back(key<std::size_t>("bho_top", [](SearchConfig& c) -> auto& { return c.bho_top; }));
    k.push_back(key<double>("train_ratio", [](SearchConfig& c) -> auto& { return c.train_ratio; }));

    ConfigKey models;
    models.name = "models";
    models.set = [](SearchConfig& c, std::string_view v) {
      c.model_set.clear();
      std::string_view rest = v;
      while (!rest.empty()) {
        const auto comma = rest.find(',');
        const auto id = trim(rest.substr(0, comma));
        if (!id.empty()) c.model_set.push_back(default_spec(id));
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      }
    };
    models.get = [](const SearchConfig& c) {
      std::string out;
      for (const auto& m : c.models()) out += (out.empty() ? "" : ",") + m.model_id;
      return out;
    };
    k.push_back(std::move(models));
    return k;
  }();
  return keys;
}

}  // namespace

SearchConfig parse_config(std::istream& in, SearchConfig base) {
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = line;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    text = trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ConfigError(fmt::format("line {}: expected key = value", line_no));
    const std::string name(trim(text.substr(0, eq)));
    const auto value = trim(text.substr(eq + 1));
    const auto& keys = config_keys();
    const auto it = std::find_if(keys.begin(), keys.end(), [&](const ConfigKey& k) { return k.name == name; });
    if (it == keys.end()) throw ConfigError(fmt::format("line {}: unknown key '{}'", line_no, name));
    if (!seen.insert(name).second) throw ConfigError(fmt::format("line {}: duplicate key '{}'", line_no, name));
    it->set(base, value);
  }
  return base;
}

SearchConfig load_config(const std::filesystem::path& path, SearchConfig base) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open config '{}'", path.string()));
  return parse_config(in, std::move(base));
}

std::string format_config(const SearchConfig& config) {
  std::string out;
  for (const auto& k : config_keys()) out += fmt::format("{} = {}\n", k.name, k.get(config));
  return out;
}

// ---- graphs ----------------------------------------------------------------

namespace {

nlohmann::json param_to_json(const ParamValue& value) {
  return std::visit([](const auto& v) { return nlohmann::json(v); }, value);
}

ParamValue param_from_json(const nlohmann::json& j, const std::string& name) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) return j.get<double>();
  if (j.is_string()) return j.get<std::string>();
  throw ParseError(fmt::format("parameter '{}' has unsupported type", name));
}

}  // namespace

nlohmann::json graph_to_json(const Graph& graph) {
  nlohmann::json doc;
  doc["format"] = "graphevo-graph";
  doc["version"] = 1;
  auto& vertices = doc["vertices"] = nlohmann::json::array();
  for (const auto& v : graph.vertices()) {
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [name, value] : v.params) params[name] = param_to_json(value);
    vertices.push_back({{"model_id", v.model_id}, {"role", to_string(v.role)}, {"hyperparams", params}});
  }
  // Edges and depths are 1-based, matching how vertices are numbered in reports.
  auto& edges = doc["edges"] = nlohmann::json::array();
  for (const auto& [src, dst] : graph.edges()) edges.push_back({src + 1, dst + 1});
  doc["depths"] = graph.depths().empty() ? compute_depths(graph) : graph.depths();
  return doc;
}

Graph graph_from_json(const nlohmann::json& doc) {
  try {
    if (doc.at("format").get<std::string>() != "graphevo-graph") throw ParseError("not a graphevo graph document");
    if (doc.at("version").get<int>() != 1) throw ParseError("unsupported graph document version");
    std::vector<ModelSpec> vertices;
    for (const auto& v : doc.at("vertices")) {
      ModelSpec spec;
      spec.model_id = v.at("model_id").get<std::string>();
      spec.role = parse_role(v.at("role").get<std::string>());
      if (zoo_entry(spec.model_id).role != spec.role) {
        throw ParseError(fmt::format("model '{}' does not have role '{}'", spec.model_id, to_string(spec.role)));
      }
      for (const auto& [name, value] : v.at("hyperparams").items()) spec.params[name] = param_from_json(value, name);
      vertices.push_back(std::move(spec));
    }
    std::vector<Edge> edges;
    for (const auto& e : doc.at("edges")) {
      const auto src = e.at(0).get<std::size_t>();
      const auto dst = e.at(1).get<std::size_t>();
      if (src == 0 || dst == 0) throw ParseError("edge endpoints are 1-based");
      edges.emplace_back(src - 1, dst - 1);
    }
    Graph graph = Graph::from_edges(std::move(vertices), edges);
    const auto depths = compute_depths(graph);
    if (doc.at("depths").get<std::vector<int>>() != depths) {
      throw ParseError("stored depths disagree with the edge structure");
    }
    return canonicalize(graph);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(fmt::format("malformed graph document: {}", e.what()));
  }
}

void save_graph(const std::filesystem::path& path, const Graph& graph) {
  write_file(path, graph_to_json(graph).dump(2) + "\n");
}

Graph load_graph(const std::filesystem::path& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(fmt::format("{}: {}", path.string(), e.what()));
  }
  return graph_from_json(doc);
}

std::string graph_to_dot(const Graph& graph) {
  std::string out = "digraph composite {\n  rankdir=LR;\n  node [shape=box];\n";
  for (std::size_t k = 0; k < graph.size(); ++k) {
    const auto& v = graph.vertex(k);
    std::string label = display_name(v);
    for (const auto& [name, value] : v.params) label += fmt::format("\\n{}={}", name, format_param(value));
    out += fmt::format("  v{} [label=\"{}\"];\n", k, label);
  }
  for (const auto& [src, dst] : graph.edges()) out += fmt::format("  v{} -> v{};\n", src, dst);
  out += "}\n";
  return out;
}

// ---- telemetry -------------------------------------------------------------

std::string format_real(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  return fmt::format("{}", value);  // shortest round-trip form
}

void write_telemetry(std::ostream& out, std::span<const Individual> rows) {
  out << "generation,id,provenance,status,loss,balanced_accuracy,fitness,vertices,edges,parents\n";
  for (const auto& r : rows) {
    std::string parents;
    for (auto p : r.parents) parents += (parents.empty() ? "" : ";") + std::to_string(p);
    out << fmt::format("{},{},{},{},{},{},{},{},{},{}\n", r.generation, r.id, to_string(r.provenance),
                       to_string(r.status), format_real(r.loss), format_real(r.balanced_accuracy),
                       format_real(r.fitness), r.graph.size(), r.graph.edge_count(), parents);
  }
}

void write_timings(std::ostream& out, std::span<const Individual> rows) {
  out << "generation,id,wall_time_s\n";
  for (const auto& r : rows) out << fmt::format("{},{},{:.6f}\n", r.generation, r.id, r.wall_seconds);
}

std::vector<TelemetryRow> read_telemetry(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("telemetry has no header");
  std::vector<TelemetryRow> rows;
  std::size_t line_no = 1;
  auto real = [&](const std::string& s) {
    if (s == "inf") return kInfinity;
    double v = 0.0;
    if (!parse_number(s, v)) throw ParseError(fmt::format("line {}: bad number '{}'", line_no, s));
    return v;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto f = split_record(line, line_no);
    if (f.size() != 10) throw ParseError(fmt::format("line {}: expected 10 fields", line_no));
    TelemetryRow r;
    r.generation = std::stoi(f[0]);
    r.id = std::stoull(f[1]);
    r.provenance = parse_operator(f[2]);
    r.status = parse_status(f[3]);
    r.loss = real(f[4]);
    r.balanced_accuracy = real(f[5]);
    r.fitness = real(f[6]);
    r.vertices = std::stoul(f[7]);
    r.edges = std::stoul(f[8]);
    rows.push_back(r);
  }
  return rows;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError(fmt::format("write to '{}' failed", path.string()));
}

}  // namespace graphevo
