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

#include "graphevo/run.hpp"

#include <chrono>
#include <ctime>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "graphevo/errors.hpp"
#include "graphevo/model_zoo.hpp"

namespace graphevo {

RunOutcome execute_run(const Dataset& data, const SearchConfig& config) {
  data.check();
  config.check();
  Rng split_rng(config.seed, StreamId{streams::kSplit, 0});
  RunOutcome outcome{split_train_test(data, config.train_ratio, split_rng), {}, {}};
  outcome.search = run_search(outcome.split.train, config);
  outcome.final = finalize_top5(outcome.search, outcome.split.train, outcome.split.test, config);
  return outcome;
}

namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string describe_params(const Graph& graph) {
  std::string out;
  for (std::size_t k = 0; k < graph.size(); ++k) {
    for (const auto& [name, value] : graph.vertex(k).params) {
      out += fmt::format("{}v{}.{}={}", out.empty() ? "" : ";", k, name, format_param(value));
    }
  }
  return out;
}

std::string report_text(const RunOutcome& outcome, const SearchConfig& config) {
  const auto& best = outcome.final.ranked.front().tuned;
  const Graph& graph = outcome.final.final_model.graph;
  std::string out;
  out += "graphevo run report\n\n";
  out += fmt::format("test balanced accuracy: {}\n", format_real(outcome.final.final_model.test_balanced_accuracy));
  out += fmt::format("tuned fitness:          {}\n", format_real(best.fitness));
  out += fmt::format("tuned loss:             {}\n", format_real(best.loss));
  out += fmt::format("complexity:             {} ({} vertices, {} edges)\n", complexity(graph), graph.size(),
                     graph.edge_count());
  out += fmt::format("individual id:          {}\n", best.id);
  out += fmt::format("evaluated individuals:  {} of {}\n", outcome.search.evaluated, config.population);
  out += fmt::format("generations:            {}\n\n", outcome.search.generations.size());
  out += "vertices:\n";
  for (std::size_t k = 0; k < graph.size(); ++k) {
    const auto& v = graph.vertex(k);
    out += fmt::format("  v{} depth {} {}", k, graph.depths()[k], display_name(v));
    for (const auto& [name, value] : v.params) out += fmt::format(" {}={}", name, format_param(value));
    const auto parents = graph.parents(k);
    if (!parents.empty()) {
      out += " <-";
      for (auto p : parents) out += fmt::format(" v{}", p);
    }
    out += "\n";
  }
  return out;
}

}  // namespace

void write_artifacts(const std::filesystem::path& out_dir, const RunOutcome& outcome, const SearchConfig& config,
                     const nlohmann::json& dataset_fingerprint, const std::string& started_at) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError(fmt::format("cannot create '{}': {}", out_dir.string(), ec.message()));

  const auto members = outcome.search.all_members();
  {
    std::ostringstream telemetry;
    write_telemetry(telemetry, members);
    write_file(out_dir / "telemetry.csv", telemetry.str());
    std::ostringstream timings;
    write_timings(timings, members);
    write_file(out_dir / "timings.csv", timings.str());
  }
  {
    std::string trials = "rank,individual_id,trial,loss,balanced_accuracy,failed,params\n";
    for (std::size_t rank = 0; rank < outcome.final.ranked.size(); ++rank) {
      const auto& tuned = outcome.final.ranked[rank];
      for (const auto& t : tuned.trials) {
        const Graph g = tuned.incumbent.graph.with_params(t.params);
        trials += fmt::format("{},{},{},{},{},{},\"{}\"\n", rank + 1, tuned.incumbent.id, t.index, format_real(t.loss),
                              format_real(t.balanced_accuracy), t.failed ? 1 : 0, describe_params(g));
      }
    }
    write_file(out_dir / "bho_trials.csv", trials);
  }
  const auto& best = outcome.final.ranked.front().tuned;
  const Graph& graph = outcome.final.final_model.graph;
  save_graph(out_dir / "best_graph.json", graph);
  write_file(out_dir / "best_graph.dot", graph_to_dot(graph));
  write_file(out_dir / "report.txt", report_text(outcome, config));
  write_file(out_dir / "final.csv",
             fmt::format("id,test_balanced_accuracy,fitness,loss,complexity\n{},{},{},{},{}\n", best.id,
                         format_real(outcome.final.final_model.test_balanced_accuracy), format_real(best.fitness),
                         format_real(best.loss), complexity(graph)));

  nlohmann::json manifest;
  manifest["config"] = format_config(config);
  manifest["seed"] = config.seed;
  manifest["dataset"] = dataset_fingerprint;
  manifest["split"] = {{"train_rows", outcome.split.train.size()}, {"test_rows", outcome.split.test.size()}};
  manifest["started_at"] = started_at;
  manifest["finished_at"] = utc_now();
  manifest["artifacts"] = {"telemetry.csv", "timings.csv",  "bho_trials.csv", "best_graph.json",
                           "best_graph.dot", "report.txt", "final.csv"};
  write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
}

int run_command(const RunOptions& options, std::ostream& log, std::ostream& err) {
  try {
    const std::string started_at = utc_now();
    SearchConfig config = load_config(options.config_path);
    if (options.seed) config.seed = *options.seed;
    config.check();

    const std::string raw = read_file(options.data_path);
    std::istringstream text(raw);
    const auto loaded = parse_dataset(text, options.label);
    for (const auto& w : loaded.warnings) err << options.data_path.string() << ": " << w << '\n';

    nlohmann::json fingerprint;
    fingerprint["path"] = options.data_path.string();
    fingerprint["rows"] = loaded.data.size();
    fingerprint["columns"] = loaded.data.features.cols();
    fingerprint["rejected_rows"] = loaded.rejected_rows;
    fingerprint["class_names"] = loaded.data.class_names;
    fingerprint["class_counts"] = loaded.data.class_counts();
    fingerprint["fnv1a64"] = fmt::format("{:016x}", fnv1a64(raw));

    log << fmt::format("loaded {} rows, {} features, {} classes\n", loaded.data.size(), loaded.data.features.cols(),
                       loaded.data.num_classes());
    const auto outcome = execute_run(loaded.data, config);
    write_artifacts(options.out_dir, outcome, config, fingerprint, started_at);
    log << fmt::format("test balanced accuracy {}; artifacts in {}\n",
                       format_real(outcome.final.final_model.test_balanced_accuracy), options.out_dir.string());
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace graphevo
