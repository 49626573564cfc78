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

// End-to-end run: split, search, tune, score, and write the run directory.

#ifndef GRAPHEVO_RUN_HPP_
#define GRAPHEVO_RUN_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "graphevo/dataset.hpp"
#include "graphevo/hyperopt.hpp"
#include "graphevo/io.hpp"
#include "graphevo/pipeline.hpp"
#include "graphevo/search.hpp"

namespace graphevo {

struct RunOutcome {
  TrainTestSplit split;
  SearchResult search;
  Finalization final;
};

// Stratified split with config.train_ratio, run_search on the training part,
// then finalize_top5.
RunOutcome execute_run(const Dataset& data, const SearchConfig& config);

struct RunOptions {
  std::filesystem::path config_path;
  std::filesystem::path data_path;
  std::string label;  // empty selects the last column
  std::filesystem::path out_dir;
  std::optional<std::uint64_t> seed;  // overrides the config file
};

// Writes manifest.json, telemetry.csv, timings.csv, bho_trials.csv,
// best_graph.json, best_graph.dot, report.txt and final.csv into `out_dir`.
void write_artifacts(const std::filesystem::path& out_dir, const RunOutcome& outcome, const SearchConfig& config,
                     const nlohmann::json& dataset_fingerprint, const std::string& started_at);

// Returns 0 on success; on failure prints a diagnostic to `err` and returns 1.
int run_command(const RunOptions& options, std::ostream& log, std::ostream& err);

}  // namespace graphevo

#endif  // GRAPHEVO_RUN_HPP_
