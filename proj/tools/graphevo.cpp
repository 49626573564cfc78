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

// graphevo command-line driver.
//
//   graphevo run --config run.cfg --data data.csv [--label y] --out runs/a [--seed 7]
//   graphevo generate --kind xor --n 400 --out xor.csv [--seed 1]
//   graphevo export-dot --graph best_graph.json --out best.dot
//
// GRAPHEVO_THREADS caps the number of concurrent fitness evaluations.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "graphevo/io.hpp"
#include "graphevo/run.hpp"
#include "graphevo/synthetic.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Evolutionary search over DAG compositions of machine-learning models"};
  app.require_subcommand(1);

  graphevo::RunOptions run;
  std::uint64_t run_seed = 0;
  auto* run_cmd = app.add_subcommand("run", "Search, tune and score a composite model");
  run_cmd->add_option("--config", run.config_path, "key=value configuration file")->required();
  run_cmd->add_option("--data", run.data_path, "CSV dataset with a header row")->required();
  run_cmd->add_option("--label", run.label, "label column (default: last column)");
  run_cmd->add_option("--out", run.out_dir, "output directory")->required();
  auto* seed_opt = run_cmd->add_option("--seed", run_seed, "master seed (overrides the config)");

  std::string kind;
  std::size_t rows = 400;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("generate", "Write a synthetic dataset");
  gen_cmd->add_option("--kind", kind, "dataset kind")->required()->check(CLI::IsMember({"gauss2", "xor", "rings"}));
  gen_cmd->add_option("--n", rows, "number of rows")->required();
  gen_cmd->add_option("--out", gen_out, "output CSV path")->required();
  gen_cmd->add_option("--seed", gen_seed, "generator seed");

  std::string graph_path;
  std::string dot_out;
  auto* dot_cmd = app.add_subcommand("export-dot", "Render a graph document as Graphviz DOT");
  dot_cmd->add_option("--graph", graph_path, "graph JSON document")->required();
  dot_cmd->add_option("--out", dot_out, "output DOT path")->required();

  CLI11_PARSE(app, argc, argv);

  if (run_cmd->parsed()) {
    if (*seed_opt) run.seed = run_seed;
    return graphevo::run_command(run, std::cout, std::cerr);
  }
  try {
    if (gen_cmd->parsed()) {
      const auto data = graphevo::make_synthetic(graphevo::parse_synthetic_kind(kind), rows, gen_seed);
      graphevo::save_dataset(gen_out, data);
    } else if (dot_cmd->parsed()) {
      graphevo::write_file(dot_out, graphevo::graph_to_dot(graphevo::load_graph(graph_path)));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
