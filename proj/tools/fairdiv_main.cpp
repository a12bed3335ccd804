/*
 * Copyright (C) 2026 The fairdiv Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line front end: fairdiv {divide,reduce,scaling,adversary} [flags].

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

#include "fairdiv/commands.hpp"

namespace {

void add_common(CLI::App& sub, fairdiv::ExperimentConfig& config, std::string& format, std::string& out) {
  sub.add_option("--seed,--seeds", config.seeds, "seed(s); one run per seed")->delimiter(',');
  sub.add_option("--out", out, "write the payload here instead of stdout");
  sub.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
  fairdiv::ExperimentConfig config;
  std::string format = "json";
  std::string out_path;
  unsigned k = 0;
  std::uint64_t budget = 0;
  std::string valuations;

  CLI::App app{"Proportional division protocols, dual reduction and the value-tree adversary."};
  app.require_subcommand(1);

  auto* divide = app.add_subcommand("divide", "run a protocol and report the allocation");
  auto* reduce = app.add_subcommand("reduce", "chore-to-cake reduction with heavy-piece certificates");
  auto* scaling = app.add_subcommand("scaling", "query counts across n as CSV/JSON rows");
  auto* adversary = app.add_subcommand("adversary", "play a heavy-piece finder against the adversary");

  for (CLI::App* sub : {divide, reduce, scaling}) {
    add_common(*sub, config, format, out_path);
    sub->add_option("--n", config.n, "number of players (scaling: comma list)")->delimiter(',');
    sub->add_option("--protocol", config.protocols, "cut-and-choose, even-paz or last-diminisher")->delimiter(',');
    sub->add_option("--mode", config.mode, "cake or chore")->check(CLI::IsMember({"cake", "chore"}));
    sub->add_option("--segments", config.segments, "segments per generated valuation")->check(CLI::PositiveNumber);
  }
  for (CLI::App* sub : {divide, reduce}) {
    sub->add_option("--k", k, "n = 3^k");
    sub->add_option("--valuations", valuations, "JSON file of piecewise-constant valuations");
  }
  add_common(*adversary, config, format, out_path);
  adversary->add_option("--k", k, "tree depth, n = 3^k")->default_val(60);
  adversary->add_option("--budget", budget, "query budget (default: the adversary threshold)");
  adversary->add_option("--strategy", config.strategy, "heavy-piece finder name");
  adversary->add_flag("--permissive-n", config.permissive, "allow depths below 11");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : fairdiv::kExitValidation;
  }

  CLI::App* chosen = app.get_subcommands().front();
  config.command = chosen->get_name();
  if (const CLI::Option* opt = chosen->get_option_no_throw("--k"); (opt && opt->count() > 0) || chosen == adversary) {
    config.k = k;
  }
  if (chosen == adversary && adversary->count("--budget") > 0) {
    config.budget = budget;
  }
  if (!valuations.empty()) {
    config.valuations_file = valuations;
  }
  config.format = format == "csv" ? fairdiv::OutputFormat::Csv : fairdiv::OutputFormat::Json;

  if (out_path.empty()) {
    return fairdiv::run_experiment(config, std::cout, std::cerr);
  }
  std::ofstream file(out_path);
  if (!file) {
    std::cerr << "error: cannot write " << out_path << '\n';
    return fairdiv::kExitValidation;
  }
  return fairdiv::run_experiment(config, file, std::cerr);
}
