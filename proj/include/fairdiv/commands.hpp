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


#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace fairdiv {

enum class OutputFormat { Json, Csv };

/// Everything a batch run needs. All randomness derives from `seeds`.
struct ExperimentConfig {
  std::string command;                    // divide | reduce | scaling | adversary
  std::vector<std::size_t> n;             // player counts; scaling accepts several
  std::optional<unsigned> k;              // n = 3^k; tree depth for adversary
  std::vector<std::uint64_t> seeds{0};
  std::vector<std::string> protocols;     // empty means the command's default
  std::string mode = "chore";
  std::optional<std::string> valuations_file;
  std::size_t segments = 8;               // segments per generated valuation
  OutputFormat format = OutputFormat::Json;
  std::optional<std::uint64_t> budget;    // adversary; defaults to the threshold
  std::string strategy = "greedy-dense";
  bool permissive = false;
};

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitViolation = 3;

/// Runs one command, writing the payload to `out` and diagnostics to `err`.
/// Returns the process exit code. Never throws for bad input.
int run_experiment(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

int cmd_divide(const ExperimentConfig& config, std::ostream& out);
int cmd_reduce(const ExperimentConfig& config, std::ostream& out);
int cmd_scaling(const ExperimentConfig& config, std::ostream& out);
int cmd_adversary(const ExperimentConfig& config, std::ostream& out);

/// Seed for player `player` of a run seeded with `seed`.
std::uint64_t player_seed(std::uint64_t seed, std::size_t player);

}  // namespace fairdiv
