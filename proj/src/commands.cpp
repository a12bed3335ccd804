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

#include "fairdiv/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fairdiv/adversary.hpp"
#include "fairdiv/dual.hpp"
#include "fairdiv/errors.hpp"
#include "fairdiv/finders.hpp"
#include "fairdiv/json_io.hpp"
#include "fairdiv/piecewise_constant.hpp"
#include "fairdiv/protocols.hpp"

namespace fairdiv {

std::uint64_t player_seed(std::uint64_t seed, std::size_t player) {
  // splitmix64 finalizer over (seed, player) so neighbouring seeds decorrelate.
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ULL + (player + 1) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

std::string fixed(double value, int digits = 6) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, value);
  return buffer;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ArgumentError("cannot open " + path);
  }
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

/// The single player count of a divide/reduce run, from --n or --k.
std::optional<std::size_t> single_n(const ExperimentConfig& config) {
  if (config.k && !config.n.empty()) {
    throw ArgumentError("give either --n or --k, not both");
  }
  if (config.k) {
    if (*config.k > 20) {
      throw ArgumentError("--k " + std::to_string(*config.k) + " is too large for an explicit run");
    }
    std::size_t n = 1;
    for (unsigned i = 0; i < *config.k; ++i) {
      n *= 3;
    }
    return n;
  }
  if (config.n.size() > 1) {
    throw ArgumentError("this command takes a single --n");
  }
  if (config.n.empty()) {
    return std::nullopt;
  }
  return config.n.front();
}

std::vector<PiecewiseConstantValuation> load_or_generate(const ExperimentConfig& config,
                                                         std::optional<std::size_t> n,
                                                         const DensityBounds& bounds,
                                                         std::uint64_t seed) {
  if (config.valuations_file) {
    auto loaded = valuations_from_text(read_file(*config.valuations_file));
    if (n && *n != loaded.size()) {
      throw ArgumentError("--n " + std::to_string(*n) + " but " + *config.valuations_file + " holds " +
                          std::to_string(loaded.size()) + " valuations");
    }
    return loaded;
  }
  if (!n) {
    throw ArgumentError("--n, --k or --valuations is required");
  }
  if (*n < 2) {
    throw ArgumentError("need at least 2 players");
  }
  std::vector<PiecewiseConstantValuation> out;
  out.reserve(*n);
  for (std::size_t i = 0; i < *n; ++i) {
    out.push_back(random_dense_valuation(config.segments, bounds, player_seed(seed, i)));
  }
  return out;
}

std::vector<ExactValuationPtr> as_pointers(const std::vector<PiecewiseConstantValuation>& valuations) {
  std::vector<ExactValuationPtr> out;
  out.reserve(valuations.size());
  for (const auto& v : valuations) {
    out.push_back(std::make_shared<PiecewiseConstantValuation>(v));
  }
  return out;
}

std::string piece_text(const Piece& piece) {
  std::string out;
  for (const Interval& interval : piece.intervals()) {
    if (!out.empty()) {
      out += ' ';
    }
    out += '[' + to_string(interval.left()) + ',' + to_string(interval.right()) + ']';
  }
  return out;
}

void emit_json(std::ostream& out, const Json& doc) { out << doc.dump(2) << '\n'; }

}  // namespace

int cmd_divide(const ExperimentConfig& config, std::ostream& out) {
  const std::string name = config.protocols.empty() ? "even-paz" : config.protocols.front();
  if (config.protocols.size() > 1) {
    throw ArgumentError("divide runs one protocol at a time");
  }
  const Mode mode = parse_mode(config.mode);
  const Protocol protocol = protocol_by_name(name);
  const std::optional<std::size_t> n = single_n(config);

  Json runs = Json::array();
  bool all_proportional = true;
  if (config.format == OutputFormat::Csv) {
    out << "seed,player,value,bound,satisfied,queries,piece\n";
  }
  for (std::uint64_t seed : config.seeds) {
    const auto valuations = load_or_generate(config, n, DensityBounds{}, seed);
    const auto pointers = as_pointers(valuations);
    ExactReferee referee(pointers);
    Allocation allocation = protocol(referee, mode);
    check_partition(allocation);
    ProportionalityReport report = check_proportional(allocation, pointers, mode);
    all_proportional = all_proportional && report.proportional;
    const std::size_t players = valuations.size();
    const Rational bound = ratio(1, players);

    if (config.format == OutputFormat::Csv) {
      for (std::size_t i = 0; i < players; ++i) {
        out << seed << ',' << i << ',' << to_string(report.values[i]) << ',' << to_string(bound) << ','
            << (report.satisfied[i] ? "true" : "false") << ',' << referee.count(i) << ",\""
            << piece_text(allocation.pieces[i]) << "\"\n";
      }
      continue;
    }
    Json players_json = Json::array();
    for (std::size_t i = 0; i < players; ++i) {
      players_json.push_back({{"player", i},
                              {"piece", piece_json(allocation.pieces[i])},
                              {"value", rational_json(report.values[i])},
                              {"satisfied", static_cast<bool>(report.satisfied[i])},
                              {"queries", referee.count(i)}});
    }
    runs.push_back({{"seed", seed},
                    {"n", players},
                    {"bound", rational_json(bound)},
                    {"proportional", report.proportional},
                    {"queries", referee.total()},
                    {"players", players_json}});
  }
  if (config.format == OutputFormat::Json) {
    emit_json(out, {{"command", "divide"},
                    {"protocol", name},
                    {"mode", std::string(to_string(mode))},
                    {"runs", runs}});
  }
  return all_proportional ? kExitSuccess : kExitViolation;
}

int cmd_reduce(const ExperimentConfig& config, std::ostream& out) {
  const std::optional<std::size_t> n = single_n(config);
  const std::string name = config.protocols.empty() ? "even-paz" : config.protocols.front();
  const Protocol protocol = protocol_by_name(name);
  const DensityBounds bounds{0, Rational(2)};

  Json runs = Json::array();
  bool enough = true;
  if (config.format == OutputFormat::Csv) {
    out << "seed,player,light,heavy,width,value,dual_cost,base_queries\n";
  }
  for (std::uint64_t seed : config.seeds) {
    const auto valuations = load_or_generate(config, n, bounds, seed);
    ReductionReport report = reduction_pipeline(valuations, protocol);
    enough = enough && report.certificate_count * 3 >= report.n;
    if (config.format == OutputFormat::Csv) {
      for (const ReductionEntry& e : report.entries) {
        out << seed << ',' << e.player << ',' << (e.light ? "true" : "false") << ','
            << (e.heavy ? "true" : "false") << ',' << to_string(e.width) << ',' << to_string(e.value) << ','
            << to_string(e.dual_cost) << ',' << e.base_queries << '\n';
      }
      continue;
    }
    Json run = reduction_report_json(report);
    run["seed"] = seed;
    runs.push_back(std::move(run));
  }
  if (config.format == OutputFormat::Json) {
    emit_json(out, {{"command", "reduce"}, {"protocol", name}, {"runs", runs}});
  }
  return enough ? kExitSuccess : kExitViolation;
}

int cmd_scaling(const ExperimentConfig& config, std::ostream& out) {
  std::vector<std::size_t> ns = config.n;
  if (config.k) {
    throw ArgumentError("scaling takes a list of --n values");
  }
  if (ns.empty()) {
    ns = {3, 9, 27, 81, 243};
  }
  std::vector<std::string> names = config.protocols;
  if (names.empty()) {
    names = {"even-paz", "last-diminisher"};
  }
  const Mode requested = parse_mode(config.mode);

  struct Row {
    std::size_t n;
    std::string protocol;
    Mode mode;
    std::uint64_t seed;
    std::uint64_t queries;
  };
  std::vector<Row> rows;
  for (std::size_t n : ns) {
    if (n < 2) {
      throw ArgumentError("scaling needs n >= 2");
    }
    for (const std::string& name : names) {
      const Protocol protocol = protocol_by_name(name);
      // last-diminisher is cake-only; it serves as a contrast curve.
      const Mode mode = name == "last-diminisher" ? Mode::Cake : requested;
      for (std::uint64_t seed : config.seeds) {
        ExperimentConfig cell = config;
        cell.valuations_file.reset();
        const auto pointers = as_pointers(load_or_generate(cell, n, DensityBounds{}, seed));
        ExactReferee referee(pointers);
        Allocation allocation = protocol(referee, mode);
        check_partition(allocation);
        if (!check_proportional(allocation, pointers, mode).proportional) {
          throw ProtocolViolation(name + " allocation not proportional at n=" + std::to_string(n));
        }
        rows.push_back({n, name, mode, seed, referee.total()});
      }
    }
  }

  auto log2n = [](std::size_t n) { return std::log2(static_cast<double>(n)); };
  auto ceil_log2 = [](std::size_t n) {
    std::uint64_t c = 0;
    while ((std::size_t{1} << c) < n) {
      ++c;
    }
    return c;
  };
  if (config.format == OutputFormat::Csv) {
    out << "n,protocol,mode,seed,query_count,bound_2n_ceil_log2n,ratio_n_log2n,ratio_n2\n";
    for (const Row& r : rows) {
      out << r.n << ',' << r.protocol << ',' << to_string(r.mode) << ',' << r.seed << ',' << r.queries << ','
          << 2 * r.n * ceil_log2(r.n) << ',' << fixed(r.queries / (r.n * log2n(r.n))) << ','
          << fixed(static_cast<double>(r.queries) / (static_cast<double>(r.n) * r.n)) << '\n';
    }
    return kExitSuccess;
  }
  Json list = Json::array();
  for (const Row& r : rows) {
    list.push_back({{"n", r.n},
                    {"protocol", r.protocol},
                    {"mode", std::string(to_string(r.mode))},
                    {"seed", r.seed},
                    {"query_count", r.queries},
                    {"bound_2n_ceil_log2n", 2 * r.n * ceil_log2(r.n)},
                    {"ratio_n_log2n", fixed(r.queries / (r.n * log2n(r.n)))},
                    {"ratio_n2", fixed(static_cast<double>(r.queries) / (static_cast<double>(r.n) * r.n))}});
  }
  emit_json(out, {{"command", "scaling"}, {"rows", list}});
  return kExitSuccess;
}

int cmd_adversary(const ExperimentConfig& config, std::ostream& out) {
  if (!config.n.empty()) {
    throw ArgumentError("adversary takes --k (n = 3^k), not --n");
  }
  const unsigned k = config.k.value_or(60);
  const TreeParams params(k, config.permissive);
  const auto finder = make_finder(config.strategy);
  const std::uint64_t threshold = AdversarySession::threshold_for(params);
  const std::uint64_t budget = config.budget.value_or(threshold);

  bool violation = false;
  Json games = Json::array();
  if (config.format == OutputFormat::Csv) {
    out << "seed,queries,refuted,violated,width,value,max_revealed_heavy\n";
  }
  for (std::uint64_t seed : config.seeds) {
    AdversarySession session(params);
    const Piece claim = finder->find(session, budget, seed);
    const RefutationOutcome outcome = refute_claim(session, claim, seed);
    const SessionInvariants invariants = session.check_invariants();

    Json trace = Json::array();
    for (const TranscriptEntry& entry : session.transcript()) {
      trace.push_back(entry.max_heavy_after);
    }
    bool game_ok = invariants.ok() && session.queries() <= budget;
    Json game{{"seed", seed}, {"queries", session.queries()}, {"claim", piece_json(claim)}};
    const auto* refutation = std::get_if<Refutation>(&outcome);
    if (refutation) {
      bool audited = true;
      if (!refutation->by_width) {
        const Completion completion = refutation_completion(session, *refutation);
        audited = audit_completion(session, completion, claim).ok() && replays_transcript(session, completion);
      }
      game["completion_verified"] = audited;
      game_ok = game_ok && audited;
    } else if (session.queries() <= threshold && !params.permissive()) {
      // Under the threshold a refutation is guaranteed; failing one is a bug.
      // Permissive depths sit outside that regime.
      game_ok = false;
    }
    game["refutation"] = refutation_json(outcome);
    game["invariants_ok"] = invariants.ok();
    game["max_revealed_heavy"] = trace;
    std::ostringstream transcript;
    write_transcript(transcript, session);
    Json lines = Json::array();
    std::istringstream in(transcript.str());
    for (std::string line; std::getline(in, line);) {
      lines.push_back(Json::parse(line));
    }
    game["transcript"] = std::move(lines);
    violation = violation || !game_ok;

    if (config.format == OutputFormat::Csv) {
      out << seed << ',' << session.queries() << ',' << (refutation ? "true" : "false") << ','
          << (refutation ? refutation->violated : std::string()) << ','
          << (refutation ? to_string(refutation->width) : std::string()) << ','
          << (refutation ? to_string(refutation->value, 12) : std::string()) << ','
          << session.max_revealed_heavy() << '\n';
    } else {
      games.push_back(std::move(game));
    }
  }
  if (config.format == OutputFormat::Json) {
    emit_json(out, {{"command", "adversary"},
                    {"k", k},
                    {"strategy", std::string(finder->name())},
                    {"budget", budget},
                    {"threshold", threshold},
                    {"vacuous", threshold == 0},
                    {"games", games}});
  }
  return violation ? kExitViolation : kExitSuccess;
}

int run_experiment(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.seeds.empty()) {
      throw ArgumentError("at least one seed is required");
    }
    if (config.command == "divide") {
      return cmd_divide(config, out);
    }
    if (config.command == "reduce") {
      return cmd_reduce(config, out);
    }
    if (config.command == "scaling") {
      return cmd_scaling(config, out);
    }
    if (config.command == "adversary") {
      return cmd_adversary(config, out);
    }
    throw ArgumentError("unknown command '" + config.command + "'");
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ProtocolViolation& e) {
    err << "property violation: " << e.what() << '\n';
    return kExitViolation;
  } catch (const PartitionViolation& e) {
    err << "property violation: " << e.what() << '\n';
    return kExitViolation;
  } catch (const PreconditionViolation& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace fairdiv
