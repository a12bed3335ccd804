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

#include "fairdiv/json_io.hpp"

namespace fairdiv {

namespace {

std::string child_pointer(const std::string& base, const std::string& key) { return base + "/" + key; }

Rational rational_field(const Json& doc, const std::string& key, const std::string& pointer) {
  std::string where = child_pointer(pointer, key);
  if (!doc.contains(key)) {
    throw LoadError(where, "missing field");
  }
  const Json& field = doc.at(key);
  try {
    if (field.is_string()) {
      return parse_rational(field.get<std::string>());
    }
    if (field.is_number_integer()) {
      return Rational(mpz_class(field.dump(), 10));
    }
  } catch (const ArgumentError& e) {
    throw LoadError(where, e.what());
  }
  throw LoadError(where, "expected a rational string such as \"3/2\"");
}

const char* kind_name(QueryKind kind) { return kind == QueryKind::Eval ? "eval" : "cut"; }

const char* edge_name(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::Heavy:
      return "H";
    case EdgeKind::Light:
      return "L";
    case EdgeKind::Critical:
      return "C";
  }
  return "?";
}

Json optional_point(const std::optional<Rational>& point) {
  return point ? rational_json(*point) : Json(nullptr);
}

}  // namespace

Json rational_json(const Rational& value) { return to_string(value); }

Json real_json(const Real& value) { return to_string(value, 30); }

Json valuation_json(const PiecewiseConstantValuation& v) {
  Json segments = Json::array();
  for (const Segment& s : v.segments()) {
    segments.push_back({{"end", rational_json(s.end)}, {"density", rational_json(s.density)}});
  }
  return {{"type", "piecewise_constant"}, {"segments", segments}};
}

PiecewiseConstantValuation valuation_from_json(const Json& doc, const std::string& pointer) {
  if (!doc.is_object()) {
    throw LoadError(pointer.empty() ? "/" : pointer, "expected a valuation object");
  }
  if (doc.value("type", std::string()) != "piecewise_constant") {
    throw LoadError(child_pointer(pointer, "type"), "expected \"piecewise_constant\"");
  }
  if (!doc.contains("segments") || !doc.at("segments").is_array() || doc.at("segments").empty()) {
    throw LoadError(child_pointer(pointer, "segments"), "expected a non-empty array");
  }
  std::vector<Segment> segments;
  const Json& list = doc.at("segments");
  for (std::size_t i = 0; i < list.size(); ++i) {
    std::string where = child_pointer(child_pointer(pointer, "segments"), std::to_string(i));
    if (!list[i].is_object()) {
      throw LoadError(where, "expected a segment object");
    }
    segments.push_back(Segment{rational_field(list[i], "end", where), rational_field(list[i], "density", where)});
  }
  try {
    return PiecewiseConstantValuation(std::move(segments));
  } catch (const ArgumentError& e) {
    throw LoadError(pointer.empty() ? "/" : pointer, e.what());
  }
}

std::vector<PiecewiseConstantValuation> valuations_from_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    // Translate the byte offset into a line/column position.
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw LoadError("line " + std::to_string(line) + ", column " + std::to_string(column), e.what());
  }
  std::vector<PiecewiseConstantValuation> out;
  if (doc.is_object() && doc.contains("valuations")) {
    const Json& list = doc.at("valuations");
    if (!list.is_array()) {
      throw LoadError("/valuations", "expected an array");
    }
    for (std::size_t i = 0; i < list.size(); ++i) {
      out.push_back(valuation_from_json(list[i], "/valuations/" + std::to_string(i)));
    }
  } else if (doc.is_array()) {
    for (std::size_t i = 0; i < doc.size(); ++i) {
      out.push_back(valuation_from_json(doc[i], "/" + std::to_string(i)));
    }
  } else {
    out.push_back(valuation_from_json(doc));
  }
  return out;
}

Json piece_json(const Piece& piece) {
  Json out = Json::array();
  for (const Interval& interval : piece.intervals()) {
    out.push_back({rational_json(interval.left()), rational_json(interval.right())});
  }
  return out;
}

Json allocation_json(const Allocation& allocation) {
  Json pieces = Json::array();
  for (const Piece& piece : allocation.pieces) {
    pieces.push_back(piece_json(piece));
  }
  return {{"pieces", pieces}};
}

Allocation allocation_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("pieces") || !doc.at("pieces").is_array()) {
    throw LoadError("/pieces", "expected an array of pieces");
  }
  Allocation out;
  const Json& pieces = doc.at("pieces");
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    std::vector<Interval> intervals;
    for (std::size_t j = 0; j < pieces[i].size(); ++j) {
      const Json& pair = pieces[i][j];
      std::string where = "/pieces/" + std::to_string(i) + "/" + std::to_string(j);
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string()) {
        throw LoadError(where, "expected [\"left\", \"right\"]");
      }
      try {
        intervals.emplace_back(parse_rational(pair[0].get<std::string>()),
                               parse_rational(pair[1].get<std::string>()));
      } catch (const ArgumentError& e) {
        throw LoadError(where, e.what());
      }
    }
    out.pieces.push_back(Piece::normalize(intervals));
  }
  return out;
}

Json tree_spec_json(const TreeSpec& spec) {
  return {{"type", "balanced_value_tree"}, {"k", spec.k}, {"seed", spec.seed}, {"permissive", spec.permissive}};
}

TreeSpec tree_spec_from_json(const Json& doc) {
  if (!doc.is_object() || doc.value("type", std::string()) != "balanced_value_tree") {
    throw LoadError("/type", "expected \"balanced_value_tree\"");
  }
  if (!doc.contains("k") || !doc.at("k").is_number_unsigned()) {
    throw LoadError("/k", "expected a non-negative integer");
  }
  TreeSpec spec;
  spec.k = doc.at("k").get<unsigned>();
  if (doc.contains("seed")) {
    if (!doc.at("seed").is_number_unsigned()) {
      throw LoadError("/seed", "expected a non-negative integer");
    }
    spec.seed = doc.at("seed").get<std::uint64_t>();
  }
  if (doc.contains("permissive")) {
    if (!doc.at("permissive").is_boolean()) {
      throw LoadError("/permissive", "expected a boolean");
    }
    spec.permissive = doc.at("permissive").get<bool>();
  }
  return spec;
}

void write_query_log(std::ostream& out, std::span<const QueryRecord<Rational>> log) {
  for (const QueryRecord<Rational>& record : log) {
    Json line{{"kind", kind_name(record.kind)}, {"player", record.player}, {"x", rational_json(record.x)}};
    if (record.kind == QueryKind::Eval) {
      line["y"] = rational_json(record.y);
      line["answer"] = rational_json(record.value);
    } else {
      line["mass"] = rational_json(record.mass);
      line["answer"] = optional_point(record.point);
    }
    out << line.dump() << '\n';
  }
}

Json reduction_report_json(const ReductionReport& report) {
  Json players = Json::array();
  for (const ReductionEntry& entry : report.entries) {
    players.push_back({{"player", entry.player},
                       {"dual_piece", piece_json(entry.dual_piece)},
                       {"dual_cost", rational_json(entry.dual_cost)},
                       {"light", entry.light},
                       {"piece", piece_json(entry.piece)},
                       {"width", rational_json(entry.width)},
                       {"value", rational_json(entry.value)},
                       {"heavy", entry.heavy},
                       {"base_queries", entry.base_queries}});
  }
  return {{"n", report.n},
          {"certificates", report.certificate_count},
          {"required", (report.n + 2) / 3},
          {"light_pieces", report.light_count},
          {"dual_queries", report.dual_queries},
          {"base_queries_protocol", report.base_queries_protocol},
          {"base_queries_dualization", report.base_queries_dualization},
          {"players", players}};
}

void write_transcript(std::ostream& out, const AdversarySession& session) {
  for (const TranscriptEntry& entry : session.transcript()) {
    Json reveals = Json::array();
    for (const RevealEvent& event : entry.reveals) {
      reveals.push_back({{"depth", event.node.depth},
                         {"index", event.node.index.get_str(10)},
                         {"labels", {edge_name(event.kinds[0]), edge_name(event.kinds[1]), edge_name(event.kinds[2])}}});
    }
    Json line{{"kind", kind_name(entry.kind)}, {"x", rational_json(entry.x)}};
    if (entry.kind == QueryKind::Eval) {
      line["y"] = rational_json(entry.y);
      line["answer"] = real_json(entry.value);
    } else {
      line["mass"] = real_json(entry.mass);
      line["answer"] = optional_point(entry.point);
    }
    line["reveals"] = reveals;
    line["max_revealed_heavy"] = entry.max_heavy_after;
    out << line.dump() << '\n';
  }
}

Json refutation_json(const RefutationOutcome& outcome) {
  if (const auto* cannot = std::get_if<CannotRefute>(&outcome)) {
    return {{"refuted", false}, {"reason", cannot->reason}};
  }
  const Refutation& r = std::get<Refutation>(outcome);
  return {{"refuted", true},
          {"completion_seed", r.completion_seed},
          {"targeted_completion", r.targeted},
          {"claim", piece_json(r.claim)},
          {"width", rational_json(r.width)},
          {"value", real_json(r.value)},
          {"violated", r.violated}};
}

}  // namespace fairdiv
