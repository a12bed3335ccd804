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

#include <json.hpp>

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "fairdiv/adversary.hpp"
#include "fairdiv/dual.hpp"
#include "fairdiv/piecewise_constant.hpp"
#include "fairdiv/protocols.hpp"
#include "fairdiv/value_tree.hpp"

namespace fairdiv {

using Json = nlohmann::json;

/// Raised for malformed documents; `where` is a JSON pointer or a
/// "line L, column C" position.
class LoadError : public ArgumentError {
 public:
  LoadError(const std::string& where, const std::string& what)
      : ArgumentError(where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

Json rational_json(const Rational& value);
Json real_json(const Real& value);

/// {"type":"piecewise_constant","segments":[{"end":"1/2","density":"3/2"},...]}
Json valuation_json(const PiecewiseConstantValuation& v);
PiecewiseConstantValuation valuation_from_json(const Json& doc, const std::string& pointer = "");

/// Accepts a single valuation object, an array of them, or {"valuations":[...]}.
std::vector<PiecewiseConstantValuation> valuations_from_text(const std::string& text);

Json piece_json(const Piece& piece);
/// {"pieces":[[["0","1/3"]],...]}
Json allocation_json(const Allocation& allocation);
Allocation allocation_from_json(const Json& doc);

/// {"type":"balanced_value_tree","k":11,"seed":12345,"permissive":false}
struct TreeSpec {
  unsigned k = 11;
  std::uint64_t seed = 0;
  bool permissive = false;
};
Json tree_spec_json(const TreeSpec& spec);
TreeSpec tree_spec_from_json(const Json& doc);

Json reduction_report_json(const ReductionReport& report);

/// One line per query: kind, arguments, answer and the reveals it caused.
void write_transcript(std::ostream& out, const AdversarySession& session);

Json refutation_json(const RefutationOutcome& outcome);

}  // namespace fairdiv
