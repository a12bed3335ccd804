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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fairdiv/piecewise_constant.hpp"
#include "fairdiv/protocols.hpp"
#include "fairdiv/referee.hpp"

namespace fairdiv {

/// Black-box dual v* of a positive base valuation, answered through the base
/// player's referee:
///
///   eval*(x, y) = cut(0, y) - cut(0, x)        two base cuts
///   cut*(x, r)  = eval(0, cut(0, x) + r)       one base cut, one base eval
///
/// A dual cut whose target lies beyond 1 is a NoAnswer and costs only the
/// first base cut.
class DualValuation final : public ExactValuation {
 public:
  DualValuation(ExactReferee& base, std::size_t player) : base_(&base), player_(player) {}

  Rational eval(const Rational& x, const Rational& y) const override;
  std::optional<Rational> cut(const Rational& x, const Rational& r) const override;

 private:
  Rational base_cut_from_zero(const Rational& mass) const;

  ExactReferee* base_;
  std::size_t player_;
};

/// Exact dual of a positive step valuation: segment i of width w_i and
/// density d_i becomes a segment of width d_i * w_i and density 1 / d_i, in
/// the same order. Throws NotPositiveError if any density is zero.
PiecewiseConstantValuation dual_pwc_closed_form(const PiecewiseConstantValuation& v);

/// Image of a piece under x -> v(0, x): [a, b] maps to [v(0,a), v(0,b)].
/// Its width is v(P) and its dual value v*(image) is |P|.
Piece dual_piece(const ExactValuation& v, const Piece& piece);

/// Outcome for one player of the chore -> heavy-piece reduction.
struct ReductionEntry {
  std::size_t player = 0;
  Piece dual_piece;      // X_i, allocated by the chore protocol on v*_i
  Rational dual_cost;    // v*_i(X_i)
  Piece piece;           // Y_i, the dual of X_i with respect to v*_i
  Rational width;        // |Y_i|
  Rational value;        // v_i(Y_i)
  bool light = false;    // X_i light for v*_i
  bool heavy = false;    // Y_i heavy for v_i
  std::uint64_t base_queries = 0;
};

struct ReductionReport {
  std::size_t n = 0;
  std::vector<ReductionEntry> entries;
  std::uint64_t dual_queries = 0;                // queries the protocol made on the duals
  std::uint64_t base_queries_protocol = 0;       // base queries spent answering them
  std::uint64_t base_queries_dualization = 0;    // base queries spent dualizing X_i
  std::size_t light_count = 0;
  std::size_t certificate_count = 0;

  std::vector<ReductionEntry> certificates() const;
};

/// Runs a chore protocol on the duals of `valuations` (each positive and
/// (0,2)-dense) through referees, validates proportionality of its output,
/// and maps every allocated piece back through the dual. Players whose
/// mapped piece is heavy are the certificates; there are at least
/// ceil(n/3) of them when the protocol is proportional.
///
/// Throws ArgumentError for inputs that are not positive (0,2)-dense and
/// ProtocolViolation when the protocol's allocation is not proportional.
ReductionReport reduction_pipeline(std::span<const PiecewiseConstantValuation> valuations,
                                   const Protocol& chore_protocol);

}  // namespace fairdiv
