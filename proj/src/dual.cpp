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

#include "fairdiv/dual.hpp"

#include <memory>

namespace fairdiv {

Rational DualValuation::base_cut_from_zero(const Rational& mass) const {
  std::optional<Rational> point = base_->cut(player_, 0, mass);
  if (!point) {
    // Positive normalized bases answer every cut from 0 with mass <= 1.
    throw std::logic_error("base valuation of player " + std::to_string(player_) +
                           " has no answer for cut(0, " + to_string(mass) + ")");
  }
  return *point;
}

Rational DualValuation::eval(const Rational& x, const Rational& y) const {
  check_query_range(x, y);
  Rational upper = base_cut_from_zero(y);
  Rational lower = base_cut_from_zero(x);
  return upper - lower;
}

std::optional<Rational> DualValuation::cut(const Rational& x, const Rational& r) const {
  check_query_range(x, x);
  if (r < 0) {
    throw ArgumentError("cut mass must be non-negative, got " + to_string(r));
  }
  Rational target = base_cut_from_zero(x) + r;
  if (target > 1) {
    return std::nullopt;
  }
  return base_->eval(player_, 0, target);
}

PiecewiseConstantValuation dual_pwc_closed_form(const PiecewiseConstantValuation& v) {
  if (!v.positive()) {
    throw NotPositiveError("the dual is only defined for positive valuations");
  }
  std::vector<Segment> out;
  out.reserve(v.segments().size());
  Rational end = 0;
  for (std::size_t i = 0; i < v.segments().size(); ++i) {
    const Segment& seg = v.segments()[i];
    end += seg.density * (seg.end - v.segment_start(i));
    Rational density = 1 / seg.density;
    out.push_back(Segment{end, density});
  }
  return PiecewiseConstantValuation(std::move(out));
}

Piece dual_piece(const ExactValuation& v, const Piece& piece) {
  std::vector<Interval> image;
  image.reserve(piece.intervals().size());
  for (const Interval& interval : piece.intervals()) {
    image.emplace_back(v.eval(0, interval.left()), v.eval(0, interval.right()));
  }
  return Piece::normalize(image);
}

std::vector<ReductionEntry> ReductionReport::certificates() const {
  std::vector<ReductionEntry> out;
  for (const ReductionEntry& entry : entries) {
    if (entry.heavy) {
      out.push_back(entry);
    }
  }
  return out;
}

ReductionReport reduction_pipeline(std::span<const PiecewiseConstantValuation> valuations,
                                   const Protocol& chore_protocol) {
  const std::size_t n = valuations.size();
  if (n == 0) {
    throw ArgumentError("reduction needs at least one valuation");
  }
  const DensityBounds zero_two{0, Rational(2)};
  std::vector<ExactValuationPtr> bases;
  std::vector<ExactValuationPtr> exact_duals;
  for (std::size_t i = 0; i < n; ++i) {
    if (!valuations[i].positive()) {
      throw NotPositiveError("valuation " + std::to_string(i) + " is not positive");
    }
    if (!verify_dense(valuations[i], zero_two)) {
      throw ArgumentError("valuation " + std::to_string(i) + " is not (0,2)-dense");
    }
    bases.push_back(std::make_shared<PiecewiseConstantValuation>(valuations[i]));
    exact_duals.push_back(std::make_shared<PiecewiseConstantValuation>(dual_pwc_closed_form(valuations[i])));
  }

  ExactReferee base_referee(bases);
  std::vector<ExactValuationPtr> black_box_duals;
  black_box_duals.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    black_box_duals.push_back(std::make_shared<DualValuation>(base_referee, i));
  }
  ExactReferee dual_referee(black_box_duals);

  Allocation allocation = chore_protocol(dual_referee, Mode::Chore);
  ProportionalityReport proportional = check_proportional(allocation, exact_duals, Mode::Chore);
  if (!proportional.proportional) {
    throw ProtocolViolation("chore protocol returned a non-proportional allocation on the duals");
  }

  ReductionReport report;
  report.n = n;
  report.dual_queries = dual_referee.total();
  report.base_queries_protocol = base_referee.total();

  for (std::size_t i = 0; i < n; ++i) {
    ReductionEntry entry;
    entry.player = i;
    entry.dual_piece = allocation.pieces[i];
    entry.dual_cost = proportional.values[i];
    entry.light = is_light(entry.dual_piece.width(), entry.dual_cost, n);
    // The dual of v*_i is v_i, so mapping X_i through v*_i lands in v_i's
    // coordinates.
    entry.piece = dual_piece(*black_box_duals[i], entry.dual_piece);
    entry.width = entry.piece.width();
    entry.value = value_of_piece(*bases[i], entry.piece);
    entry.heavy = is_heavy(entry.width, entry.value, n);
    report.light_count += entry.light ? 1 : 0;
    report.certificate_count += entry.heavy ? 1 : 0;
    report.entries.push_back(std::move(entry));
  }
  report.base_queries_dualization = base_referee.total() - report.base_queries_protocol;
  for (std::size_t i = 0; i < n; ++i) {
    report.entries[i].base_queries = base_referee.count(i);
  }
  return report;
}

}  // namespace fairdiv
