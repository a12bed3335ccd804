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
#include <vector>

#include "fairdiv/valuation.hpp"

namespace fairdiv {

/// One constant-density segment, ending at `end` (the start is the previous
/// segment's end, or 0).
struct Segment {
  Rational end;
  Rational density;

  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Step-density valuation with exact rational breakpoints and densities.
class PiecewiseConstantValuation final : public ExactValuation {
 public:
  /// Validates ascending ends finishing at 1, non-negative densities and
  /// total mass exactly 1. Throws ArgumentError on violation.
  explicit PiecewiseConstantValuation(std::vector<Segment> segments);

  static PiecewiseConstantValuation uniform();

  Rational eval(const Rational& x, const Rational& y) const override;
  std::optional<Rational> cut(const Rational& x, const Rational& r) const override;

  const std::vector<Segment>& segments() const { return segments_; }
  Rational segment_start(std::size_t i) const { return i == 0 ? Rational(0) : segments_[i - 1].end; }
  bool positive() const;

  friend bool operator==(const PiecewiseConstantValuation& a, const PiecewiseConstantValuation& b) {
    return a.segments_ == b.segments_;
  }

 private:
  // Mass of [0, x].
  Rational prefix_mass(const Rational& x) const;
  std::size_t segment_index(const Rational& x) const;

  std::vector<Segment> segments_;
  std::vector<Rational> prefix_;  // prefix_[i] = mass of [0, segment_start(i)]
};

/// True iff every segment density lies within the bounds. For a step
/// function the extremal density over subintervals is attained on a single
/// segment, so checking segments is exhaustive.
bool verify_dense(const PiecewiseConstantValuation& v, const DensityBounds& bounds);

/// Seeded random valuation with `n_segments` segments satisfying `bounds`.
///
/// Raw positive (or, when `positive` is false, possibly zero) densities on
/// random breakpoints are normalized to mass 1 and then blended with the
/// uniform density just enough to land inside the bounds. Deterministic in
/// `seed`. Throws ArgumentError for infeasible bounds or zero segments.
PiecewiseConstantValuation random_dense_valuation(std::size_t n_segments, const DensityBounds& bounds,
                                                  std::uint64_t seed, bool positive = true);

}  // namespace fairdiv
