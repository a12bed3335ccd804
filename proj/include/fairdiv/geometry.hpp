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

#include <span>
#include <vector>

#include "fairdiv/numeric.hpp"

namespace fairdiv {

/// Closed subinterval [left, right] of [0,1] with exact endpoints.
class Interval {
 public:
  /// Throws ArgumentError unless 0 <= left <= right <= 1.
  Interval(Rational left, Rational right);

  const Rational& left() const { return left_; }
  const Rational& right() const { return right_; }
  Rational width() const { return right_ - left_; }
  bool empty() const { return left_ == right_; }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  Rational left_;
  Rational right_;
};

/// Finite union of disjoint intervals, kept sorted with touching intervals
/// merged and zero-width intervals dropped. Two pieces covering the same
/// point set (up to measure zero) compare equal.
class Piece {
 public:
  Piece() = default;

  static Piece normalize(std::span<const Interval> raw);
  static Piece normalize(std::initializer_list<Interval> raw) {
    return normalize(std::span<const Interval>(raw.begin(), raw.size()));
  }
  static Piece single(Rational left, Rational right) {
    return normalize({Interval(std::move(left), std::move(right))});
  }

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }
  Rational width() const;

  /// Width of the intersection with [left, right].
  Rational overlap(const Rational& left, const Rational& right) const;

  friend bool operator==(const Piece&, const Piece&) = default;

 private:
  std::vector<Interval> intervals_;
};

inline Rational piece_width(const Piece& piece) { return piece.width(); }

}  // namespace fairdiv
