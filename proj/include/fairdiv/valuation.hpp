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

#include <memory>
#include <optional>

#include "fairdiv/errors.hpp"
#include "fairdiv/geometry.hpp"
#include "fairdiv/numeric.hpp"

namespace fairdiv {

/// A valuation over [0,1] reachable only through Robertson-Webb queries.
///
/// Implementations must be non-negative, additive, divisible and normalized
/// (eval(0,1) == 1). `Value` is the answer domain of eval queries: Rational
/// for the exact families, Real for value trees. Cut answers are always
/// positions in [0,1], returned as exact rationals.
template <typename Value>
class BasicValuation {
 public:
  using value_type = Value;

  virtual ~BasicValuation() = default;

  /// v([x, y]) for 0 <= x <= y <= 1.
  virtual Value eval(const Rational& x, const Rational& y) const = 0;

  /// Smallest y with v([x, y]) == r, or nullopt when v([x, 1]) < r.
  virtual std::optional<Rational> cut(const Rational& x, const Value& r) const = 0;
};

using ExactValuation = BasicValuation<Rational>;
using RealValuation = BasicValuation<Real>;
using ExactValuationPtr = std::shared_ptr<const ExactValuation>;

/// Checks 0 <= x <= y <= 1; throws ArgumentError otherwise.
void check_query_range(const Rational& x, const Rational& y);

/// v(P): sum of eval over the piece's intervals.
template <typename Value>
Value value_of_piece(const BasicValuation<Value>& v, const Piece& piece) {
  Value total = 0;
  for (const Interval& interval : piece.intervals()) {
    total += v.eval(interval.left(), interval.right());
  }
  return total;
}

/// D_v(P) = v(P) / |P|. Throws ArgumentError for a zero-width piece.
template <typename Value>
Value density_of_piece(const BasicValuation<Value>& v, const Piece& piece) {
  Rational width = piece.width();
  if (width == 0) {
    throw ArgumentError("density of a zero-width piece is undefined");
  }
  if constexpr (std::is_same_v<Value, Rational>) {
    return Rational(value_of_piece(v, piece) / width);
  } else {
    return value_of_piece(v, piece) / to_real(width);
  }
}

/// Density bounds (alpha, beta); an empty beta means +infinity.
struct DensityBounds {
  Rational alpha = 0;
  std::optional<Rational> beta;

  /// Throws ArgumentError unless 0 <= alpha <= 1 <= beta.
  void validate() const;
  bool contains(const Rational& density) const {
    return density >= alpha && (!beta || density <= *beta);
  }
};

}  // namespace fairdiv
