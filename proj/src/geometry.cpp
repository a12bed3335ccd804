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

#include "fairdiv/geometry.hpp"

#include <algorithm>

#include "fairdiv/errors.hpp"

namespace fairdiv {

Interval::Interval(Rational left, Rational right)
    : left_(std::move(left)), right_(std::move(right)) {
  left_.canonicalize();
  right_.canonicalize();
  if (left_ < 0 || right_ > 1 || left_ > right_) {
    throw ArgumentError("interval [" + to_string(left_) + ", " + to_string(right_) +
                        "] is not a subinterval of [0,1]");
  }
}

Piece Piece::normalize(std::span<const Interval> raw) {
  std::vector<Interval> sorted;
  sorted.reserve(raw.size());
  for (const Interval& interval : raw) {
    if (!interval.empty()) {
      sorted.push_back(interval);
    }
  }
  std::sort(sorted.begin(), sorted.end(), [](const Interval& a, const Interval& b) {
    return a.left() < b.left() || (a.left() == b.left() && a.right() < b.right());
  });

  Piece out;
  for (const Interval& interval : sorted) {
    if (!out.intervals_.empty() && interval.left() <= out.intervals_.back().right()) {
      Interval& last = out.intervals_.back();
      if (interval.right() > last.right()) {
        last = Interval(last.left(), interval.right());
      }
    } else {
      out.intervals_.push_back(interval);
    }
  }
  return out;
}

Rational Piece::width() const {
  Rational total = 0;
  for (const Interval& interval : intervals_) {
    total += interval.width();
  }
  return total;
}

Rational Piece::overlap(const Rational& left, const Rational& right) const {
  Rational total = 0;
  for (const Interval& interval : intervals_) {
    const Rational& lo = std::max(interval.left(), left);
    const Rational& hi = std::min(interval.right(), right);
    if (lo < hi) {
      total += hi - lo;
    }
  }
  return total;
}

}  // namespace fairdiv
