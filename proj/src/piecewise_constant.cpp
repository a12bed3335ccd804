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

#include "fairdiv/piecewise_constant.hpp"

#include <algorithm>
#include <random>

namespace fairdiv {

void check_query_range(const Rational& x, const Rational& y) {
  if (x < 0 || y > 1 || x > y) {
    throw ArgumentError("query range [" + to_string(x) + ", " + to_string(y) +
                        "] is not a subinterval of [0,1]");
  }
}

void DensityBounds::validate() const {
  if (alpha < 0 || alpha > 1 || (beta && *beta < 1)) {
    throw ArgumentError("density bounds must satisfy 0 <= alpha <= 1 <= beta");
  }
}

PiecewiseConstantValuation::PiecewiseConstantValuation(std::vector<Segment> segments)
    : segments_(std::move(segments)) {
  if (segments_.empty()) {
    throw ArgumentError("piecewise-constant valuation needs at least one segment");
  }
  Rational start = 0;
  prefix_.reserve(segments_.size() + 1);
  prefix_.push_back(0);
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    Segment& seg = segments_[i];
    seg.end.canonicalize();
    seg.density.canonicalize();
    if (seg.end <= start) {
      throw ArgumentError("segment " + std::to_string(i) + ": end " + to_string(seg.end) +
                          " is not strictly ascending");
    }
    if (seg.density < 0) {
      throw ArgumentError("segment " + std::to_string(i) + ": negative density " +
                          to_string(seg.density));
    }
    prefix_.push_back(prefix_.back() + seg.density * (seg.end - start));
    start = seg.end;
  }
  if (start != 1) {
    throw ArgumentError("final segment must end at 1, got " + to_string(start));
  }
  if (prefix_.back() != 1) {
    throw ArgumentError("valuation is not normalized: total mass " + to_string(prefix_.back()));
  }
}

PiecewiseConstantValuation PiecewiseConstantValuation::uniform() {
  return PiecewiseConstantValuation({Segment{1, 1}});
}

bool PiecewiseConstantValuation::positive() const {
  return std::all_of(segments_.begin(), segments_.end(),
                     [](const Segment& s) { return s.density > 0; });
}

std::size_t PiecewiseConstantValuation::segment_index(const Rational& x) const {
  // First segment whose end is strictly beyond x; x == 1 maps to the last one.
  auto it = std::upper_bound(segments_.begin(), segments_.end(), x,
                             [](const Rational& value, const Segment& s) { return value < s.end; });
  if (it == segments_.end()) {
    return segments_.size() - 1;
  }
  return static_cast<std::size_t>(it - segments_.begin());
}

Rational PiecewiseConstantValuation::prefix_mass(const Rational& x) const {
  std::size_t i = segment_index(x);
  return prefix_[i] + (x - segment_start(i)) * segments_[i].density;
}

Rational PiecewiseConstantValuation::eval(const Rational& x, const Rational& y) const {
  check_query_range(x, y);
  return prefix_mass(y) - prefix_mass(x);
}

std::optional<Rational> PiecewiseConstantValuation::cut(const Rational& x, const Rational& r) const {
  check_query_range(x, x);
  if (r < 0) {
    throw ArgumentError("cut mass must be non-negative, got " + to_string(r));
  }
  if (r == 0) {
    return x;
  }
  Rational target = prefix_mass(x) + r;
  if (target > 1) {
    return std::nullopt;
  }
  // First segment whose closing prefix reaches the target; its opening
  // prefix is strictly below the target, so its density is positive.
  auto it = std::lower_bound(prefix_.begin() + 1, prefix_.end(), target);
  std::size_t i = static_cast<std::size_t>(it - prefix_.begin()) - 1;
  Rational y = segment_start(i) + (target - prefix_[i]) / segments_[i].density;
  y.canonicalize();
  return y;
}

bool verify_dense(const PiecewiseConstantValuation& v, const DensityBounds& bounds) {
  return std::all_of(v.segments().begin(), v.segments().end(),
                     [&](const Segment& s) { return bounds.contains(s.density); });
}

PiecewiseConstantValuation random_dense_valuation(std::size_t n_segments, const DensityBounds& bounds,
                                                  std::uint64_t seed, bool positive) {
  bounds.validate();
  if (n_segments == 0) {
    throw ArgumentError("random_dense_valuation needs at least one segment");
  }
  std::mt19937_64 rng(seed);

  // Breakpoints: distinct multiples of 1/denominator.
  std::uniform_int_distribution<std::uint64_t> scale_dist(2, 12);
  const std::uint64_t denominator = n_segments * scale_dist(rng);
  std::vector<std::uint64_t> cuts;
  if (n_segments > 1) {
    std::vector<std::uint64_t> candidates(denominator - 1);
    for (std::uint64_t i = 0; i < candidates.size(); ++i) {
      candidates[i] = i + 1;
    }
    std::shuffle(candidates.begin(), candidates.end(), rng);
    cuts.assign(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(n_segments - 1));
    std::sort(cuts.begin(), cuts.end());
  }
  cuts.push_back(denominator);

  std::vector<Rational> widths;
  std::uint64_t previous = 0;
  for (std::uint64_t c : cuts) {
    widths.push_back(ratio(c - previous, denominator));
    previous = c;
  }

  // Raw weights, normalized to mass one.
  std::uniform_int_distribution<int> weight_dist(positive ? 1 : 0, 20);
  std::vector<Rational> raw(n_segments);
  Rational mass = 0;
  do {
    mass = 0;
    for (std::size_t i = 0; i < n_segments; ++i) {
      raw[i] = weight_dist(rng);
      mass += raw[i] * widths[i];
    }
  } while (mass == 0);
  for (Rational& g : raw) {
    g /= mass;
  }

  // Blend toward uniform: density_i = (1 - t) + t * raw_i keeps mass one;
  // pick the largest t in [0,1] that satisfies both bounds.
  Rational t = 1;
  for (const Rational& g : raw) {
    if (g > 1 && bounds.beta) {
      t = std::min(t, Rational((*bounds.beta - 1) / (g - 1)));
    } else if (g < 1) {
      t = std::min(t, Rational((1 - bounds.alpha) / (1 - g)));
    }
  }

  std::vector<Segment> segments;
  segments.reserve(n_segments);
  Rational end = 0;
  for (std::size_t i = 0; i < n_segments; ++i) {
    end += widths[i];
    Rational density = (1 - t) + t * raw[i];
    density.canonicalize();
    segments.push_back(Segment{end, density});
  }
  return PiecewiseConstantValuation(std::move(segments));
}

}  // namespace fairdiv
