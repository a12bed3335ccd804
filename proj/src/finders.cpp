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

#include "fairdiv/finders.hpp"

#include <algorithm>
#include <random>

namespace fairdiv {

namespace {

// Interval of the given width starting at `start`, shifted left to fit.
Piece window(const Rational& start, const Rational& width) {
  Rational left = std::min(start, Rational(1 - width));
  return Piece::single(left, left + width);
}

Rational random_start(std::mt19937_64& rng, const Rational& width) {
  std::uniform_int_distribution<unsigned long> dist(0, (1UL << 32) - 1);
  Rational u = ratio(dist(rng), 1UL << 32);
  return u * (1 - width);
}

Rational leaf_width(const AdversarySession& session) {
  Rational w(1, session.params().leaves());
  w.canonicalize();
  return w;
}

class BlindFinder final : public HeavyPieceFinder {
 public:
  std::string_view name() const override { return "blind"; }
  Piece find(AdversarySession& session, std::uint64_t, std::uint64_t seed) const override {
    std::mt19937_64 rng(seed);
    return window(random_start(rng, leaf_width(session)), leaf_width(session));
  }
};

class GreedyDenseFinder final : public HeavyPieceFinder {
 public:
  std::string_view name() const override { return "greedy-dense"; }
  Piece find(AdversarySession& session, std::uint64_t budget, std::uint64_t) const override {
    const Rational width = leaf_width(session);
    Rational lo = 0;
    Rational hi = 1;
    Real value = 1;
    for (std::uint64_t i = 0; i < budget && hi - lo > width; ++i) {
      Rational mid = (lo + hi) / 2;
      Real left = session.answer_eval(lo, mid);
      if (left >= value - left) {
        hi = mid;
        value = left;
      } else {
        lo = mid;
        value -= left;
      }
    }
    return window(lo, width);
  }
};

class TernaryZoomFinder final : public HeavyPieceFinder {
 public:
  std::string_view name() const override { return "ternary-zoom"; }
  Piece find(AdversarySession& session, std::uint64_t budget, std::uint64_t) const override {
    const Rational width = leaf_width(session);
    Rational lo = 0;
    Rational hi = 1;
    Real value = 1;
    for (std::uint64_t i = 0; i < budget && hi - lo > width; ++i) {
      Rational third = lo + (hi - lo) / 3;
      Real first = session.answer_eval(lo, third);
      if (3 * first >= value) {
        hi = third;
        value = first;
      } else {
        lo = third;
        value -= first;
      }
    }
    return window(lo, width);
  }
};

struct Probe {
  Rational start;
  Rational gap;
};

std::vector<Probe> cut_probes(AdversarySession& session, std::uint64_t budget, std::uint64_t seed) {
  const Rational width = leaf_width(session);
  const Real half_share = to_real(width) / 2;
  std::mt19937_64 rng(seed);
  std::vector<Probe> probes;
  for (std::uint64_t i = 0; i < budget; ++i) {
    Rational x = random_start(rng, width);
    std::optional<Rational> y = session.answer_cut(x, half_share);
    if (y) {
      probes.push_back(Probe{x, *y - x});
    }
  }
  std::sort(probes.begin(), probes.end(), [](const Probe& a, const Probe& b) { return a.gap < b.gap; });
  return probes;
}

class CutProbeFinder final : public HeavyPieceFinder {
 public:
  std::string_view name() const override { return "cut-probe"; }
  Piece find(AdversarySession& session, std::uint64_t budget, std::uint64_t seed) const override {
    std::vector<Probe> probes = cut_probes(session, budget, seed);
    Rational start = probes.empty() ? Rational(0) : probes.front().start;
    return window(start, leaf_width(session));
  }
};

class TwoProbeFinder final : public HeavyPieceFinder {
 public:
  std::string_view name() const override { return "two-probe"; }
  Piece find(AdversarySession& session, std::uint64_t budget, std::uint64_t seed) const override {
    const Rational half = leaf_width(session) / 2;
    std::vector<Probe> probes = cut_probes(session, budget, seed);
    std::vector<Interval> parts;
    for (std::size_t i = 0; i < std::min<std::size_t>(2, probes.size()); ++i) {
      Rational left = std::min(probes[i].start, Rational(1 - half));
      parts.emplace_back(left, left + half);
    }
    if (parts.empty()) {
      parts.emplace_back(Rational(0), half);
    }
    return Piece::normalize(parts);
  }
};

}  // namespace

std::unique_ptr<HeavyPieceFinder> make_finder(std::string_view name) {
  if (name == "blind") {
    return std::make_unique<BlindFinder>();
  }
  if (name == "greedy-dense") {
    return std::make_unique<GreedyDenseFinder>();
  }
  if (name == "ternary-zoom") {
    return std::make_unique<TernaryZoomFinder>();
  }
  if (name == "cut-probe") {
    return std::make_unique<CutProbeFinder>();
  }
  if (name == "two-probe") {
    return std::make_unique<TwoProbeFinder>();
  }
  throw ArgumentError("unknown finder strategy '" + std::string(name) + "'");
}

std::vector<std::string> finder_names() {
  return {"blind", "greedy-dense", "ternary-zoom", "cut-probe", "two-probe"};
}

}  // namespace fairdiv
