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
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "fairdiv/adversary.hpp"

namespace fairdiv {

/// A protocol that looks for a heavy piece by querying an adversary session.
class HeavyPieceFinder {
 public:
  virtual ~HeavyPieceFinder() = default;
  virtual std::string_view name() const = 0;
  /// Makes at most `budget` queries, then returns the claimed heavy piece.
  virtual Piece find(AdversarySession& session, std::uint64_t budget, std::uint64_t seed) const = 0;
};

/// Built-in finders:
///   blind          no queries, claims a seeded leaf-width interval
///   greedy-dense   halves the current region by eval, keeps the richer half
///   ternary-zoom   keeps the first third if it is at least average density
///   cut-probe      cut(x, 1/2n) from seeded points, claims the tightest start
///   two-probe      cut probes, claims two half-width intervals at the best starts
std::unique_ptr<HeavyPieceFinder> make_finder(std::string_view name);
std::vector<std::string> finder_names();

}  // namespace fairdiv
