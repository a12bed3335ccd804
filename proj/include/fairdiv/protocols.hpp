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
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fairdiv/geometry.hpp"
#include "fairdiv/referee.hpp"

namespace fairdiv {

/// Cake: players want at least 1/n. Chore: players want at most 1/n.
enum class Mode { Cake, Chore };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);

/// X_1..X_n, one piece per player, meant to partition [0,1].
struct Allocation {
  std::vector<Piece> pieces;
};

/// Player 0 halves the cake by its own measure; player 1 evaluates the left
/// half and keeps the side it weakly prefers (left on ties). Two queries.
Allocation cut_and_choose(ExactReferee& referee, Mode mode);

/// Recursive halving. Each active player marks the point splitting its
/// bound on the current block in proportion floor(n/2) : ceil(n/2); the
/// floor(n/2) players with the smallest marks (cake) or largest marks
/// (chore) recurse on the left part. Ties go by player index. The value
/// bound of every block is carried down from the parent's marks, so each
/// level costs exactly one cut per active player.
Allocation even_paz(ExactReferee& referee, Mode mode);

/// Cake-only baseline with Theta(n^2) queries: the last player to trim the
/// running piece down to value 1/n takes it.
Allocation last_diminisher(ExactReferee& referee);

using Protocol = std::function<Allocation(ExactReferee&, Mode)>;

/// "cut-and-choose", "even-paz" or "last-diminisher" (cake only).
Protocol protocol_by_name(std::string_view name);

/// Throws PartitionViolation when pieces overlap with positive width or
/// leave a gap in [0,1].
void check_partition(const Allocation& allocation);

struct ProportionalityReport {
  bool proportional = true;
  std::vector<Rational> values;
  std::vector<bool> satisfied;
};

/// Checks the partition, then compares each v_i(X_i) against 1/n exactly.
ProportionalityReport check_proportional(const Allocation& allocation,
                                         std::span<const ExactValuationPtr> valuations, Mode mode);

bool is_heavy(const Rational& width, const Rational& value, std::size_t n);
bool is_light(const Rational& width, const Rational& value, std::size_t n);

struct LightPieceCount {
  std::size_t light = 0;
  std::size_t narrow = 0;  // pieces with width < 1/(2n)
};

LightPieceCount count_light_pieces(const Allocation& allocation,
                                   std::span<const ExactValuationPtr> valuations);

}  // namespace fairdiv
