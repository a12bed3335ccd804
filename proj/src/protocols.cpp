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

#include "fairdiv/protocols.hpp"

#include <algorithm>
#include <sstream>

namespace fairdiv {

std::string_view to_string(Mode mode) { return mode == Mode::Cake ? "cake" : "chore"; }

Mode parse_mode(std::string_view text) {
  if (text == "cake") {
    return Mode::Cake;
  }
  if (text == "chore") {
    return Mode::Chore;
  }
  throw ArgumentError("unknown mode '" + std::string(text) + "' (expected cake or chore)");
}

Allocation cut_and_choose(ExactReferee& referee, Mode mode) {
  if (referee.players() != 2) {
    throw ArgumentError("cut-and-choose needs exactly 2 players");
  }
  std::optional<Rational> mark = referee.cut(0, 0, Rational(1, 2));
  if (!mark) {
    throw ProtocolViolation("cutter has no half-value point");
  }
  Rational left = referee.eval(1, 0, *mark);
  Rational right = 1 - left;
  bool chooser_left = mode == Mode::Cake ? left >= right : left <= right;

  Allocation out;
  out.pieces.resize(2);
  Piece left_piece = Piece::single(0, *mark);
  Piece right_piece = Piece::single(*mark, 1);
  out.pieces[1] = chooser_left ? left_piece : right_piece;
  out.pieces[0] = chooser_left ? right_piece : left_piece;
  return out;
}

namespace {

struct ActivePlayer {
  std::size_t player;
  Rational bound;  // lower bound (cake) or upper bound (chore) on v(block)
  Rational mark;
};

void even_paz_split(ExactReferee& referee, Mode mode, const Rational& a, const Rational& b,
                    std::vector<ActivePlayer> players, std::vector<Piece>& out) {
  const std::size_t n = players.size();
  if (n == 1) {
    out[players.front().player] = Piece::single(a, b);
    return;
  }
  const std::size_t k = n / 2;
  const Rational left_share = ratio(k, n);
  for (ActivePlayer& p : players) {
    Rational r = p.bound * left_share;
    std::optional<Rational> mark = referee.cut(p.player, a, r);
    // Only an over-estimated chore bound can push the mark past the block.
    p.mark = (!mark || *mark > b) ? b : *mark;
  }
  if (mode == Mode::Cake) {
    std::sort(players.begin(), players.end(), [](const ActivePlayer& l, const ActivePlayer& r) {
      return l.mark < r.mark || (l.mark == r.mark && l.player < r.player);
    });
  } else {
    std::sort(players.begin(), players.end(), [](const ActivePlayer& l, const ActivePlayer& r) {
      return l.mark > r.mark || (l.mark == r.mark && l.player < r.player);
    });
  }
  const Rational split = players[k - 1].mark;
  const Rational right_share = 1 - left_share;

  std::vector<ActivePlayer> left(players.begin(), players.begin() + static_cast<std::ptrdiff_t>(k));
  std::vector<ActivePlayer> right(players.begin() + static_cast<std::ptrdiff_t>(k), players.end());
  for (ActivePlayer& p : left) {
    p.bound *= left_share;
  }
  for (ActivePlayer& p : right) {
    p.bound *= right_share;
  }
  even_paz_split(referee, mode, a, split, std::move(left), out);
  even_paz_split(referee, mode, split, b, std::move(right), out);
}

}  // namespace

Allocation even_paz(ExactReferee& referee, Mode mode) {
  const std::size_t n = referee.players();
  if (n == 0) {
    throw ArgumentError("even-paz needs at least one player");
  }
  std::vector<ActivePlayer> players;
  players.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    players.push_back(ActivePlayer{i, Rational(1), Rational(0)});
  }
  Allocation out;
  out.pieces.resize(n);
  even_paz_split(referee, mode, 0, 1, std::move(players), out.pieces);
  return out;
}

Allocation last_diminisher(ExactReferee& referee) {
  const std::size_t n = referee.players();
  if (n == 0) {
    throw ArgumentError("last-diminisher needs at least one player");
  }
  const Rational share = ratio(1, n);
  std::vector<std::size_t> remaining(n);
  for (std::size_t i = 0; i < n; ++i) {
    remaining[i] = i;
  }

  Allocation out;
  out.pieces.resize(n);
  Rational start = 0;
  while (remaining.size() > 1) {
    std::size_t holder_pos = 0;
    std::optional<Rational> mark = referee.cut(remaining[0], start, share);
    if (!mark) {
      throw ProtocolViolation("player " + std::to_string(remaining[0]) + " cannot cut a 1/n share");
    }
    for (std::size_t pos = 1; pos < remaining.size(); ++pos) {
      if (referee.eval(remaining[pos], start, *mark) > share) {
        std::optional<Rational> trimmed = referee.cut(remaining[pos], start, share);
        if (trimmed) {
          mark = trimmed;
          holder_pos = pos;
        }
      }
    }
    out.pieces[remaining[holder_pos]] = Piece::single(start, *mark);
    start = *mark;
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(holder_pos));
  }
  out.pieces[remaining.front()] = Piece::single(start, 1);
  return out;
}

Protocol protocol_by_name(std::string_view name) {
  if (name == "cut-and-choose") {
    return cut_and_choose;
  }
  if (name == "even-paz") {
    return even_paz;
  }
  if (name == "last-diminisher") {
    return [](ExactReferee& referee, Mode mode) {
      if (mode != Mode::Cake) {
        throw ArgumentError("last-diminisher only supports cake mode");
      }
      return last_diminisher(referee);
    };
  }
  throw ArgumentError("unknown protocol '" + std::string(name) + "'");
}

void check_partition(const Allocation& allocation) {
  struct Owned {
    const Interval* interval;
    std::size_t owner;
  };
  std::vector<Owned> all;
  for (std::size_t i = 0; i < allocation.pieces.size(); ++i) {
    for (const Interval& interval : allocation.pieces[i].intervals()) {
      all.push_back(Owned{&interval, i});
    }
  }
  std::sort(all.begin(), all.end(), [](const Owned& l, const Owned& r) {
    return l.interval->left() < r.interval->left();
  });

  std::ostringstream problems;
  Rational cursor = 0;
  std::size_t cursor_owner = 0;
  for (const Owned& item : all) {
    const Interval& interval = *item.interval;
    if (interval.left() > cursor) {
      problems << "gap [" << to_string(cursor) << ", " << to_string(interval.left()) << "]; ";
    } else if (interval.left() < cursor) {
      problems << "overlap [" << to_string(interval.left()) << ", "
               << to_string(std::min(cursor, interval.right())) << "] between players " << cursor_owner
               << " and " << item.owner << "; ";
    }
    if (interval.right() > cursor) {
      cursor = interval.right();
      cursor_owner = item.owner;
    }
  }
  if (cursor < 1) {
    problems << "gap [" << to_string(cursor) << ", 1]; ";
  }
  std::string message = problems.str();
  if (!message.empty()) {
    throw PartitionViolation("allocation is not a partition of [0,1]: " + message);
  }
}

ProportionalityReport check_proportional(const Allocation& allocation,
                                         std::span<const ExactValuationPtr> valuations, Mode mode) {
  if (allocation.pieces.size() != valuations.size()) {
    throw ArgumentError("allocation has " + std::to_string(allocation.pieces.size()) + " pieces for " +
                        std::to_string(valuations.size()) + " players");
  }
  check_partition(allocation);
  const Rational share = ratio(1, valuations.size());
  ProportionalityReport report;
  for (std::size_t i = 0; i < valuations.size(); ++i) {
    Rational value = value_of_piece(*valuations[i], allocation.pieces[i]);
    bool ok = mode == Mode::Cake ? value >= share : value <= share;
    report.proportional = report.proportional && ok;
    report.values.push_back(std::move(value));
    report.satisfied.push_back(ok);
  }
  return report;
}

bool is_heavy(const Rational& width, const Rational& value, std::size_t n) {
  const Rational n_q(static_cast<unsigned long>(n));
  return width * n_q <= 1 && value * 2 * n_q >= 1;
}

bool is_light(const Rational& width, const Rational& value, std::size_t n) {
  const Rational n_q(static_cast<unsigned long>(n));
  return width * 2 * n_q >= 1 && value * n_q <= 1;
}

LightPieceCount count_light_pieces(const Allocation& allocation,
                                   std::span<const ExactValuationPtr> valuations) {
  const std::size_t n = allocation.pieces.size();
  LightPieceCount count;
  for (std::size_t i = 0; i < n; ++i) {
    Rational width = allocation.pieces[i].width();
    Rational value = value_of_piece(*valuations[i], allocation.pieces[i]);
    if (width * 2 * static_cast<unsigned long>(n) < 1) {
      ++count.narrow;
    }
    if (is_light(width, value, n)) {
      ++count.light;
    }
  }
  return count;
}

}  // namespace fairdiv
