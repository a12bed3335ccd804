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
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "fairdiv/valuation.hpp"

namespace fairdiv {

enum class QueryKind { Eval, Cut };

/// One billed query. Eval fills `y` and `value`; cut fills `mass` and `point`
/// (an empty `point` on a cut record is a NoAnswer).
template <typename Value>
struct QueryRecord {
  QueryKind kind = QueryKind::Eval;
  std::size_t player = 0;
  Rational x;
  Rational y;
  Value mass = 0;
  Value value = 0;
  std::optional<Rational> point;
};

/// Counts, logs and budgets every query made against a set of valuations.
///
/// All protocol/valuation interaction goes through eval() and cut(); repeated
/// queries are billed again and NoAnswer cuts are billed too. A query that
/// would exceed the budget is rejected before it reaches the valuation.
template <typename Value>
class QueryReferee {
 public:
  using ValuationPtr = std::shared_ptr<const BasicValuation<Value>>;

  explicit QueryReferee(std::vector<ValuationPtr> valuations,
                        std::optional<std::uint64_t> budget = std::nullopt)
      : valuations_(std::move(valuations)), per_player_(valuations_.size(), 0), budget_(budget) {}

  std::size_t players() const { return valuations_.size(); }

  Value eval(std::size_t player, const Rational& x, const Rational& y) {
    admit(player);
    QueryRecord<Value> record;
    record.kind = QueryKind::Eval;
    record.player = player;
    record.x = x;
    record.y = y;
    record.value = valuations_[player]->eval(x, y);
    commit(std::move(record));
    return log_.back().value;
  }

  std::optional<Rational> cut(std::size_t player, const Rational& x, const Value& r) {
    admit(player);
    QueryRecord<Value> record;
    record.kind = QueryKind::Cut;
    record.player = player;
    record.x = x;
    record.mass = r;
    record.point = valuations_[player]->cut(x, r);
    commit(std::move(record));
    return log_.back().point;
  }

  std::uint64_t total() const { return log_.size(); }
  std::uint64_t count(std::size_t player) const { return per_player_.at(player); }
  const std::vector<std::uint64_t>& per_player() const { return per_player_; }
  const std::optional<std::uint64_t>& budget() const { return budget_; }
  const std::vector<QueryRecord<Value>>& log() const { return log_; }
  const std::vector<ValuationPtr>& valuations() const { return valuations_; }

 private:
  void admit(std::size_t player) const {
    if (player >= valuations_.size()) {
      throw ArgumentError("player " + std::to_string(player) + " out of range");
    }
    if (budget_ && log_.size() + 1 > *budget_) {
      throw BudgetExhausted("query budget of " + std::to_string(*budget_) + " exhausted");
    }
  }

  // Malformed queries throw inside the valuation and are never billed.
  void commit(QueryRecord<Value> record) {
    ++per_player_[record.player];
    log_.push_back(std::move(record));
  }

  std::vector<ValuationPtr> valuations_;
  std::vector<std::uint64_t> per_player_;
  std::optional<std::uint64_t> budget_;
  std::vector<QueryRecord<Value>> log_;
};

using ExactReferee = QueryReferee<Rational>;

/// Re-issues every logged query against `valuations` (unbilled) and reports
/// whether each answer matches exactly.
template <typename Value>
bool replay_matches(std::span<const QueryRecord<Value>> log,
                    std::span<const std::shared_ptr<const BasicValuation<Value>>> valuations) {
  for (const QueryRecord<Value>& record : log) {
    const auto& v = *valuations[record.player];
    if (record.kind == QueryKind::Eval) {
      if (!(v.eval(record.x, record.y) == record.value)) {
        return false;
      }
    } else if (v.cut(record.x, record.mass) != record.point) {
      return false;
    }
  }
  return true;
}

/// JSON-lines export: one object per record, rationals as "p/q" strings.
void write_query_log(std::ostream& out, std::span<const QueryRecord<Rational>> log);

}  // namespace fairdiv
