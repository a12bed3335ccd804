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

#include "fairdiv/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace fairdiv {

namespace {

const Real& mass_slack() {
  static const Real slack("1e-40");
  return slack;
}

unsigned heavy_index(const std::array<EdgeKind, 3>& kinds) {
  for (unsigned c = 0; c < 3; ++c) {
    if (kinds[c] == EdgeKind::Heavy) {
      return c;
    }
  }
  throw std::logic_error("critical node has no heavy edge");
}

std::array<EdgeKind, 3> with_heavy(unsigned slot) {
  std::array<EdgeKind, 3> kinds{EdgeKind::Light, EdgeKind::Light, EdgeKind::Light};
  kinds[slot] = EdgeKind::Heavy;
  return kinds;
}

constexpr std::array<EdgeKind, 3> kAllCritical{EdgeKind::Critical, EdgeKind::Critical, EdgeKind::Critical};

NodeKey parent_of(const NodeKey& node) {
  mpz_class index;
  mpz_fdiv_q_ui(index.get_mpz_t(), node.index.get_mpz_t(), 3);
  return NodeKey{node.depth - 1, index};
}

unsigned slot_of(const NodeKey& node) {
  return static_cast<unsigned>(mpz_fdiv_ui(node.index.get_mpz_t(), 3));
}

std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Real abs_diff(const Rational& a, const Rational& b) {
  Rational d = a - b;
  return to_real(d >= 0 ? d : Rational(-d));
}

}  // namespace

// Read-only labeling over the revealed region; querying an unrevealed node
// is a logic error.
class AdversarySession::RevealedView final : public TreeLabeling {
 public:
  explicit RevealedView(const AdversarySession& session) : session_(session) {}
  const TreeParams& params() const override { return session_.params_; }
  unsigned heavy_slot(const NodeKey& node, const PathStats&) const override {
    auto it = session_.revealed_.find(node);
    if (it == session_.revealed_.end()) {
      throw std::logic_error("answer depends on an unrevealed node");
    }
    return heavy_index(it->second.kinds);
  }

 private:
  const AdversarySession& session_;
};

AdversarySession::AdversarySession(TreeParams params)
    : params_(std::move(params)), threshold_(threshold_for(params_)) {}

std::uint64_t AdversarySession::threshold_for(const TreeParams& params) {
  double raw = (params.ln_n() / 6.0 - 1.0) / 2.0;
  return raw <= 0 ? 0 : static_cast<std::uint64_t>(std::floor(raw));
}

std::optional<std::array<EdgeKind, 3>> AdversarySession::revealed_kinds(const NodeKey& node) const {
  auto it = revealed_.find(node);
  if (it == revealed_.end()) {
    return std::nullopt;
  }
  return it->second.kinds;
}

void AdversarySession::reveal(const NodeKey& node, const PathStats& stats,
                              const std::array<EdgeKind, 3>& kinds, std::vector<RevealEvent>& events) {
  unsigned below = std::count(kinds.begin(), kinds.end(), EdgeKind::Heavy) > 0 ? 1 : 0;
  revealed_.emplace(node, RevealedNode{kinds, stats, below});
  events.push_back(RevealEvent{node, kinds});

  // Propagate the heavy-edge maximum toward the root.
  NodeKey child = node;
  while (child.depth > 0) {
    NodeKey parent = parent_of(child);
    auto it = revealed_.find(parent);
    if (it == revealed_.end()) {
      break;
    }
    unsigned best = 0;
    for (unsigned c = 0; c < 3; ++c) {
      unsigned through = it->second.kinds[c] == EdgeKind::Heavy ? 1 : 0;
      auto below_it = revealed_.find(parent.child(c));
      if (below_it != revealed_.end()) {
        through += below_it->second.heavy_below;
      }
      best = std::max(best, through);
    }
    if (best == it->second.heavy_below) {
      break;
    }
    it->second.heavy_below = best;
    child = parent;
  }
}

void AdversarySession::reveal_point_path(const Rational& x, std::vector<RevealEvent>& events) {
  NodePath path = NodePath::leaf_containing(x, params_.depth());
  NodeKey node;
  PathStats stats;
  for (std::uint8_t digit : path.digits) {
    auto it = revealed_.find(node);
    if (it == revealed_.end()) {
      auto kinds = is_critical(params_, stats) ? kAllCritical : with_heavy(digit == 0 ? 1 : 0);
      reveal(node, stats, kinds, events);
      it = revealed_.find(node);
    }
    stats = extend(stats, it->second.kinds[digit]);
    node = node.child(digit);
  }
}

Real AdversarySession::prefix_mass(const Rational& x) const {
  return tree_prefix_mass(RevealedView(*this), x);
}

void AdversarySession::record(TranscriptEntry entry) {
  auto root = revealed_.find(NodeKey{});
  entry.max_heavy_after = root == revealed_.end() ? 0 : root->second.heavy_below;
  transcript_.push_back(std::move(entry));
}

Real AdversarySession::answer_eval(const Rational& x, const Rational& y) {
  check_query_range(x, y);
  TranscriptEntry entry;
  entry.kind = QueryKind::Eval;
  entry.x = x;
  entry.y = y;
  reveal_point_path(x, entry.reveals);
  reveal_point_path(y, entry.reveals);
  entry.value = tree_eval(RevealedView(*this), x, y);
  Real value = entry.value;
  record(std::move(entry));
  return value;
}

std::optional<Rational> AdversarySession::answer_cut(const Rational& x, const Real& r) {
  check_query_range(x, x);
  if (r < 0) {
    throw ArgumentError("cut mass must be non-negative");
  }
  TranscriptEntry entry;
  entry.kind = QueryKind::Cut;
  entry.x = x;
  entry.mass = r;
  reveal_point_path(x, entry.reveals);

  Real target = r == 0 ? Real(0) : prefix_mass(x) + r;
  if (r == 0) {
    entry.point = x;
  } else if (target > 1 + mass_slack()) {
    entry.point = std::nullopt;
  } else {
    // Descend toward the answer, revealing unrevealed nodes by the gamma rule.
    NodeKey node;
    PathStats stats;
    Real value = 1;
    Real remaining = target >= 1 ? Real(1) : target;
    for (unsigned level = 0; level < params_.depth(); ++level) {
      auto it = revealed_.find(node);
      if (it == revealed_.end()) {
        std::array<EdgeKind, 3> kinds = kAllCritical;
        if (!is_critical(params_, stats)) {
          Real gamma = remaining / value;
          kinds = gamma > params_.heavy_label() ? with_heavy(0) : with_heavy(2);
        }
        reveal(node, stats, kinds, entry.reveals);
        it = revealed_.find(node);
      }
      const auto kinds = it->second.kinds;
      unsigned chosen = 2;
      for (unsigned c = 0; c < 2; ++c) {
        Real mass = value * label_value(params_, kinds[c]);
        if (remaining <= mass) {
          chosen = c;
          break;
        }
        remaining -= mass;
      }
      value *= label_value(params_, kinds[chosen]);
      stats = extend(stats, kinds[chosen]);
      node = node.child(chosen);
    }
    if (target >= 1) {
      entry.point = Rational(1);
    } else {
      Real fraction = std::clamp(Real(remaining / value), Real(0), Real(1));
      Rational y = (Rational(node.index) + to_rational(fraction)) / Rational(params_.leaves());
      y.canonicalize();
      entry.point = std::max(y, x);
    }
  }
  std::optional<Rational> point = entry.point;
  record(std::move(entry));
  return point;
}

unsigned AdversarySession::max_revealed_heavy() const {
  auto root = revealed_.find(NodeKey{});
  return root == revealed_.end() ? 0 : root->second.heavy_below;
}

SessionInvariants AdversarySession::check_invariants() const {
  SessionInvariants out;
  for (const auto& [node, info] : revealed_) {
    if (node.depth > 0 && revealed_.find(parent_of(node)) == revealed_.end()) {
      out.connected = false;
    }
    auto heavy = std::count(info.kinds.begin(), info.kinds.end(), EdgeKind::Heavy);
    auto light = std::count(info.kinds.begin(), info.kinds.end(), EdgeKind::Light);
    auto critical = std::count(info.kinds.begin(), info.kinds.end(), EdgeKind::Critical);
    if (!((heavy == 1 && light == 2) || critical == 3)) {
      out.all_or_none = false;
    }
    if (critical > 0) {
      out.no_critical_revealed = false;
    }
    if ((critical == 3) != is_critical(params_, info.stats)) {
      out.criticality_consistent = false;
    }
    if (node.depth > 0) {
      auto parent = revealed_.find(parent_of(node));
      if (parent != revealed_.end() &&
          extend(parent->second.stats, parent->second.kinds[slot_of(node)]) != info.stats) {
        out.criticality_consistent = false;
      }
    }
  }
  return out;
}

Completion::Completion(const AdversarySession& session, std::uint64_t seed,
                       std::map<OverrideKey, unsigned> overrides)
    : params_(session.params()),
      revealed_(std::make_shared<const RevealedMap>(session.revealed())),
      seed_(seed),
      overrides_(std::move(overrides)) {}

unsigned Completion::heavy_slot(const NodeKey& node, const PathStats& stats) const {
  if (auto it = revealed_->find(node); it != revealed_->end()) {
    return heavy_index(it->second.kinds);
  }
  if (auto it = overrides_.find(OverrideKey{node.depth, node.index, stats.h, stats.q, stats.z});
      it != overrides_.end()) {
    return it->second;
  }
  std::uint64_t h = mix(seed_ ^ mix(node.depth));
  const std::size_t limbs = mpz_size(node.index.get_mpz_t());
  for (std::size_t i = 0; i < limbs; ++i) {
    h = mix(h ^ static_cast<std::uint64_t>(mpz_getlimbn(node.index.get_mpz_t(), i)));
  }
  return static_cast<unsigned>(h % 3);
}

Completion complete_labeling(const AdversarySession& session, std::uint64_t seed) {
  return Completion(session, seed);
}

namespace {

// Minimizes the share of V(u) that lies inside the piece, over the heavy
// placements of unrevealed nodes.
class PieceValueMinimizer {
 public:
  PieceValueMinimizer(const AdversarySession& session, const Piece& piece)
      : session_(session), params_(session.params()), piece_(piece) {}

  Real share(const NodeKey& node, const PathStats& stats) {
    mpz_class scale = pow3(node.depth);
    Rational left(node.index, scale);
    left.canonicalize();
    Rational width(1, scale);
    width.canonicalize();
    Rational overlap = piece_.overlap(left, left + width);
    if (overlap == 0) {
      return Real(0);
    }
    if (overlap == width) {
      return Real(1);
    }
    if (node.depth == params_.depth()) {
      return to_real(overlap / width);
    }
    Completion::OverrideKey key{node.depth, node.index, stats.h, stats.q, stats.z};
    if (auto it = memo_.find(key); it != memo_.end()) {
      return it->second;
    }

    Real best;
    if (auto kinds = session_.revealed_kinds(node)) {
      best = combine(node, stats, *kinds);
    } else if (is_critical(params_, stats)) {
      best = combine(node, stats, kAllCritical);
    } else {
      unsigned best_slot = 0;
      for (unsigned slot = 0; slot < 3; ++slot) {
        Real candidate = combine(node, stats, with_heavy(slot));
        if (slot == 0 || candidate < best) {
          best = candidate;
          best_slot = slot;
        }
      }
      slots_[key] = best_slot;
    }
    memo_.emplace(key, best);
    return best;
  }

  std::map<Completion::OverrideKey, unsigned> take_slots() { return std::move(slots_); }

 private:
  Real combine(const NodeKey& node, const PathStats& stats, const std::array<EdgeKind, 3>& kinds) {
    Real total = 0;
    for (unsigned c = 0; c < 3; ++c) {
      total += label_value(params_, kinds[c]) * share(node.child(c), extend(stats, kinds[c]));
    }
    return total;
  }

  const AdversarySession& session_;
  const TreeParams& params_;
  const Piece& piece_;
  std::map<Completion::OverrideKey, Real> memo_;
  std::map<Completion::OverrideKey, unsigned> slots_;
};

}  // namespace

Completion targeted_completion(const AdversarySession& session, const Piece& piece, std::uint64_t seed) {
  PieceValueMinimizer minimizer(session, piece);
  minimizer.share(NodeKey{}, PathStats{});
  return Completion(session, seed, minimizer.take_slots());
}

bool replays_transcript(const AdversarySession& session, const RealValuation& completion, double tolerance) {
  const Real tol(tolerance);
  for (const TranscriptEntry& entry : session.transcript()) {
    if (entry.kind == QueryKind::Eval) {
      Real diff = completion.eval(entry.x, entry.y) - entry.value;
      if (boost::multiprecision::abs(diff) > tol) {
        return false;
      }
    } else {
      std::optional<Rational> point = completion.cut(entry.x, entry.mass);
      if (point.has_value() != entry.point.has_value()) {
        return false;
      }
      if (point && abs_diff(*point, *entry.point) > tol) {
        return false;
      }
    }
  }
  return true;
}

CompletionAudit audit_completion(const AdversarySession& session, const Completion& completion,
                                 const Piece& piece) {
  const TreeParams& params = session.params();
  std::set<NodeKey> targets;
  for (const auto& [node, info] : session.revealed()) {
    targets.insert(node);
  }
  for (const Interval& interval : piece.intervals()) {
    targets.insert(NodePath::leaf_containing(interval.left(), params.depth()).key());
    targets.insert(NodePath::leaf_containing(interval.right(), params.depth()).key());
  }

  CompletionAudit audit;
  std::set<NodeKey> seen;
  static const Real kSumSlack("1e-40");
  for (const NodeKey& target : targets) {
    NodePath path = NodePath::from_key(target);
    NodeKey node;
    PathStats stats;
    for (unsigned level = 0; level <= path.depth(); ++level) {
      if (seen.insert(node).second) {
        ++audit.audited_nodes;
        Real density = density_closed_form(params, stats);
        if (!(density > 0) || density > 2) {
          audit.densities_bounded = false;
        }
        if (level < params.depth()) {
          auto kinds = child_kinds(completion, node, stats);
          Real sum = 0;
          for (EdgeKind kind : kinds) {
            sum += label_value(params, kind);
          }
          if (boost::multiprecision::abs(sum - 1) > kSumSlack) {
            audit.labels_sum_to_one = false;
          }
          bool all_critical = kinds == kAllCritical;
          if (all_critical != is_critical(params, stats)) {
            audit.criticality_respected = false;
          }
          if (auto revealed = session.revealed_kinds(node); revealed && *revealed != kinds) {
            audit.agrees_with_reveals = false;
          }
        }
      }
      if (level == path.depth()) {
        break;
      }
      auto kinds = child_kinds(completion, node, stats);
      stats = extend(stats, kinds[path.digits[level]]);
      node = node.child(path.digits[level]);
    }
  }
  return audit;
}

RefutationOutcome refute_claim(const AdversarySession& session, const Piece& claim, std::uint64_t seed,
                               unsigned extra_attempts) {
  if (claim.empty()) {
    throw ArgumentError("claimed piece is empty");
  }
  const TreeParams& params = session.params();
  const Rational n(params.leaves());
  const Real half_share = Real(1) / (2 * to_real(n));

  Refutation refutation;
  refutation.claim = claim;
  refutation.width = claim.width();
  if (refutation.width * n > 1) {
    Completion completion = complete_labeling(session, seed);
    refutation.by_width = true;
    refutation.completion_seed = seed;
    refutation.value = value_of_piece(completion, claim);
    refutation.violated = "width > 1/n";
    return refutation;
  }
  if (session.queries() > session.threshold()) {
    return CannotRefute{"query count " + std::to_string(session.queries()) + " exceeds threshold " +
                        std::to_string(session.threshold())};
  }

  Completion targeted = targeted_completion(session, claim, seed);
  Real value = value_of_piece(targeted, claim);
  if (value < half_share) {
    refutation.targeted = true;
    refutation.completion_seed = seed;
    refutation.value = value;
    refutation.violated = "value < 1/(2n)";
    return refutation;
  }
  for (unsigned attempt = 1; attempt <= extra_attempts; ++attempt) {
    Completion completion = complete_labeling(session, seed + attempt);
    value = value_of_piece(completion, claim);
    if (value < half_share) {
      refutation.completion_seed = seed + attempt;
      refutation.value = value;
      refutation.violated = "value < 1/(2n)";
      return refutation;
    }
  }
  return CannotRefute{"claimed piece is heavy under every completion tried"};
}

Completion refutation_completion(const AdversarySession& session, const Refutation& refutation) {
  if (refutation.targeted) {
    return targeted_completion(session, refutation.claim, refutation.completion_seed);
  }
  return complete_labeling(session, refutation.completion_seed);
}

}  // namespace fairdiv
