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
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "fairdiv/referee.hpp"
#include "fairdiv/value_tree.hpp"

namespace fairdiv {

/// Labels of one internal node made visible to the protocol.
struct RevealEvent {
  NodeKey node;
  std::array<EdgeKind, 3> kinds;
};

struct RevealedNode {
  std::array<EdgeKind, 3> kinds;
  PathStats stats;             // path statistics of the node itself
  unsigned heavy_below = 0;    // most revealed heavy edges on a path down from here
};

using RevealedMap = std::map<NodeKey, RevealedNode>;

struct TranscriptEntry {
  QueryKind kind = QueryKind::Eval;
  Rational x;
  Rational y;                    // eval only
  Real mass = 0;                 // cut only
  Real value = 0;                // eval answer
  std::optional<Rational> point; // cut answer; empty = NoAnswer
  std::vector<RevealEvent> reveals;
  unsigned max_heavy_after = 0;
};

struct SessionInvariants {
  bool connected = true;          // every revealed node's parent is revealed
  bool all_or_none = true;        // each revealed node exposes exactly one full triple
  bool no_critical_revealed = true;
  bool criticality_consistent = true;  // revealed triples agree with the criticality rule
  bool ok() const { return connected && all_or_none && no_critical_revealed && criticality_consistent; }
};

/// Interactive adversary against heavy-piece finders on a balanced value
/// tree that is never materialized.
///
/// Every query reveals the full child-label triple of each unrevealed node
/// on the root path of each point it touches:
///  - eval endpoints, and the cut start: the on-path edge is light and the
///    heavy edge goes to the leftmost off-path child;
///  - the cut answer: descending toward the point, with gamma the mass still
///    to place as a fraction of the node's value, the triple is
///    (heavy, light, light) if gamma > beta/3, else (light, light, heavy).
/// Nodes that the criticality rule forces to be critical are revealed with
/// three 1/3 labels; that never happens within the threshold.
class AdversarySession {
 public:
  explicit AdversarySession(TreeParams params);

  Real answer_eval(const Rational& x, const Rational& y);
  std::optional<Rational> answer_cut(const Rational& x, const Real& r);

  const TreeParams& params() const { return params_; }
  std::uint64_t queries() const { return transcript_.size(); }
  /// floor(((ln n)/6 - 1)/2), clamped at zero.
  std::uint64_t threshold() const { return threshold_; }
  static std::uint64_t threshold_for(const TreeParams& params);

  std::optional<std::array<EdgeKind, 3>> revealed_kinds(const NodeKey& node) const;
  std::size_t revealed_count() const { return revealed_.size(); }
  const RevealedMap& revealed() const { return revealed_; }
  const std::vector<TranscriptEntry>& transcript() const { return transcript_; }

  /// Largest number of revealed heavy edges on any root-to-leaf path.
  unsigned max_revealed_heavy() const;
  SessionInvariants check_invariants() const;

 private:
  class RevealedView;

  void reveal(const NodeKey& node, const PathStats& stats, const std::array<EdgeKind, 3>& kinds,
              std::vector<RevealEvent>& events);
  void reveal_point_path(const Rational& x, std::vector<RevealEvent>& events);
  Real prefix_mass(const Rational& x) const;
  void record(TranscriptEntry entry);

  TreeParams params_;
  std::uint64_t threshold_;
  RevealedMap revealed_;
  std::vector<TranscriptEntry> transcript_;
};

/// Full labeling that agrees with every revealed triple. Unrevealed
/// non-critical nodes take the heavy slot from `overrides` (keyed by node
/// and path stats) when present, else from a hash of (seed, node).
class Completion final : public LabeledTree {
 public:
  using OverrideKey = std::tuple<unsigned, mpz_class, unsigned, unsigned, unsigned>;

  Completion(const AdversarySession& session, std::uint64_t seed,
             std::map<OverrideKey, unsigned> overrides = {});

  const TreeParams& params() const override { return params_; }
  unsigned heavy_slot(const NodeKey& node, const PathStats& stats) const override;
  std::uint64_t seed() const { return seed_; }

 private:
  TreeParams params_;
  std::shared_ptr<const RevealedMap> revealed_;
  std::uint64_t seed_;
  std::map<OverrideKey, unsigned> overrides_;
};

Completion complete_labeling(const AdversarySession& session, std::uint64_t seed);

/// Completion that places every unrevealed heavy edge so as to minimize the
/// value of `piece`; other nodes fall back to the seeded rule.
Completion targeted_completion(const AdversarySession& session, const Piece& piece, std::uint64_t seed);

/// Replays every transcript answer against the completion; true when each
/// eval value and cut point agrees within `tolerance` (absolute).
bool replays_transcript(const AdversarySession& session, const RealValuation& completion,
                        double tolerance = 1e-9);

struct CompletionAudit {
  bool agrees_with_reveals = true;   // revealed triples reproduced
  bool labels_sum_to_one = true;     // within 1e-40 at every audited node
  bool criticality_respected = true; // critical iff D * beta > 2 on audited nodes
  bool densities_bounded = true;     // 0 < D <= 2 on audited nodes
  std::size_t audited_nodes = 0;
  bool ok() const {
    return agrees_with_reveals && labels_sum_to_one && criticality_respected && densities_bounded;
  }
};

/// Checks the completion on the revealed region and on the root paths of
/// the piece's endpoints.
CompletionAudit audit_completion(const AdversarySession& session, const Completion& completion,
                                 const Piece& piece);

struct Refutation {
  bool by_width = false;       // |P| > 1/n, no completion needed
  bool targeted = false;       // completion from targeted_completion
  std::uint64_t completion_seed = 0;
  Piece claim;
  Rational width;
  Real value = 0;
  std::string violated;        // "width > 1/n" or "value < 1/(2n)"
};

struct CannotRefute {
  std::string reason;
};

using RefutationOutcome = std::variant<Refutation, CannotRefute>;

/// Tries to exhibit a completion consistent with the session under which
/// the claimed piece is not heavy. Beyond the threshold no guarantee holds
/// and the outcome is CannotRefute. Otherwise the targeted completion is
/// tried first, then `extra_attempts` seeded ones. Throws ArgumentError for
/// an empty claim.
RefutationOutcome refute_claim(const AdversarySession& session, const Piece& claim,
                               std::uint64_t seed = 0, unsigned extra_attempts = 8);

/// Rebuilds the completion a refutation refers to.
Completion refutation_completion(const AdversarySession& session, const Refutation& refutation);

}  // namespace fairdiv
