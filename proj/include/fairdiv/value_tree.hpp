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

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "fairdiv/geometry.hpp"
#include "fairdiv/valuation.hpp"

namespace fairdiv {

/// Shape of a balanced ternary value tree with n = 3^depth leaves and
/// beta = 2^(6 / ln n).
class TreeParams {
 public:
  /// Throws ArgumentError unless depth >= 11, which is where
  /// 1/3 <= beta/3 < 1/2 holds. `permissive` admits any depth >= 1 for
  /// small experiments; those trees are valid valuations but sit outside
  /// the regime where the lower-bound argument applies.
  explicit TreeParams(unsigned depth, bool permissive = false);

  unsigned depth() const { return depth_; }
  bool permissive() const { return permissive_; }
  const mpz_class& leaves() const { return leaves_; }
  double ln_n() const;

  const Real& beta() const { return beta_; }
  const Real& heavy_label() const { return heavy_label_; }   // beta/3
  const Real& light_label() const { return light_label_; }   // 1/2 - beta/6
  const Real& critical_label() const { return critical_label_; }  // 1/3
  /// 3/2 - beta/2: density factor of a light edge.
  const Real& light_factor() const { return light_factor_; }

  long double ln_beta() const { return ln_beta_; }
  long double ln_light_factor() const { return ln_light_factor_; }

  /// beta^h and (3/2 - beta/2)^q from tables; h, q <= depth.
  const Real& beta_pow(unsigned h) const { return beta_pow_.at(h); }
  const Real& light_factor_pow(unsigned q) const { return light_factor_pow_.at(q); }

 private:
  unsigned depth_;
  bool permissive_;
  mpz_class leaves_;
  Real beta_;
  Real heavy_label_;
  Real light_label_;
  Real critical_label_;
  Real light_factor_;
  long double ln_beta_;
  long double ln_light_factor_;
  std::vector<Real> beta_pow_;
  std::vector<Real> light_factor_pow_;
};

/// Heavy, light and critical-child edge counts on a root path.
struct PathStats {
  unsigned h = 0;
  unsigned q = 0;
  unsigned z = 0;

  unsigned length() const { return h + q + z; }
  friend bool operator==(const PathStats&, const PathStats&) = default;
};

/// Node identified by depth and left-to-right index within its level.
struct NodeKey {
  unsigned depth = 0;
  mpz_class index = 0;

  NodeKey child(unsigned slot) const { return NodeKey{depth + 1, index * 3 + slot}; }
  friend bool operator==(const NodeKey& a, const NodeKey& b) {
    return a.depth == b.depth && a.index == b.index;
  }
  friend bool operator<(const NodeKey& a, const NodeKey& b) {
    return a.depth < b.depth || (a.depth == b.depth && a.index < b.index);
  }
};

/// Base-3 digit string from the root.
struct NodePath {
  std::vector<std::uint8_t> digits;

  static NodePath from_key(const NodeKey& key);
  static NodePath leaf_containing(const Rational& x, unsigned depth);
  NodeKey key() const;
  unsigned depth() const { return static_cast<unsigned>(digits.size()); }
  Rational left() const;
  Rational width() const;
};

enum class EdgeKind : std::uint8_t { Heavy, Light, Critical };
enum class LeafClass { Rich, Critical, Neither };

/// Guard below which density comparisons are reported as ambiguous.
inline constexpr long double kAmbiguityGuard = 1e-9L;

/// D(u) * beta > 2, decided in log space. Throws NumericalAmbiguity when the
/// log margin is within kAmbiguityGuard of zero.
bool is_critical(const TreeParams& params, const PathStats& stats);

/// D(u) = beta^h (3/2 - beta/2)^q.
Real density_closed_form(const TreeParams& params, const PathStats& stats);

/// Critical dominates; otherwise rich iff D >= 1/2 (same guard).
LeafClass classify(const TreeParams& params, const PathStats& stats);

Real label_value(const TreeParams& params, EdgeKind kind);
PathStats extend(PathStats stats, EdgeKind kind);

/// A complete edge labeling. Critical nodes are fixed by the rule; the
/// labeling only chooses where the heavy edge of a non-critical node goes.
class TreeLabeling {
 public:
  virtual ~TreeLabeling() = default;
  virtual const TreeParams& params() const = 0;
  /// Heavy child slot (0, 1 or 2) of the non-critical internal node.
  virtual unsigned heavy_slot(const NodeKey& node, const PathStats& stats) const = 0;
};

std::array<EdgeKind, 3> child_kinds(const TreeLabeling& labeling, const NodeKey& node,
                                     const PathStats& stats);

/// Leaf reached from the root, with its path statistics and value V(u).
struct LeafVisit {
  NodeKey key;
  PathStats stats;
  Real value;
};

LeafVisit visit_leaf(const TreeLabeling& labeling, const mpz_class& leaf_index);

/// V(0, x): fully-contained left siblings along x's path plus the uniform
/// fraction of x's leaf. O(depth).
Real tree_prefix_mass(const TreeLabeling& labeling, const Rational& x);
Real tree_eval(const TreeLabeling& labeling, const Rational& x, const Rational& y);
std::optional<Rational> tree_cut(const TreeLabeling& labeling, const Rational& x, const Real& r);

/// Labeling plus the valuation view over it.
class LabeledTree : public TreeLabeling, public RealValuation {
 public:
  Real eval(const Rational& x, const Rational& y) const override { return tree_eval(*this, x, y); }
  std::optional<Rational> cut(const Rational& x, const Real& r) const override {
    return tree_cut(*this, x, r);
  }
};

/// Heavy-slot chooser used while building: (node, stats) -> slot in 0..2.
using HeavyPlacement = std::function<unsigned(const NodeKey&, const PathStats&)>;

/// Fully materialized tree (depth <= 11 by default, at most 13).
class BalancedValueTree final : public LabeledTree {
 public:
  BalancedValueTree(TreeParams params, const HeavyPlacement& placement);

  const TreeParams& params() const override { return params_; }
  unsigned heavy_slot(const NodeKey& node, const PathStats& stats) const override;

  /// Level-order id of (depth, index).
  std::uint64_t node_id(unsigned depth, std::uint64_t index) const;
  std::uint64_t level_size(unsigned depth) const;
  const PathStats& stats(unsigned depth, std::uint64_t index) const;
  bool critical(unsigned depth, std::uint64_t index) const;
  /// Edge kinds from (depth, index) to its three children.
  std::array<EdgeKind, 3> child_kinds(unsigned depth, std::uint64_t index) const;

  const PathStats& stats(const NodePath& path) const;

 private:
  static constexpr std::uint8_t kCriticalSlot = 0xff;

  TreeParams params_;
  std::vector<std::uint64_t> level_offset_;
  std::vector<PathStats> stats_;
  std::vector<std::uint8_t> heavy_;  // per internal node; kCriticalSlot if critical
};

/// Seed-uniform heavy placement, drawn top-down in level order.
BalancedValueTree build_tree(const TreeParams& params, std::uint64_t seed);
BalancedValueTree build_tree(const TreeParams& params, const HeavyPlacement& placement);

Real node_density(const BalancedValueTree& tree, const NodePath& path);
/// V(u) as the product of edge labels along the path.
Real node_value(const BalancedValueTree& tree, const NodePath& path);
bool is_critical(const BalancedValueTree& tree, const NodePath& path);
LeafClass classify_leaf(const BalancedValueTree& tree, const NodePath& path);

/// Max leaf density, enumerated over every leaf.
Real max_leaf_density(const BalancedValueTree& tree);

/// For a heavy piece (|P| <= 1/n, V(P) >= 1/2n), the leaf of density >= 1/2
/// found by taking P's densest interval and the denser of the at most two
/// leaves it overlaps. Throws PreconditionViolation if P is not heavy.
NodePath extract_candidate_leaf(const LabeledTree& tree, const Piece& piece);

/// ln f at n = 3^depth where f(n) = beta^((ln n)/6) (3/2 - beta/2)^(log3 n - (ln n)/6),
/// the largest density of a leaf with at most (ln n)/6 heavy edges. Accepts
/// non-integer depths.
long double rich_bound_log(long double depth);

}  // namespace fairdiv
