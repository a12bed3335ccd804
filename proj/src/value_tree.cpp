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

#include "fairdiv/value_tree.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace fairdiv {

namespace {

constexpr long double kLn2 = 0.693147180559945309417232121458176568L;
constexpr long double kLn3 = 1.098612288668109691395245236922525704L;
constexpr unsigned kMaxEagerDepth = 11;

}  // namespace

TreeParams::TreeParams(unsigned depth, bool permissive) : depth_(depth), permissive_(permissive) {
  if (depth == 0) {
    throw ArgumentError("tree depth must be at least 1");
  }
  if (!permissive && depth < 11) {
    throw ArgumentError("balanced value trees need n >= 3^11 (got depth " + std::to_string(depth) +
                        "); pass permissive to build smaller trees");
  }
  leaves_ = pow3(depth);
  Real ln_n = Real(depth) * boost::multiprecision::log(Real(3));
  beta_ = boost::multiprecision::pow(Real(2), Real(6) / ln_n);
  heavy_label_ = beta_ / 3;
  light_label_ = Real(1) / 2 - beta_ / 6;
  critical_label_ = Real(1) / 3;
  light_factor_ = Real(3) / 2 - beta_ / 2;
  if (!permissive && !(heavy_label_ >= critical_label_ && heavy_label_ < Real(1) / 2)) {
    throw ArgumentError("beta/3 must lie in [1/3, 1/2)");
  }
  ln_beta_ = 6 * kLn2 / (static_cast<long double>(depth) * kLn3);
  ln_light_factor_ = light_factor_ > 0 ? std::log(light_factor_.convert_to<long double>())
                                       : std::numeric_limits<long double>::quiet_NaN();
  beta_pow_.reserve(depth + 1);
  light_factor_pow_.reserve(depth + 1);
  beta_pow_.push_back(1);
  light_factor_pow_.push_back(1);
  for (unsigned i = 1; i <= depth; ++i) {
    beta_pow_.push_back(beta_pow_.back() * beta_);
    light_factor_pow_.push_back(light_factor_pow_.back() * light_factor_);
  }
}

double TreeParams::ln_n() const { return static_cast<double>(depth_ * kLn3); }

NodePath NodePath::from_key(const NodeKey& key) {
  NodePath path;
  path.digits.assign(key.depth, 0);
  mpz_class rest = key.index;
  for (unsigned i = key.depth; i-- > 0;) {
    mpz_class digit;
    mpz_fdiv_qr_ui(rest.get_mpz_t(), digit.get_mpz_t(), rest.get_mpz_t(), 3);
    path.digits[i] = static_cast<std::uint8_t>(digit.get_ui());
  }
  return path;
}

NodePath NodePath::leaf_containing(const Rational& x, unsigned depth) {
  check_query_range(x, x);
  mpz_class n = pow3(depth);
  mpz_class index;
  mpz_class scaled = x.get_num() * n;
  mpz_fdiv_q(index.get_mpz_t(), scaled.get_mpz_t(), x.get_den().get_mpz_t());
  if (index == n) {
    index -= 1;
  }
  return from_key(NodeKey{depth, index});
}

NodeKey NodePath::key() const {
  NodeKey key;
  for (std::uint8_t digit : digits) {
    key = key.child(digit);
  }
  return key;
}

Rational NodePath::left() const {
  NodeKey k = key();
  Rational out(k.index, pow3(k.depth));
  out.canonicalize();
  return out;
}

Rational NodePath::width() const {
  Rational out(1, pow3(depth()));
  out.canonicalize();
  return out;
}

namespace {

long double guarded(long double margin, const char* what) {
  if (std::fabs(margin) < kAmbiguityGuard) {
    throw NumericalAmbiguity(std::string(what) + " is within the ambiguity guard");
  }
  return margin;
}

long double log_density(const TreeParams& params, const PathStats& stats) {
  long double out = stats.h * params.ln_beta();
  if (stats.q > 0) {
    out += stats.q * params.ln_light_factor();
  }
  return out;
}

}  // namespace

bool is_critical(const TreeParams& params, const PathStats& stats) {
  return guarded(log_density(params, stats) + params.ln_beta() - kLn2, "criticality test") > 0;
}

Real density_closed_form(const TreeParams& params, const PathStats& stats) {
  return params.beta_pow(stats.h) * params.light_factor_pow(stats.q);
}

LeafClass classify(const TreeParams& params, const PathStats& stats) {
  if (is_critical(params, stats)) {
    return LeafClass::Critical;
  }
  return guarded(log_density(params, stats) + kLn2, "richness test") >= 0 ? LeafClass::Rich
                                                                          : LeafClass::Neither;
}

Real label_value(const TreeParams& params, EdgeKind kind) {
  switch (kind) {
    case EdgeKind::Heavy:
      return params.heavy_label();
    case EdgeKind::Light:
      return params.light_label();
    case EdgeKind::Critical:
      return params.critical_label();
  }
  return params.critical_label();
}

PathStats extend(PathStats stats, EdgeKind kind) {
  switch (kind) {
    case EdgeKind::Heavy:
      ++stats.h;
      break;
    case EdgeKind::Light:
      ++stats.q;
      break;
    case EdgeKind::Critical:
      ++stats.z;
      break;
  }
  return stats;
}

std::array<EdgeKind, 3> child_kinds(const TreeLabeling& labeling, const NodeKey& node,
                                     const PathStats& stats) {
  if (is_critical(labeling.params(), stats)) {
    return {EdgeKind::Critical, EdgeKind::Critical, EdgeKind::Critical};
  }
  unsigned slot = labeling.heavy_slot(node, stats);
  std::array<EdgeKind, 3> kinds{EdgeKind::Light, EdgeKind::Light, EdgeKind::Light};
  kinds.at(slot) = EdgeKind::Heavy;
  return kinds;
}

LeafVisit visit_leaf(const TreeLabeling& labeling, const mpz_class& leaf_index) {
  const TreeParams& params = labeling.params();
  NodePath path = NodePath::from_key(NodeKey{params.depth(), leaf_index});
  LeafVisit visit{NodeKey{}, PathStats{}, Real(1)};
  for (std::uint8_t digit : path.digits) {
    auto kinds = child_kinds(labeling, visit.key, visit.stats);
    visit.value *= label_value(params, kinds[digit]);
    visit.stats = extend(visit.stats, kinds[digit]);
    visit.key = visit.key.child(digit);
  }
  return visit;
}

Real tree_prefix_mass(const TreeLabeling& labeling, const Rational& x) {
  check_query_range(x, x);
  if (x == 1) {
    return Real(1);
  }
  const TreeParams& params = labeling.params();
  NodePath path = NodePath::leaf_containing(x, params.depth());
  Rational fraction = x * params.leaves() - Rational(path.key().index);

  NodeKey node;
  PathStats stats;
  Real value = 1;
  Real mass = 0;
  for (std::uint8_t digit : path.digits) {
    auto kinds = child_kinds(labeling, node, stats);
    for (unsigned c = 0; c < digit; ++c) {
      mass += value * label_value(params, kinds[c]);
    }
    value *= label_value(params, kinds[digit]);
    stats = extend(stats, kinds[digit]);
    node = node.child(digit);
  }
  return mass + value * to_real(fraction);
}

Real tree_eval(const TreeLabeling& labeling, const Rational& x, const Rational& y) {
  check_query_range(x, y);
  if (x == y) {
    return Real(0);
  }
  Real out = tree_prefix_mass(labeling, y) - tree_prefix_mass(labeling, x);
  return out < 0 ? Real(0) : out;
}

std::optional<Rational> tree_cut(const TreeLabeling& labeling, const Rational& x, const Real& r) {
  check_query_range(x, x);
  if (r < 0) {
    throw ArgumentError("cut mass must be non-negative");
  }
  if (r == 0) {
    return x;
  }
  static const Real kSlack("1e-40");
  Real target = tree_prefix_mass(labeling, x) + r;
  if (target > 1 + kSlack) {
    return std::nullopt;
  }
  if (target >= 1) {
    return Rational(1);
  }
  const TreeParams& params = labeling.params();
  NodeKey node;
  PathStats stats;
  Real value = 1;
  Real remaining = target;
  for (unsigned level = 0; level < params.depth(); ++level) {
    auto kinds = child_kinds(labeling, node, stats);
    unsigned chosen = 2;
    for (unsigned c = 0; c < 2; ++c) {
      Real mass = value * label_value(params, kinds[c]);
      if (remaining <= mass) {
        chosen = c;
        break;
      }
      remaining -= mass;
    }
    value *= label_value(params, kinds[chosen]);
    stats = extend(stats, kinds[chosen]);
    node = node.child(chosen);
  }
  Real fraction = remaining / value;
  fraction = std::clamp(fraction, Real(0), Real(1));
  Rational y = (Rational(node.index) + to_rational(fraction)) / Rational(params.leaves());
  y.canonicalize();
  return std::max(y, x);
}

BalancedValueTree::BalancedValueTree(TreeParams params, const HeavyPlacement& placement)
    : params_(std::move(params)) {
  const unsigned depth = params_.depth();
  if (depth > kMaxEagerDepth) {
    throw ArgumentError("eager trees are capped at depth " + std::to_string(kMaxEagerDepth));
  }
  std::uint64_t total = 0;
  std::uint64_t width = 1;
  for (unsigned level = 0; level <= depth; ++level) {
    level_offset_.push_back(total);
    total += width;
    width *= 3;
  }
  stats_.resize(total);
  heavy_.resize(level_offset_[depth]);

  for (unsigned level = 0; level < depth; ++level) {
    for (std::uint64_t index = 0; index < level_size(level); ++index) {
      std::uint64_t id = node_id(level, index);
      const PathStats stats = stats_[id];
      std::array<EdgeKind, 3> kinds{EdgeKind::Critical, EdgeKind::Critical, EdgeKind::Critical};
      if (fairdiv::is_critical(params_, stats)) {
        heavy_[id] = kCriticalSlot;
      } else {
        unsigned slot = placement(NodeKey{level, mpz_class(static_cast<unsigned long>(index))}, stats);
        if (slot > 2) {
          throw ArgumentError("heavy placement returned slot " + std::to_string(slot));
        }
        heavy_[id] = static_cast<std::uint8_t>(slot);
        kinds = {EdgeKind::Light, EdgeKind::Light, EdgeKind::Light};
        kinds[slot] = EdgeKind::Heavy;
      }
      for (unsigned c = 0; c < 3; ++c) {
        stats_[node_id(level + 1, index * 3 + c)] = extend(stats, kinds[c]);
      }
    }
  }
}

std::uint64_t BalancedValueTree::node_id(unsigned depth, std::uint64_t index) const {
  return level_offset_.at(depth) + index;
}

std::uint64_t BalancedValueTree::level_size(unsigned depth) const {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < depth; ++i) {
    out *= 3;
  }
  return out;
}

const PathStats& BalancedValueTree::stats(unsigned depth, std::uint64_t index) const {
  return stats_.at(node_id(depth, index));
}

const PathStats& BalancedValueTree::stats(const NodePath& path) const {
  NodeKey key = path.key();
  return stats(key.depth, key.index.get_ui());
}

bool BalancedValueTree::critical(unsigned depth, std::uint64_t index) const {
  if (depth == params_.depth()) {
    return fairdiv::is_critical(params_, stats(depth, index));
  }
  return heavy_.at(node_id(depth, index)) == kCriticalSlot;
}

std::array<EdgeKind, 3> BalancedValueTree::child_kinds(unsigned depth, std::uint64_t index) const {
  std::uint8_t slot = heavy_.at(node_id(depth, index));
  if (slot == kCriticalSlot) {
    return {EdgeKind::Critical, EdgeKind::Critical, EdgeKind::Critical};
  }
  std::array<EdgeKind, 3> kinds{EdgeKind::Light, EdgeKind::Light, EdgeKind::Light};
  kinds[slot] = EdgeKind::Heavy;
  return kinds;
}

unsigned BalancedValueTree::heavy_slot(const NodeKey& node, const PathStats&) const {
  std::uint8_t slot = heavy_.at(node_id(node.depth, node.index.get_ui()));
  if (slot == kCriticalSlot) {
    throw std::logic_error("heavy slot requested for a critical node");
  }
  return slot;
}

BalancedValueTree build_tree(const TreeParams& params, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<unsigned> slot(0, 2);
  return BalancedValueTree(params, [&](const NodeKey&, const PathStats&) { return slot(rng); });
}

BalancedValueTree build_tree(const TreeParams& params, const HeavyPlacement& placement) {
  return BalancedValueTree(params, placement);
}

Real node_density(const BalancedValueTree& tree, const NodePath& path) {
  return density_closed_form(tree.params(), tree.stats(path));
}

Real node_value(const BalancedValueTree& tree, const NodePath& path) {
  Real value = 1;
  std::uint64_t index = 0;
  for (unsigned level = 0; level < path.depth(); ++level) {
    auto kinds = tree.child_kinds(level, index);
    value *= label_value(tree.params(), kinds[path.digits[level]]);
    index = index * 3 + path.digits[level];
  }
  return value;
}

bool is_critical(const BalancedValueTree& tree, const NodePath& path) {
  return is_critical(tree.params(), tree.stats(path));
}

LeafClass classify_leaf(const BalancedValueTree& tree, const NodePath& path) {
  if (path.depth() != tree.params().depth()) {
    throw ArgumentError("classify_leaf needs a leaf path");
  }
  return classify(tree.params(), tree.stats(path));
}

Real max_leaf_density(const BalancedValueTree& tree) {
  const unsigned depth = tree.params().depth();
  Real best = 0;
  for (std::uint64_t index = 0; index < tree.level_size(depth); ++index) {
    Real d = density_closed_form(tree.params(), tree.stats(depth, index));
    if (d > best) {
      best = d;
    }
  }
  return best;
}

NodePath extract_candidate_leaf(const LabeledTree& tree, const Piece& piece) {
  const TreeParams& params = tree.params();
  const Rational n(params.leaves());
  const Rational width = piece.width();
  if (piece.empty() || width * n > 1) {
    throw PreconditionViolation("piece is not heavy: width exceeds 1/n");
  }
  Real value = value_of_piece(tree, piece);
  static const Real kRelativeSlack("1e-12");
  if (value * 2 * to_real(n) < 1 - kRelativeSlack) {
    throw PreconditionViolation("piece is not heavy: value below 1/(2n)");
  }

  // Densest interval; by averaging its density is at least D(P) >= 1/2.
  const Interval* densest = nullptr;
  Real best_density = -1;
  for (const Interval& interval : piece.intervals()) {
    Real d = tree.eval(interval.left(), interval.right()) / to_real(interval.width());
    if (d > best_density) {
      best_density = d;
      densest = &interval;
    }
  }

  // An interval of width <= 1/n meets at most two leaves.
  NodePath first = NodePath::leaf_containing(densest->left(), params.depth());
  mpz_class first_index = first.key().index;
  mpz_class last_index;
  mpz_class scaled = densest->right().get_num() * params.leaves();
  mpz_cdiv_q(last_index.get_mpz_t(), scaled.get_mpz_t(), densest->right().get_den().get_mpz_t());
  last_index -= 1;
  if (last_index < first_index) {
    last_index = first_index;
  }

  NodePath best = first;
  Real best_leaf_density = -1;
  for (mpz_class index = first_index; index <= last_index; ++index) {
    LeafVisit visit = visit_leaf(tree, index);
    Real d = density_closed_form(params, visit.stats);
    if (d > best_leaf_density) {
      best_leaf_density = d;
      best = NodePath::from_key(visit.key);
    }
  }
  return best;
}

long double rich_bound_log(long double depth) {
  const long double ln_n = depth * kLn3;
  const long double beta_minus_one = std::expm1(6 * kLn2 / ln_n);
  const long double ln_light_factor = std::log1p(-beta_minus_one / 2);
  return kLn2 + (depth - ln_n / 6) * ln_light_factor;
}

}  // namespace fairdiv
