// Copyright 2026 The kyroll Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "kyroll/discrete.hpp"
#include "kyroll/flip_distribution.hpp"
#include "kyroll/target.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace kyroll {

/// Orders bit histories by length, then lexicographically (level order).
struct HistoryOrder {
  bool operator()(const std::string& a, const std::string& b) const noexcept {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  }
};

enum class NodeKind { Internal, Leaf, Pending };

struct DdgNode {
  NodeKind kind = NodeKind::Internal;
  std::uint64_t outcome = 0;  // leaves only, 1-indexed

  friend bool operator==(const DdgNode&, const DdgNode&) = default;
};

/// Discrete distribution generating tree, indexed by bit history.
///
/// Bit 0 is the left child and bit 1 the right child. Pending nodes mark
/// positions still undecided at the depth bound of a truncated infinite tree.
class DdgTree {
 public:
  using NodeMap = std::map<std::string, DdgNode, HistoryOrder>;

  /// Builds a tree from its terminal positions. Throws Error unless the leaves
  /// and pending positions form a full binary tree (prefix-free, every
  /// internal node has both children).
  static DdgTree from_terminals(const std::map<std::string, std::uint64_t>& leaves,
                                const std::vector<std::string>& pending = {});

  const NodeMap& nodes() const noexcept { return nodes_; }
  const DdgNode* find(const std::string& history) const;

  /// Deepest materialized level.
  unsigned depth() const noexcept { return depth_; }
  bool complete() const noexcept { return pending_ == 0; }
  std::size_t leaf_count() const noexcept { return leaves_; }
  std::size_t pending_count() const noexcept { return pending_; }
  std::size_t internal_count() const noexcept { return nodes_.size() - leaves_ - pending_; }

  friend bool operator==(const DdgTree&, const DdgTree&) = default;

 private:
  NodeMap nodes_;
  unsigned depth_ = 0;
  std::size_t leaves_ = 0;
  std::size_t pending_ = 0;
};

/// Leaf counts per (level, outcome).
struct LevelCensus {
  std::map<std::pair<unsigned, std::uint64_t>, std::uint64_t> counts;

  std::uint64_t count(unsigned level, std::uint64_t outcome) const;
  friend bool operator==(const LevelCensus&, const LevelCensus&) = default;
};

/// Knuth-Yao tree: outcome i gets exactly binary_digit(p_i, j) leaves at level
/// j. Leaves take the lexicographically smallest free positions of a level in
/// ascending outcome order. Stops early once no mass is left.
DdgTree build_canonical(const ProbabilityVector& p, unsigned depth_bound);

/// Tree traced out by the recycler on every bit string up to `depth_bound`.
DdgTree build_from_algorithm(const Target& target, unsigned depth_bound);

LevelCensus census(const DdgTree& tree);

struct OptimalityVerdict {
  bool optimal = false;
  std::string detail;  // "optimal" or the first violation found
};

/// Optimal iff every level holds each outcome at most once and the count at
/// (j, i) equals binary_digit(p_i, j) for each materialized level. Throws
/// MassMismatch if the leaf masses cannot reproduce p.
OptimalityVerdict check_optimal(const DdgTree& tree, const ProbabilityVector& p);

FlipDistribution flip_distribution(const DdgTree& tree);

/// Graphviz text. Node ids are "r" + bit history.
std::string export_dot(const DdgTree& tree);

/// Replaces the leaf at `history` with an internal node whose two children are
/// leaves of the same outcome one level deeper. Output law is unchanged.
DdgTree split_leaf(const DdgTree& tree, const std::string& history);

}  // namespace kyroll
