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

#include "kyroll/ddg.hpp"

#include "kyroll/error.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace kyroll {

namespace {

void check_history(const std::string& h) {
  if (h.find_first_not_of("01") != std::string::npos) {
    throw Error("bit history '" + h + "' may only contain 0 and 1");
  }
}

}  // namespace

DdgTree DdgTree::from_terminals(const std::map<std::string, std::uint64_t>& leaves,
                                const std::vector<std::string>& pending) {
  DdgTree tree;
  std::set<std::string> internal;
  auto add_terminal = [&](const std::string& h, DdgNode node) {
    check_history(h);
    if (!tree.nodes_.emplace(h, node).second) {
      throw Error("position '" + h + "' given more than once");
    }
    tree.depth_ = std::max(tree.depth_, static_cast<unsigned>(h.size()));
    for (std::size_t len = 0; len < h.size(); ++len) internal.insert(h.substr(0, len));
  };
  for (const auto& [h, outcome] : leaves) {
    if (outcome == 0) throw Error("leaf outcomes are 1-indexed");
    add_terminal(h, DdgNode{NodeKind::Leaf, outcome});
  }
  for (const auto& h : pending) add_terminal(h, DdgNode{NodeKind::Pending, 0});
  if (tree.nodes_.empty()) throw Error("tree has no terminal positions");

  for (const auto& h : internal) {
    if (tree.nodes_.count(h)) throw Error("terminal '" + h + "' has descendants");
  }
  for (const auto& h : internal) {
    for (const char c : {'0', '1'}) {
      const std::string child = h + c;
      if (!internal.count(child) && !tree.nodes_.count(child)) {
        throw Error("internal node '" + h + "' is missing child '" + child + "'");
      }
    }
  }
  tree.leaves_ = leaves.size();
  tree.pending_ = pending.size();
  for (const auto& h : internal) tree.nodes_.emplace(h, DdgNode{NodeKind::Internal, 0});
  return tree;
}

const DdgNode* DdgTree::find(const std::string& history) const {
  const auto it = nodes_.find(history);
  return it == nodes_.end() ? nullptr : &it->second;
}

std::uint64_t LevelCensus::count(unsigned level, std::uint64_t outcome) const {
  const auto it = counts.find({level, outcome});
  return it == counts.end() ? 0 : it->second;
}

DdgTree build_canonical(const ProbabilityVector& p, unsigned depth_bound) {
  if (depth_bound == 0) throw RangeError("depth bound must be at least 1");
  std::map<std::string, std::uint64_t> leaves;
  std::vector<std::string> pending;
  if (const auto certain = p.certain_outcome()) {
    leaves.emplace("", *certain);
    return DdgTree::from_terminals(leaves);
  }

  std::vector<std::string> frontier{""};
  for (unsigned level = 1; level <= depth_bound; ++level) {
    std::vector<std::string> positions;
    positions.reserve(frontier.size() * 2);
    for (const auto& h : frontier) {
      positions.push_back(h + '0');
      positions.push_back(h + '1');
    }
    const auto accept = acceptance_set(p, level);
    if (accept.size() > positions.size()) {
      throw InvalidDistribution("level " + std::to_string(level) + " needs " +
                                std::to_string(accept.size()) + " leaves but only " +
                                std::to_string(positions.size()) + " positions are free");
    }
    for (std::size_t k = 0; k < accept.size(); ++k) leaves.emplace(positions[k], accept[k]);
    positions.erase(positions.begin(), positions.begin() + static_cast<std::ptrdiff_t>(accept.size()));
    if (positions.empty()) break;
    if (level == depth_bound) pending = std::move(positions);
    else frontier = std::move(positions);
  }
  return DdgTree::from_terminals(leaves, pending);
}

DdgTree build_from_algorithm(const Target& target, unsigned depth_bound) {
  if (depth_bound == 0) throw RangeError("depth bound must be at least 1");
  std::map<std::string, std::uint64_t> leaves;
  std::vector<std::string> pending;

  AnyRecycler root(target);
  if (root.finished()) {
    leaves.emplace("", root.outcome());
    return DdgTree::from_terminals(leaves);
  }
  std::vector<std::pair<std::string, AnyRecycler>> frontier;
  frontier.emplace_back("", root);
  for (unsigned level = 1; level <= depth_bound && !frontier.empty(); ++level) {
    std::vector<std::pair<std::string, AnyRecycler>> next;
    next.reserve(frontier.size() * 2);
    for (const auto& [h, machine] : frontier) {
      for (const Bit b : {Bit::Zero, Bit::One}) {
        AnyRecycler child = machine;
        child.step(b);
        std::string history = h + (b == Bit::One ? '1' : '0');
        if (child.finished()) leaves.emplace(std::move(history), child.outcome());
        else next.emplace_back(std::move(history), std::move(child));
      }
    }
    frontier = std::move(next);
  }
  for (auto& entry : frontier) pending.push_back(std::move(entry.first));
  return DdgTree::from_terminals(leaves, pending);
}

LevelCensus census(const DdgTree& tree) {
  LevelCensus c;
  for (const auto& [h, node] : tree.nodes()) {
    if (node.kind == NodeKind::Leaf) ++c.counts[{static_cast<unsigned>(h.size()), node.outcome}];
  }
  return c;
}

OptimalityVerdict check_optimal(const DdgTree& tree, const ProbabilityVector& p) {
  const std::size_t k = p.size();
  std::vector<Rational> leaf_mass(k + 1, Rational(0));
  Rational pending_mass = 0;
  for (const auto& [h, node] : tree.nodes()) {
    const Rational mass = dyadic(static_cast<unsigned>(h.size()));
    if (node.kind == NodeKind::Pending) pending_mass += mass;
    if (node.kind != NodeKind::Leaf) continue;
    if (node.outcome > k) {
      throw MassMismatch("leaf '" + h + "' emits outcome " + std::to_string(node.outcome) +
                         " outside 1.." + std::to_string(k));
    }
    leaf_mass[node.outcome] += mass;
  }
  Rational missing = 0;
  for (std::size_t i = 1; i <= k; ++i) {
    if (leaf_mass[i] > p[i]) {
      throw MassMismatch("outcome " + std::to_string(i) + " has leaf mass " +
                         leaf_mass[i].get_str() + " exceeding " + p[i].get_str());
    }
    missing += p[i] - leaf_mass[i];
  }
  if (missing != pending_mass) {
    throw MassMismatch("unresolved mass " + pending_mass.get_str() +
                       " does not cover the missing probability " + missing.get_str());
  }

  const LevelCensus c = census(tree);
  for (const auto& [key, count] : c.counts) {
    if (count > 1) {
      return {false, "outcome " + std::to_string(key.second) + " appears " +
                         std::to_string(count) + " times at level " + std::to_string(key.first)};
    }
  }
  for (unsigned level = 0; level <= tree.depth(); ++level) {
    for (std::size_t i = 1; i <= k; ++i) {
      const auto want = static_cast<std::uint64_t>(binary_digit(p[i], level));
      if (c.count(level, i) != want) {
        return {false, "outcome " + std::to_string(i) + " has " +
                           std::to_string(c.count(level, i)) + " leaves at level " +
                           std::to_string(level) + " but its binary digit there is " +
                           std::to_string(want)};
      }
    }
  }
  return {true, "optimal"};
}

FlipDistribution flip_distribution(const DdgTree& tree) {
  std::map<unsigned, Rational> mass;
  Rational residual = 0;
  for (const auto& [h, node] : tree.nodes()) {
    const auto level = static_cast<unsigned>(h.size());
    if (node.kind == NodeKind::Leaf) mass[level] += dyadic(level);
    else if (node.kind == NodeKind::Pending) residual += dyadic(level);
  }
  return FlipDistribution(std::move(mass), std::move(residual), tree.depth());
}

std::string export_dot(const DdgTree& tree) {
  std::ostringstream out;
  out << "digraph ddg {\n";
  out << "  node [shape=circle, label=\"\", width=0.25, height=0.25];\n";
  for (const auto& [h, node] : tree.nodes()) {
    out << "  r" << h;
    switch (node.kind) {
      case NodeKind::Internal: out << ";\n"; break;
      case NodeKind::Leaf: out << " [shape=box, label=\"" << node.outcome << "\"];\n"; break;
      case NodeKind::Pending: out << " [style=dashed, label=\"...\"];\n"; break;
    }
  }
  for (const auto& [h, node] : tree.nodes()) {
    if (node.kind != NodeKind::Internal) continue;
    out << "  r" << h << " -> r" << h << "0 [label=\"0\"];\n";
    out << "  r" << h << " -> r" << h << "1 [label=\"1\"];\n";
  }
  out << "}\n";
  return out.str();
}

DdgTree split_leaf(const DdgTree& tree, const std::string& history) {
  const DdgNode* node = tree.find(history);
  if (node == nullptr || node->kind != NodeKind::Leaf) {
    throw Error("'" + history + "' is not a leaf");
  }
  std::map<std::string, std::uint64_t> leaves;
  std::vector<std::string> pending;
  for (const auto& [h, n] : tree.nodes()) {
    if (n.kind == NodeKind::Leaf && h != history) leaves.emplace(h, n.outcome);
    if (n.kind == NodeKind::Pending) pending.push_back(h);
  }
  leaves.emplace(history + '0', node->outcome);
  leaves.emplace(history + '1', node->outcome);
  return DdgTree::from_terminals(leaves, pending);
}

}  // namespace kyroll
