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

#include "kyroll/oracle.hpp"

#include "kyroll/bitsource.hpp"

#include <utility>

namespace kyroll::oracle {

namespace {

struct Replay {
  std::optional<std::uint64_t> outcome;
  std::uint64_t flips = 0;
  StateSnapshot snapshot;
};

// Runs the public sampler on exactly the bits of `history`.
Replay replay(const Target& target, const std::string& history) {
  auto source = ReplaySource::from_string(history);
  auto attempt = target.try_draw(source, TraceMode::On);
  Replay r;
  const std::vector<TraceStep>* trace = nullptr;
  if (auto* done = std::get_if<TracedRoll>(&attempt)) {
    r.outcome = done->outcome;
    r.flips = done->flips;
    trace = &done->trace;
  } else {
    auto& ex = std::get<Exhausted>(attempt);
    r.flips = ex.flips;
    r.snapshot.state = ex.state;
    trace = &ex.trace;
  }
  if (trace->empty()) {
    r.snapshot.doubled = r.snapshot.state = RecyclerState{};
  } else {
    r.snapshot.doubled = trace->back().doubled;
    r.snapshot.state = trace->back().resolved;
  }
  r.snapshot.outcome = r.outcome;
  return r;
}

// Level-by-level walk over live prefixes; `visit` sees every visited history.
template <class Visit>
std::vector<std::string> walk(const Target& target, unsigned depth, Visit&& visit) {
  std::vector<std::string> frontier;
  {
    Replay root = replay(target, "");
    visit(std::string(), root);
    if (root.outcome) return frontier;
    frontier.emplace_back();
  }
  for (unsigned d = 1; d <= depth && !frontier.empty(); ++d) {
    std::vector<std::string> next;
    next.reserve(frontier.size() * 2);
    for (const auto& h : frontier) {
      for (char c : {'0', '1'}) {
        std::string child = h + c;
        Replay r = replay(target, child);
        visit(child, r);
        if (!r.outcome) next.push_back(std::move(child));
      }
    }
    frontier = std::move(next);
  }
  return frontier;
}

}  // namespace

Rational history_mass(const std::string& history) {
  return dyadic(static_cast<unsigned>(history.size()));
}

EnumerationResult enumerate(const Target& target, unsigned depth) {
  EnumerationResult result;
  result.depth = depth;
  auto live = walk(target, depth, [&](const std::string& h, const Replay& r) {
    if (!r.outcome) return;
    const Rational mass = history_mass(h);
    result.outcome_mass[*r.outcome] += mass;
    result.flip_mass[static_cast<unsigned>(h.size())] += mass;
    result.leaf_histories.emplace(h, *r.outcome);
  });
  result.live_mass = 0;
  for (const auto& h : live) result.live_mass += history_mass(h);
  result.live_histories = std::move(live);
  return result;
}

std::map<std::string, StateSnapshot> state_tree(const Target& target, unsigned depth) {
  std::map<std::string, StateSnapshot> tree;
  walk(target, depth,
       [&](const std::string& h, const Replay& r) { tree.emplace(h, r.snapshot); });
  return tree;
}

}  // namespace kyroll::oracle
