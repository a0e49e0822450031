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

#include "kyroll/rational.hpp"
#include "kyroll/recycler.hpp"
#include "kyroll/target.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kyroll::oracle {

/// Exact outcome of walking every bit string up to a depth bound.
struct EnumerationResult {
  unsigned depth = 0;
  std::map<std::uint64_t, Rational> outcome_mass;
  std::map<unsigned, Rational> flip_mass;
  Rational live_mass;
  std::map<std::string, std::uint64_t> leaf_histories;  // terminating prefix -> outcome
  std::vector<std::string> live_histories;              // prefixes still running at `depth`
};

/// Replays every prefix in {0,1}^<=depth through the public sampler using a
/// ReplaySource, extending only prefixes on which the sampler is still live.
/// Cost is proportional to the number of tree nodes times depth.
EnumerationResult enumerate(const Target& target, unsigned depth);

/// States observed after consuming exactly the bits of one history.
struct StateSnapshot {
  RecyclerState doubled;   // after the doubling line of the last flip ((1,1) at the root)
  RecyclerState state;     // after the accept/recycle lines
  std::optional<std::uint64_t> outcome;  // set when the history ends at a leaf
};

/// Every history of length <= depth that the sampler actually visits.
std::map<std::string, StateSnapshot> state_tree(const Target& target, unsigned depth);

/// Mass 2^-|h| of a bit history.
Rational history_mass(const std::string& history);

}  // namespace kyroll::oracle
