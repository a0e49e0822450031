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

#include <cstdint>
#include <vector>

namespace kyroll {

/// The pair (X, m): X is uniform on {1..m} conditional on m.
struct RecyclerState {
  std::uint64_t x = 1;
  std::uint64_t m = 1;

  friend bool operator==(const RecyclerState&, const RecyclerState&) = default;
  friend auto operator<=>(const RecyclerState&, const RecyclerState&) = default;
};

/// Snapshot of one loop iteration (one coin flip).
struct TraceStep {
  RecyclerState doubled;   // after X <- X + Bm, m <- 2m
  RecyclerState resolved;  // after the accept / recycle lines
  std::uint64_t threshold = 0;  // acceptance count n in force at this flip
  bool accepted = false;
};

enum class TraceMode { Off, On };

/// A completed draw. Outcomes are 1-indexed.
struct TracedRoll {
  std::uint64_t outcome = 0;
  std::uint64_t flips = 0;
  std::vector<TraceStep> trace;  // one entry per flip when tracing is on
};

/// A draw that ran out of bits before terminating.
struct Exhausted {
  RecyclerState state;
  std::uint64_t flips = 0;
  std::vector<TraceStep> trace;
};

}  // namespace kyroll
