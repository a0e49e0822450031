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

#include "kyroll/bitsource.hpp"
#include "kyroll/recycler.hpp"

#include <cstdint>
#include <limits>
#include <variant>
#include <vector>

namespace kyroll {

/// Largest die size accepted: X + Bm and 2m must stay below 2^64.
inline constexpr std::uint64_t kMaxDieSides = std::uint64_t{1} << 63;

/// Randomness-recycler state machine for a fair n-sided die.
///
/// Starts at (1, 1). Each step consumes one bit: X <- X + Bm, m <- 2m; then if
/// m >= n it either accepts (X <= n, m <- n) or recycles the overshoot
/// (X <- X - n, m <- m - n). Finished once m == n, at which point X is the roll.
class UniformRecycler {
 public:
  /// Throws RangeError if n == 0 or n > kMaxDieSides.
  explicit UniformRecycler(std::uint64_t n);

  bool finished() const noexcept { return state_.m == n_; }
  const RecyclerState& state() const noexcept { return state_; }
  std::uint64_t sides() const noexcept { return n_; }
  std::uint64_t flips() const noexcept { return flips_; }

  /// Precondition: !finished().
  TraceStep step(Bit b) noexcept;

  /// Precondition: finished().
  std::uint64_t outcome() const noexcept { return state_.x; }

 private:
  std::uint64_t n_;
  RecyclerState state_{};
  std::uint64_t flips_ = 0;
};

using RollAttempt = std::variant<TracedRoll, Exhausted>;

/// Runs the die to completion or until the source is exhausted.
RollAttempt try_roll(std::uint64_t n, BitSource& source, TraceMode mode = TraceMode::Off);

/// Like try_roll, but throws SourceExhausted if the source runs dry.
TracedRoll roll(std::uint64_t n, BitSource& source, TraceMode mode = TraceMode::Off);

/// `count` sequential rolls drawing from one source.
std::vector<TracedRoll> roll_many(std::uint64_t n, std::uint64_t count, BitSource& source,
                                  TraceMode mode = TraceMode::Off);

/// Baseline: flip ceil(log2 n) bits, accept if the value is below n, otherwise
/// discard every bit and start over.
TracedRoll naive_rejection_roll(std::uint64_t n, BitSource& source);

/// ceil(log2 n) for n >= 1.
unsigned ceil_log2(std::uint64_t n) noexcept;

}  // namespace kyroll
