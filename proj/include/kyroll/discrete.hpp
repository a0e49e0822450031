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
#include "kyroll/rational.hpp"
#include "kyroll/recycler.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

namespace kyroll {

/// Exact probability vector over outcomes 1..K. Immutable once constructed.
class ProbabilityVector {
 public:
  /// Throws InvalidDistribution unless non-empty, every entry >= 0, and the
  /// entries sum to exactly 1.
  explicit ProbabilityVector(std::vector<Rational> probs);

  /// (1/n, ..., 1/n).
  static ProbabilityVector uniform(std::uint64_t n);

  /// Comma-separated exact fractions, e.g. "3/8,1/2,1/8". Integers ("1", "0")
  /// are allowed; decimals are rejected. Throws ParseError or InvalidDistribution.
  static ProbabilityVector parse_fractions(std::string_view text);

  /// JSON array of {"num": ..., "den": ...}; num/den are integers or decimal
  /// integer strings.
  static ProbabilityVector parse_json(std::string_view text);

  /// Dispatches on the first non-blank character: '[' means JSON.
  static ProbabilityVector parse(std::string_view text);

  std::size_t size() const noexcept { return probs_.size(); }
  /// 1-indexed.
  const Rational& operator[](std::size_t outcome) const { return probs_.at(outcome - 1); }
  const std::vector<Rational>& values() const noexcept { return probs_; }

  /// Outcome i with p_i == 1, if any.
  std::optional<std::size_t> certain_outcome() const;

  std::string to_string() const;

 private:
  std::vector<Rational> probs_;
};

/// The level-th binary digit of p >= 0: floor(2^j p) - 2 floor(2^(j-1) p) for
/// j >= 1, floor(p) for j == 0. Terminating expansions are used when they exist.
int binary_digit(const Rational& p, unsigned level);

/// Outcomes (ascending, 1-indexed) whose probability has a 1 at `level` (>= 1).
std::vector<std::size_t> acceptance_set(const ProbabilityVector& p, unsigned level);

/// Fractional parts frac(2^level * p_i), computed from the original entries.
struct LevelState {
  unsigned level = 0;
  std::vector<Rational> residual_probs;
};
LevelState level_state(const ProbabilityVector& p, unsigned level);

/// Precomputed acceptance-set schedule for one distribution.
///
/// All binary expansions are eventually periodic; when the joint period is
/// small enough, levels past the preperiod are folded back onto the first
/// period so sampling never recomputes digits. Otherwise sets beyond the
/// cached range are computed on demand.
class DiscreteSampler {
 public:
  explicit DiscreteSampler(ProbabilityVector p);

  const ProbabilityVector& distribution() const noexcept { return p_; }

  /// Acceptance set at `level` >= 1 (copy when not cached).
  std::vector<std::size_t> level_set(unsigned level) const;

 private:
  friend class DiscreteRecycler;
  const std::vector<std::size_t>* cached(unsigned level) const noexcept;

  ProbabilityVector p_;
  unsigned preperiod_ = 0;
  unsigned period_ = 0;  // 0: no periodic folding
  std::vector<std::vector<std::size_t>> levels_;  // levels_[j-1] for j = 1..cached
};

/// Recycler state machine for a general distribution.
///
/// At flip j the acceptance set A_j (outcomes whose probability has digit j
/// equal to 1) plays the role of the die: after doubling, X <= |A_j| accepts
/// the X-th element of A_j; otherwise X and m drop by |A_j|. Holds a reference
/// to the sampler, which must outlive it.
class DiscreteRecycler {
 public:
  explicit DiscreteRecycler(const DiscreteSampler& sampler);

  bool finished() const noexcept { return outcome_ != 0; }
  const RecyclerState& state() const noexcept { return state_; }
  std::uint64_t flips() const noexcept { return flips_; }

  /// Precondition: !finished().
  TraceStep step(Bit b);

  /// Precondition: finished(). 1-indexed outcome.
  std::uint64_t outcome() const noexcept { return outcome_; }

 private:
  const DiscreteSampler* sampler_;
  RecyclerState state_{};
  std::uint64_t flips_ = 0;
  std::uint64_t outcome_ = 0;
};

using SampleAttempt = std::variant<TracedRoll, Exhausted>;

SampleAttempt try_sample(const DiscreteSampler& sampler, BitSource& source,
                         TraceMode mode = TraceMode::Off);

/// Throws SourceExhausted if the source runs dry.
TracedRoll sample(const DiscreteSampler& sampler, BitSource& source,
                  TraceMode mode = TraceMode::Off);

/// Convenience overload; builds the level schedule on every call.
TracedRoll sample(const ProbabilityVector& p, BitSource& source,
                  TraceMode mode = TraceMode::Off);

}  // namespace kyroll
