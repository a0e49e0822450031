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
#include "kyroll/rational.hpp"

#include <cstdint>
#include <map>

namespace kyroll {

/// Exact E[N] for the n-sided die, from the recycler recurrence
/// E(s) = k(s) + (1 - n/s') E(s' - n), s' = s 2^k(s) the first doubling >= n.
/// Exact E[N] for a fair n-sided die. Throws RangeError when the recycling
/// cycle is longer than about 2^21 flips (never for n <= 2^20).
Rational exact_expected_flips(std::uint64_t n);

struct RecurrenceSolution {
  Rational expected_flips;
  /// Expected number of doubling phases started with die size s (key s).
  std::map<std::uint64_t, Rational> visit_states;
};

/// As exact_expected_flips, also returning the expected visit counts.
RecurrenceSolution solve_recurrence(std::uint64_t n);

/// P(N = j) = n * digit_j(1/n) * 2^-j for j <= depth.
FlipDistribution flip_distribution_uniform(std::uint64_t n, unsigned depth);

/// P(N = j) = sum_i digit_j(p_i) * 2^-j for j <= depth.
FlipDistribution flip_distribution(const ProbabilityVector& p, unsigned depth);

/// sum_j j * digit_j(p) * 2^-j in closed form, using the eventual periodicity
/// of the binary expansion. Throws RangeError if the period is impractically long.
Rational expansion_depth_sum(const Rational& p);

/// Exact E[N] of the optimal tree for p, summed from the binary expansions.
Rational expected_flips_from_expansion(const ProbabilityVector& p);
Rational expected_flips_from_expansion(std::uint64_t n);

struct BoundsReport {
  std::uint64_t n_max = 0;
  std::uint64_t max_slack_n = 0;  // slack = ceil(log2 n) + 1 - E[N]
  Rational max_slack;
  std::uint64_t min_slack_n = 0;
  Rational min_slack;
};

/// Checks ceil(log2 n) <= E[N] <= ceil(log2 n) + 1 exactly for n in 1..n_max.
/// Throws BoundViolation naming the first failing n.
BoundsReport verify_bounds(std::uint64_t n_max);

/// Shannon entropy in bits, in double precision (reporting only).
double entropy(const ProbabilityVector& p);

}  // namespace kyroll
