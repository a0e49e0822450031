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
#include "kyroll/target.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace kyroll {

struct ChiSquareResult {
  double statistic = 0.0;
  unsigned dof = 0;
  double p_value = 1.0;
};

/// Pearson goodness of fit. Cells with zero expected probability are dropped
/// from the degrees of freedom; any count landing in one gives p = 0.
ChiSquareResult chi_square(std::span<const std::uint64_t> observed,
                           std::span<const double> expected_probs);

struct ChiSquareReport {
  ChiSquareResult result;
  std::uint64_t count = 0;
  double significance = 0.001;
  std::vector<std::uint64_t> observed;  // observed[i] counts outcome i + 1
  bool passed = false;
};

/// Minimum draws per outcome accepted by run_chisq.
inline constexpr std::uint64_t kMinCountPerCell = 50;

/// Draws `count` samples from a seeded source and tests them against the exact
/// probabilities. Throws RangeError if count < 50 * K.
ChiSquareReport run_chisq(const Target& target, std::uint64_t count, std::uint64_t seed,
                          double significance = 0.001);

struct BenchRow {
  std::uint64_t n = 0;
  std::uint64_t count = 0;
  double recycler_flips_per_roll = 0.0;
  double recycler_flip_stddev = 0.0;  // per-roll standard deviation
  double naive_flips_per_roll = 0.0;
  double recycler_rolls_per_sec = 0.0;
  double naive_rolls_per_sec = 0.0;
  std::optional<Rational> exact_expected;  // omitted for very large n
};

/// Times `count` recycler rolls and `count` naive-rejection rolls of an
/// n-sided die, each on its own source seeded with `seed`.
BenchRow run_bench(std::uint64_t n, std::uint64_t count, std::uint64_t seed);

}  // namespace kyroll
