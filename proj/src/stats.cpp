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

#include "kyroll/stats.hpp"

#include "kyroll/analysis.hpp"
#include "kyroll/error.hpp"
#include "kyroll/uniform.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <chrono>
#include <cmath>
#include <limits>

namespace kyroll {

ChiSquareResult chi_square(std::span<const std::uint64_t> observed,
                           std::span<const double> expected_probs) {
  if (observed.size() != expected_probs.size()) {
    throw RangeError("observed and expected cell counts differ");
  }
  std::uint64_t total = 0;
  for (auto c : observed) total += c;

  ChiSquareResult r;
  unsigned cells = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double expected = expected_probs[i] * static_cast<double>(total);
    if (expected_probs[i] <= 0.0) {
      if (observed[i] != 0) {
        r.statistic = std::numeric_limits<double>::infinity();
        r.p_value = 0.0;
        return r;
      }
      continue;
    }
    ++cells;
    const double diff = static_cast<double>(observed[i]) - expected;
    r.statistic += diff * diff / expected;
  }
  r.dof = cells > 0 ? cells - 1 : 0;
  r.p_value = r.dof == 0 ? 1.0 : boost::math::gamma_q(r.dof / 2.0, r.statistic / 2.0);
  return r;
}

ChiSquareReport run_chisq(const Target& target, std::uint64_t count, std::uint64_t seed,
                          double significance) {
  const std::size_t k = target.outcome_count();
  if (count < kMinCountPerCell * k) {
    throw RangeError("chi-square needs at least " + std::to_string(kMinCountPerCell * k) +
                     " samples for " + std::to_string(k) + " outcomes");
  }
  ChiSquareReport report;
  report.count = count;
  report.significance = significance;
  report.observed.assign(k, 0);

  SeededSource source(seed);
  for (std::uint64_t i = 0; i < count; ++i) ++report.observed[target.draw(source).outcome - 1];

  std::vector<double> probs;
  probs.reserve(k);
  const ProbabilityVector p = target.probabilities();
  for (const auto& q : p.values()) probs.push_back(to_double(q));
  report.result = chi_square(report.observed, probs);
  report.passed = report.result.p_value > significance;
  return report;
}

BenchRow run_bench(std::uint64_t n, std::uint64_t count, std::uint64_t seed) {
  using Clock = std::chrono::steady_clock;
  constexpr std::uint64_t kExactLimit = std::uint64_t{1} << 20;
  if (count == 0) throw RangeError("bench needs count >= 1");

  BenchRow row;
  row.n = n;
  row.count = count;

  {
    SeededSource source(seed);
    double sum = 0.0;
    double sum_sq = 0.0;
    const auto start = Clock::now();
    for (std::uint64_t i = 0; i < count; ++i) {
      const TracedRoll r = roll(n, source);
      const auto f = static_cast<double>(r.flips);
      sum += f;
      sum_sq += f * f;
    }
    const std::chrono::duration<double> secs = Clock::now() - start;
    const double c = static_cast<double>(count);
    row.recycler_flips_per_roll = sum / c;
    row.recycler_flip_stddev = std::sqrt(std::max(0.0, sum_sq / c - (sum / c) * (sum / c)));
    row.recycler_rolls_per_sec = secs.count() > 0 ? c / secs.count() : 0.0;
  }
  {
    SeededSource source(seed);
    std::uint64_t flips = 0;
    const auto start = Clock::now();
    for (std::uint64_t i = 0; i < count; ++i) {
      const TracedRoll r = naive_rejection_roll(n, source);
      flips += r.flips;
    }
    const std::chrono::duration<double> secs = Clock::now() - start;
    const double c = static_cast<double>(count);
    row.naive_flips_per_roll = static_cast<double>(flips) / c;
    row.naive_rolls_per_sec = secs.count() > 0 ? c / secs.count() : 0.0;
  }
  if (n <= kExactLimit) row.exact_expected = exact_expected_flips(n);
  return row;
}

}  // namespace kyroll
