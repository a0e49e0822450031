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

// Acceptance gate: one PASS/FAIL line per criterion, each timed against its
// runtime limit. Exits nonzero if any criterion fails.

#include "kyroll/analysis.hpp"
#include "kyroll/ddg.hpp"
#include "kyroll/oracle.hpp"
#include "kyroll/stats.hpp"
#include "kyroll/uniform.hpp"
#include "support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

using namespace kyroll;
using kyroll::testing::frac;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

struct Criterion {
  const char* id;
  const char* title;
  double limit_ms;
  std::function<Outcome()> run;
};

using State = std::pair<std::uint64_t, std::uint64_t>;
using Multiset = std::map<State, int>;

std::vector<ProbabilityVector> random_dyadics() {
  constexpr unsigned kLog2Den = 10;
  std::mt19937_64 rng(20260101);
  std::vector<ProbabilityVector> out;
  for (int i = 0; i < 50; ++i) out.push_back(testing::random_dyadic(rng, 1 + rng() % 6, kLog2Den));
  return out;
}

Outcome exact_five() {
  const Rational e = exact_expected_flips(5);
  return {e == frac(18, 5), "E[N] = " + to_fraction_string(e)};
}

Outcome bounds_sweep() {
  for (std::uint64_t n = 1; n <= 4096; ++n) {
    const Rational e = exact_expected_flips(n);
    const unsigned lo = ceil_log2(n);
    if (e < lo || e > lo + 1) return {false, "n = " + std::to_string(n) + " gives " + to_fraction_string(e)};
  }
  const auto report = verify_bounds(4096);
  return {true, "min slack " + to_decimal_string(report.min_slack) + " at n = " +
                    std::to_string(report.min_slack_n) + ", max slack " +
                    to_decimal_string(report.max_slack) + " at n = " +
                    std::to_string(report.max_slack_n)};
}

Outcome three_way_tree() {
  const ProbabilityVector p({frac(3, 8), frac(1, 2), frac(1, 8)});
  const auto tree = build_canonical(p, 3);
  const auto fd = flip_distribution(tree);
  if (fd.mass(1) != frac(1, 2) || fd.mass(2) != frac(1, 4) || fd.mass(3) != frac(1, 4) ||
      fd.masses().size() != 3 || fd.residual() != 0) {
    return {false, "canonical flip distribution differs"};
  }
  if (!check_optimal(tree, p).optimal) return {false, "canonical tree rejected"};
  const auto flat = DdgTree::from_terminals({{"000", 1}, {"001", 1}, {"010", 2}, {"011", 1},
                                             {"100", 2}, {"101", 2}, {"110", 2}, {"111", 3}});
  const auto verdict = check_optimal(flat, p);
  if (verdict.optimal) return {false, "depth-3 tree accepted"};
  return {true, "E[N] = " + to_fraction_string(fd.truncated_expectation()) + "; depth-3 tree: " +
                    verdict.detail};
}

Outcome d5_state_levels() {
  // Per-level (X, m) multisets of the d5 state tree.
  const std::vector<Multiset> expected{
      {{{1, 1}, 1}},
      {{{1, 2}, 1}, {{2, 2}, 1}},
      {{{1, 4}, 1}, {{2, 4}, 1}, {{3, 4}, 1}, {{4, 4}, 1}},
      {{{1, 3}, 1}, {{1, 5}, 1}, {{2, 3}, 1}, {{2, 5}, 1},
       {{3, 3}, 1}, {{3, 5}, 1}, {{4, 5}, 1}, {{5, 5}, 1}},
      {{{1, 1}, 1}, {{1, 5}, 1}, {{2, 5}, 1}, {{3, 5}, 1}, {{4, 5}, 1}, {{5, 5}, 1}},
      {{{1, 2}, 1}, {{2, 2}, 1}},
      {{{1, 4}, 1}, {{2, 4}, 1}, {{3, 4}, 1}, {{4, 4}, 1}},
  };
  std::vector<Multiset> got(expected.size());
  for (const auto& [h, snap] : oracle::state_tree(Target::die(5), 6)) {
    ++got.at(h.size())[{snap.state.x, snap.state.m}];
  }
  for (std::size_t d = 0; d < expected.size(); ++d) {
    if (got[d] != expected[d]) return {false, "level " + std::to_string(d) + " differs"};
  }
  return {true, "levels 0..6 match"};
}

Outcome uniformity() {
  const Rational bound = dyadic(10);
  Rational worst = 0;
  for (std::uint64_t n = 1; n <= 10; ++n) {
    const auto r = oracle::enumerate(Target::die(n), 16);
    if (r.outcome_mass.size() != n) return {false, "n = " + std::to_string(n) + " misses outcomes"};
    for (const auto& [i, mass] : r.outcome_mass) {
      if (mass != r.outcome_mass.begin()->second) {
        return {false, "n = " + std::to_string(n) + " outcome " + std::to_string(i) + " differs"};
      }
    }
    if (r.live_mass >= bound) return {false, "n = " + std::to_string(n) + " live mass too large"};
    if (r.live_mass > worst) worst = r.live_mass;
  }
  return {true, "largest live mass " + to_fraction_string(worst)};
}

Outcome m_group_uniformity() {
  std::size_t groups = 0;
  for (std::uint64_t n : {2, 3, 5, 7}) {
    // depth -> m -> X -> mass
    std::map<std::size_t, std::map<std::uint64_t, std::map<std::uint64_t, Rational>>> mass;
    for (const auto& [h, snap] : oracle::state_tree(Target::die(n), 12)) {
      mass[h.size()][snap.state.m][snap.state.x] += oracle::history_mass(h);
    }
    for (const auto& [depth, by_m] : mass) {
      for (const auto& [m, by_x] : by_m) {
        ++groups;
        if (by_x.size() != m) return {false, "n = " + std::to_string(n) + " m = " + std::to_string(m)};
        for (const auto& [x, q] : by_x) {
          if (q != by_x.begin()->second) {
            std::ostringstream os;
            os << "n = " << n << " depth " << depth << " m = " << m << " x = " << x;
            return {false, os.str()};
          }
        }
      }
    }
  }
  return {true, std::to_string(groups) + " (depth, m) groups uniform"};
}

Outcome census_matches_digits(const DdgTree& tree, const ProbabilityVector& p, std::string& why) {
  const auto c = census(tree);
  for (const auto& [key, count] : c.counts) {
    if (count > 1) {
      why = "count " + std::to_string(count) + " at level " + std::to_string(key.first);
      return {false, why};
    }
  }
  for (unsigned j = 0; j <= tree.depth(); ++j) {
    for (std::size_t i = 1; i <= p.size(); ++i) {
      if (c.count(j, i) != binary_digit(p[i], j)) {
        why = "outcome " + std::to_string(i) + " level " + std::to_string(j);
        return {false, why};
      }
    }
  }
  return {true, ""};
}

Outcome optimality_census(const std::vector<ProbabilityVector>& dyadics) {
  std::string why;
  for (std::uint64_t n = 1; n <= 64; ++n) {
    const auto tree = build_from_algorithm(Target::die(n), 2 * ceil_log2(n) + 8);
    if (!census_matches_digits(tree, ProbabilityVector::uniform(n), why).ok) {
      return {false, "die " + std::to_string(n) + ": " + why};
    }
  }
  for (std::size_t k = 0; k < dyadics.size(); ++k) {
    const auto tree = build_from_algorithm(Target::distribution(dyadics[k]), 12);
    if (!census_matches_digits(tree, dyadics[k], why).ok) {
      return {false, "distribution " + dyadics[k].to_string() + ": " + why};
    }
  }
  return {true, "64 dice and " + std::to_string(dyadics.size()) + " dyadic distributions"};
}

Outcome builder_agreement(const std::vector<ProbabilityVector>& dyadics) {
  for (const auto& p : dyadics) {
    if (census(build_canonical(p, 12)) != census(build_from_algorithm(Target::distribution(p), 12))) {
      return {false, p.to_string()};
    }
  }
  return {true, std::to_string(dyadics.size()) + " distributions agree"};
}

Outcome statistical_sanity() {
  constexpr std::uint64_t kCount = 100000;
  constexpr double kSignificance = 0.001;
  const std::vector<std::uint64_t> seeds{1, 2, 3, 4};
  std::ostringstream os;
  bool ok = true;
  for (std::uint64_t n : {2, 5, 6, 12}) {
    int passed = 0;
    for (auto seed : seeds) passed += run_chisq(Target::die(n), kCount, seed, kSignificance).passed;
    os << "n=" << n << ":" << passed << "/4 ";
    ok = ok && passed >= 3;
  }
  return {ok, os.str()};
}

Outcome efficiency() {
  const auto row = run_bench(5, 1000000, 2026);
  std::ostringstream os;
  os << "recycler " << row.recycler_flips_per_roll << ", naive " << row.naive_flips_per_roll
     << " flips/roll";
  const bool close = std::abs(row.recycler_flips_per_roll - 3.6) <= 0.01 * 3.6;
  return {close && row.recycler_flips_per_roll < row.naive_flips_per_roll, os.str()};
}

}  // namespace

int main() {
  const auto dyadics = random_dyadics();
  const std::vector<Criterion> criteria{
      {"AC1", "exact E[N] for n=5", 1.0, exact_five},
      {"AC2", "bounds sweep n=1..4096", 10000.0, bounds_sweep},
      {"AC3", "(3/8,1/2,1/8) tree and depth-3 rejection", 1.0, three_way_tree},
      {"AC4", "d5 state tree multisets to depth 6", 1000.0, d5_state_levels},
      {"AC5", "uniformity n=1..10 at depth 16", 30000.0, uniformity},
      {"AC6", "X uniform within each m-group", 30000.0, m_group_uniformity},
      {"AC7", "optimality census", 60000.0, [&] { return optimality_census(dyadics); }},
      {"AC8", "builder agreement", 60000.0, [&] { return builder_agreement(dyadics); }},
      {"AC9", "chi-square sanity", 10000.0, statistical_sanity},
      {"AC10", "bench n=5 efficiency", 30000.0, efficiency},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    Outcome result;
    const auto start = std::chrono::steady_clock::now();
    try {
      result = c.run();
    } catch (const std::exception& e) {
      result = {false, std::string("exception: ") + e.what()};
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = ms < c.limit_ms;
    const bool pass = result.ok && in_time;
    failures += !pass;
    std::printf("[%s] %s %s: %s (%.3f ms, limit %.0f ms%s)\n", pass ? "PASS" : "FAIL", c.id,
                c.title, result.detail.c_str(), ms, c.limit_ms, in_time ? "" : ", too slow");
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
