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
#include "kyroll/oracle.hpp"
#include "kyroll/uniform.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <tuple>

#include <map>
#include <random>

using namespace kyroll;
using kyroll::testing::frac;

namespace {

std::size_t leaves_at(const oracle::EnumerationResult& r, std::size_t depth) {
  std::size_t c = 0;
  for (const auto& [h, o] : r.leaf_histories) c += h.size() == depth;
  return c;
}

void check_conservation(const oracle::EnumerationResult& r) {
  Rational total = r.live_mass;
  for (const auto& [o, m] : r.outcome_mass) total += m;
  CHECK(total == 1);
  for (const auto& [j, m] : r.flip_mass) {
    CHECK(m == dyadic(j) * static_cast<unsigned long>(leaves_at(r, j)));
  }
}

}  // namespace

TEST_CASE("d5 enumeration to depth 4") {
  const auto r = oracle::enumerate(Target::die(5), 4);
  CHECK(r.leaf_histories.at("000") == 1);
  CHECK(r.leaf_histories.at("001") == 5);
  CHECK(leaves_at(r, 3) == 5);
  CHECK(leaves_at(r, 4) == 5);
  CHECK(r.live_mass == frac(1, 16));
  CHECK(r.live_histories == std::vector<std::string>{"1111"});
  CHECK(r.flip_mass.at(3) == frac(5, 8));
  CHECK(r.flip_mass.at(4) == frac(5, 16));
  check_conservation(r);
}

TEST_CASE("d2 enumeration to depth 1") {
  const auto r = oracle::enumerate(Target::die(2), 1);
  CHECK(r.outcome_mass.at(1) == frac(1, 2));
  CHECK(r.outcome_mass.at(2) == frac(1, 2));
  CHECK(r.live_mass == 0);
}

TEST_CASE("d5 enumeration to depth 8 splits terminated mass evenly") {
  const auto r = oracle::enumerate(Target::die(5), 8);
  REQUIRE(r.outcome_mass.size() == 5);
  for (const auto& [o, m] : r.outcome_mass) CHECK(m == frac(51, 256));
  CHECK(r.live_mass == frac(1, 256));
  check_conservation(r);
}

TEST_CASE("d5 state tree") {
  const auto t = oracle::state_tree(Target::die(5), 4);
  CHECK(t.at("").state == RecyclerState{1, 1});
  CHECK(t.at("0").state == RecyclerState{1, 2});
  CHECK(t.at("11").state == RecyclerState{4, 4});
  CHECK(t.at("111").doubled == RecyclerState{8, 8});
  CHECK(t.at("111").state == RecyclerState{3, 3});
  CHECK(t.at("110").doubled == RecyclerState{4, 8});
  CHECK(t.at("110").state == RecyclerState{4, 5});
  CHECK(t.at("110").outcome == 4u);
  CHECK(t.at("1111").state == RecyclerState{1, 1});
  CHECK_FALSE(t.count("0000"));  // "000" is a leaf
}

TEST_CASE("one-sided die state tree is a single leaf") {
  const auto t = oracle::state_tree(Target::die(1), 3);
  REQUIRE(t.size() == 1);
  CHECK(t.at("").state == RecyclerState{1, 1});
  CHECK(t.at("").outcome == 1u);
  const auto r = oracle::enumerate(Target::die(1), 3);
  CHECK(r.leaf_histories.at("") == 1);
  CHECK(r.flip_mass.at(0) == 1);
}

TEST_CASE("uniformity and residual bound for small dice") {
  constexpr unsigned kDepth = 16;
  for (std::uint64_t n = 1; n <= 8; ++n) {
    const auto r = oracle::enumerate(Target::die(n), kDepth);
    REQUIRE(r.outcome_mass.size() == n);
    const Rational first = r.outcome_mass.begin()->second;
    for (const auto& [o, m] : r.outcome_mass) CHECK(m == first);
    CHECK(r.live_mass < dyadic(kDepth - ceil_log2(n) - 1));
    check_conservation(r);
  }
}

TEST_CASE("live mass decays geometrically") {
  for (std::uint64_t n : {3u, 5u, 6u, 7u, 11u}) {
    const unsigned stride = ceil_log2(2 * n);
    const unsigned base = 6;
    const Rational r0 = oracle::enumerate(Target::die(n), base).live_mass;
    Rational prev = r0;
    Rational factor = 1;
    const Rational keep(BigInt(static_cast<unsigned long>(2 * n - 1)),
                        BigInt(static_cast<unsigned long>(2 * n)));
    for (unsigned k = 1; k <= 4; ++k) {
      factor *= keep;
      const Rational rk = oracle::enumerate(Target::die(n), base + k * stride).live_mass;
      CHECK(rk <= prev);
      CHECK(rk <= r0 * factor);
      prev = rk;
    }
  }
}

TEST_CASE("X is uniform within every m-group at every depth") {
  for (std::uint64_t n : {2u, 3u, 5u, 7u, 12u}) {
    const auto tree = oracle::state_tree(Target::die(n), 12);
    // (depth, stage, m) -> X -> mass
    std::map<std::tuple<std::size_t, int, std::uint64_t>, std::map<std::uint64_t, Rational>> groups;
    for (const auto& [h, snap] : tree) {
      const Rational mass = oracle::history_mass(h);
      groups[{h.size(), 0, snap.doubled.m}][snap.doubled.x] += mass;
      groups[{h.size(), 1, snap.state.m}][snap.state.x] += mass;
    }
    for (const auto& [key, by_x] : groups) {
      const auto m = std::get<2>(key);
      REQUIRE(by_x.size() == m);
      for (const auto& [x, mass] : by_x) {
        CHECK(x >= 1);
        CHECK(x <= m);
        CHECK(mass == by_x.begin()->second);
      }
    }
  }
}

TEST_CASE("dyadic distributions reproduce p exactly and terminate") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const unsigned log2_den = 1 + rng() % 8;
    const auto p = testing::random_dyadic(rng, 1 + rng() % 6, log2_den);
    const auto r = oracle::enumerate(Target::distribution(p), log2_den + 1);
    CHECK(r.live_mass == 0);
    CHECK(r.live_histories.empty());
    for (std::size_t i = 1; i <= p.size(); ++i) {
      const auto it = r.outcome_mass.find(i);
      CHECK((it == r.outcome_mass.end() ? Rational(0) : it->second) == p[i]);
    }
    for (const auto& [h, o] : r.leaf_histories) CHECK(h.size() <= log2_den);
    check_conservation(r);
  }
}

TEST_CASE("(3/8, 1/2, 1/8) exhaustive to depth 6") {
  const ProbabilityVector p({frac(3, 8), frac(1, 2), frac(1, 8)});
  const auto r = oracle::enumerate(Target::distribution(p), 6);
  CHECK(r.outcome_mass.at(1) == frac(3, 8));
  CHECK(r.outcome_mass.at(2) == frac(1, 2));
  CHECK(r.outcome_mass.at(3) == frac(1, 8));
  CHECK(r.flip_mass.at(1) == frac(1, 2));
  CHECK(r.flip_mass.at(2) == frac(1, 4));
  CHECK(r.flip_mass.at(3) == frac(1, 4));
  CHECK(r.flip_mass.size() == 3);
}

TEST_CASE("(1/3, 2/3) exhaustive to depth 20") {
  const ProbabilityVector p({frac(1, 3), frac(2, 3)});
  const auto r = oracle::enumerate(Target::distribution(p), 20);
  Rational err1 = frac(1, 3) - r.outcome_mass.at(1);
  Rational err2 = frac(2, 3) - r.outcome_mass.at(2);
  CHECK(err1 >= 0);
  CHECK(err2 >= 0);
  CHECK(err1 < dyadic(18));
  CHECK(err2 < dyadic(18));
  for (unsigned j = 1; j <= 20; ++j) CHECK(leaves_at(r, j) == acceptance_set(p, j).size());
}

TEST_CASE("live mass equals the residual probability at every level") {
  std::mt19937_64 rng(32);
  std::vector<ProbabilityVector> cases{ProbabilityVector({frac(1, 3), frac(2, 3)}),
                                       ProbabilityVector({frac(1, 7), frac(2, 7), frac(4, 7)}),
                                       ProbabilityVector({frac(1, 6), frac(1, 10), frac(11, 15)})};
  for (int i = 0; i < 5; ++i) cases.push_back(testing::random_dyadic(rng, 4, 9));
  for (const auto& p : cases) {
    for (unsigned j = 1; j <= 10; ++j) {
      Rational residual = 0;
      for (const auto& q : p.values()) {
        Rational taken = 0;
        for (unsigned l = 1; l <= j; ++l) {
          if (binary_digit(q, l)) taken += dyadic(l);
        }
        residual += q - taken;
      }
      const auto r = oracle::enumerate(Target::distribution(p), j);
      CHECK(r.live_mass == residual);
      // live nodes at depth j divided by 2^j
      CHECK(r.live_mass ==
            dyadic(j) * static_cast<unsigned long>(r.live_histories.size()));
    }
  }
}

TEST_CASE("oracle leaf histories match the algorithm tree node for node") {
  std::vector<Target> targets{Target::die(5), Target::die(6), Target::die(12),
                              Target::distribution(ProbabilityVector({frac(1, 3), frac(2, 3)})),
                              Target::distribution(ProbabilityVector(
                                  {frac(3, 8), frac(1, 2), frac(1, 8)}))};
  for (const auto& t : targets) {
    const auto r = oracle::enumerate(t, 10);
    const auto tree = build_from_algorithm(t, 10);
    std::size_t leaves = 0;
    for (const auto& [h, node] : tree.nodes()) {
      if (node.kind == NodeKind::Leaf) {
        ++leaves;
        CHECK(r.leaf_histories.at(h) == node.outcome);
      }
      if (node.kind == NodeKind::Pending) {
        CHECK(std::find(r.live_histories.begin(), r.live_histories.end(), h) !=
              r.live_histories.end());
      }
    }
    CHECK(leaves == r.leaf_histories.size());
    CHECK(tree.pending_count() == r.live_histories.size());
  }
}
