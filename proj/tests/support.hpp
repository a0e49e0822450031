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
#include "kyroll/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace kyroll::testing {

/// Random distribution over `k` outcomes whose entries are multiples of
/// 2^-log2_den (zeros allowed).
inline ProbabilityVector random_dyadic(std::mt19937_64& rng, std::size_t k, unsigned log2_den) {
  const std::uint64_t total = std::uint64_t{1} << log2_den;
  std::uniform_int_distribution<std::uint64_t> cut(0, total);
  std::vector<std::uint64_t> cuts{0, total};
  for (std::size_t i = 1; i < k; ++i) cuts.push_back(cut(rng));
  std::sort(cuts.begin(), cuts.end());
  std::vector<Rational> probs;
  for (std::size_t i = 0; i < k; ++i) {
    Rational q(BigInt(static_cast<unsigned long>(cuts[i + 1] - cuts[i])),
               BigInt(static_cast<unsigned long>(total)));
    q.canonicalize();
    probs.push_back(q);
  }
  return ProbabilityVector(std::move(probs));
}

/// Numerator of p over 2^log2_den (p must be such a dyadic).
inline std::uint64_t dyadic_numerator(const Rational& p, unsigned log2_den) {
  BigInt num = p.get_num();
  num <<= log2_den;
  return BigInt(num / p.get_den()).get_ui();
}

inline Rational frac(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string random_bits(std::mt19937_64& rng, std::size_t len) {
  std::string s;
  for (std::size_t i = 0; i < len; ++i) s.push_back((rng() & 1) ? '1' : '0');
  return s;
}

}  // namespace kyroll::testing
