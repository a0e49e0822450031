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

#include <map>

namespace kyroll {

/// Exact law of N, the number of flips consumed, materialized to `depth`.
///
/// Mass not yet terminated at `depth` is kept as `residual`; the masses plus
/// the residual always sum to exactly 1.
class FlipDistribution {
 public:
  FlipDistribution() : residual_(1) {}
  FlipDistribution(std::map<unsigned, Rational> mass, Rational residual, unsigned depth);

  unsigned depth() const noexcept { return depth_; }
  const std::map<unsigned, Rational>& masses() const noexcept { return mass_; }
  const Rational& residual() const noexcept { return residual_; }

  /// P(N = j); zero for levels never reached.
  Rational mass(unsigned j) const;
  /// P(N > i). For i >= depth this is the residual (a lower bound once truncated).
  Rational tail(unsigned i) const;
  /// Sum of j * P(N = j) over materialized levels.
  Rational truncated_expectation() const;

  friend bool operator==(const FlipDistribution&, const FlipDistribution&) = default;

 private:
  std::map<unsigned, Rational> mass_;  // only nonzero entries
  Rational residual_;
  unsigned depth_ = 0;
};

/// True iff P(N_a > i) <= P(N_b > i) at every level i up to the deeper of the two.
bool dominates(const FlipDistribution& a, const FlipDistribution& b);

}  // namespace kyroll
