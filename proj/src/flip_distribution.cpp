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

#include "kyroll/flip_distribution.hpp"

#include "kyroll/error.hpp"

#include <algorithm>

namespace kyroll {

FlipDistribution::FlipDistribution(std::map<unsigned, Rational> mass, Rational residual,
                                   unsigned depth)
    : residual_(std::move(residual)), depth_(depth) {
  Rational total = residual_;
  if (residual_ < 0) throw Error("negative residual mass");
  for (auto& [j, q] : mass) {
    if (q < 0) throw Error("negative flip mass at level " + std::to_string(j));
    if (j > depth_) throw Error("flip mass beyond the materialized depth");
    total += q;
    if (q != 0) mass_.emplace(j, std::move(q));
  }
  if (total != 1) throw Error("flip masses sum to " + total.get_str() + ", not 1");
}

Rational FlipDistribution::mass(unsigned j) const {
  const auto it = mass_.find(j);
  return it == mass_.end() ? Rational(0) : it->second;
}

Rational FlipDistribution::tail(unsigned i) const {
  Rational t = residual_;
  for (auto it = mass_.upper_bound(i); it != mass_.end(); ++it) t += it->second;
  return t;
}

Rational FlipDistribution::truncated_expectation() const {
  Rational e = 0;
  for (const auto& [j, q] : mass_) e += q * j;
  return e;
}

bool dominates(const FlipDistribution& a, const FlipDistribution& b) {
  const unsigned top = std::max(a.depth(), b.depth());
  for (unsigned i = 0; i <= top; ++i) {
    if (a.tail(i) > b.tail(i)) return false;
  }
  return true;
}

}  // namespace kyroll
