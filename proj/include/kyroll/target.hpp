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
#include "kyroll/uniform.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <variant>

namespace kyroll {

/// Which sampler to run: a fair n-sided die or a general distribution.
class Target {
 public:
  static Target die(std::uint64_t n);
  static Target distribution(ProbabilityVector p);

  bool is_die() const noexcept { return sampler_ == nullptr; }
  /// Die size; only meaningful when is_die().
  std::uint64_t sides() const noexcept { return sides_; }
  /// Only valid when !is_die().
  const DiscreteSampler& sampler() const { return *sampler_; }

  std::size_t outcome_count() const;
  /// Exact outcome probabilities (materialized 1/n vector for a die).
  ProbabilityVector probabilities() const;

  std::variant<TracedRoll, Exhausted> try_draw(BitSource& source,
                                               TraceMode mode = TraceMode::Off) const;
  /// Throws SourceExhausted.
  TracedRoll draw(BitSource& source, TraceMode mode = TraceMode::Off) const;

  std::string describe() const;

 private:
  Target() = default;
  std::uint64_t sides_ = 0;
  std::shared_ptr<const DiscreteSampler> sampler_;
};

/// Step-wise machine for either kind of target, for callers that branch on
/// each bit (tree builders). Copyable, so a walker can fork it per child.
class AnyRecycler {
 public:
  explicit AnyRecycler(const Target& target);

  bool finished() const noexcept;
  RecyclerState state() const noexcept;
  TraceStep step(Bit b);
  std::uint64_t outcome() const noexcept;

 private:
  std::variant<UniformRecycler, DiscreteRecycler> machine_;
};

}  // namespace kyroll
