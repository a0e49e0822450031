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

#include "kyroll/uniform.hpp"

#include "kyroll/error.hpp"

#include <bit>
#include <string>

namespace kyroll {

unsigned ceil_log2(std::uint64_t n) noexcept {
  return n <= 1 ? 0u : static_cast<unsigned>(std::bit_width(n - 1));
}

UniformRecycler::UniformRecycler(std::uint64_t n) : n_(n) {
  if (n == 0) throw RangeError("die must have at least one side");
  if (n > kMaxDieSides) {
    throw RangeError("die size " + std::to_string(n) + " exceeds 2^63");
  }
}

TraceStep UniformRecycler::step(Bit b) noexcept {
  TraceStep t;
  t.threshold = n_;
  state_.x += to_int(b) * state_.m;
  state_.m *= 2;
  t.doubled = state_;
  if (state_.m >= n_) {
    if (state_.x <= n_) {
      state_.m = n_;
      t.accepted = true;
    } else {
      state_.x -= n_;
      state_.m -= n_;
    }
  }
  t.resolved = state_;
  ++flips_;
  return t;
}

RollAttempt try_roll(std::uint64_t n, BitSource& source, TraceMode mode) {
  UniformRecycler die(n);
  std::vector<TraceStep> trace;
  while (!die.finished()) {
    const auto b = source.next();
    if (!b) return Exhausted{die.state(), die.flips(), std::move(trace)};
    const TraceStep t = die.step(*b);
    if (mode == TraceMode::On) trace.push_back(t);
  }
  return TracedRoll{die.outcome(), die.flips(), std::move(trace)};
}

TracedRoll roll(std::uint64_t n, BitSource& source, TraceMode mode) {
  auto attempt = try_roll(n, source, mode);
  if (auto* done = std::get_if<TracedRoll>(&attempt)) return std::move(*done);
  throw SourceExhausted("bit source exhausted after " +
                        std::to_string(std::get<Exhausted>(attempt).flips) + " flips");
}

std::vector<TracedRoll> roll_many(std::uint64_t n, std::uint64_t count, BitSource& source,
                                  TraceMode mode) {
  std::vector<TracedRoll> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(roll(n, source, mode));
  return out;
}

TracedRoll naive_rejection_roll(std::uint64_t n, BitSource& source) {
  if (n == 0 || n > kMaxDieSides) throw RangeError("die size out of range");
  const unsigned width = ceil_log2(n);
  std::uint64_t flips = 0;
  for (;;) {
    std::uint64_t v = 0;
    for (unsigned i = 0; i < width; ++i) {
      const auto b = source.next();
      if (!b) throw SourceExhausted("bit source exhausted during naive rejection");
      v = (v << 1) | to_int(*b);
      ++flips;
    }
    if (v < n) return TracedRoll{v + 1, flips, {}};
  }
}

}  // namespace kyroll
