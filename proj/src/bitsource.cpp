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

#include "kyroll/bitsource.hpp"

#include "kyroll/error.hpp"

namespace kyroll {

ReplaySource::ReplaySource(std::span<const int> bits) {
  bits_.reserve(bits.size());
  for (int b : bits) {
    if (b != 0 && b != 1) throw ParseError("replay bits must be 0 or 1");
    bits_.push_back(b ? Bit::One : Bit::Zero);
  }
}

ReplaySource ReplaySource::from_string(std::string_view history) {
  std::vector<Bit> bits;
  bits.reserve(history.size());
  for (char c : history) {
    if (c == '0') bits.push_back(Bit::Zero);
    else if (c == '1') bits.push_back(Bit::One);
    else throw ParseError("bit history may only contain '0' and '1'");
  }
  return ReplaySource(std::move(bits));
}

std::optional<Bit> ReplaySource::draw() {
  if (cursor_ == bits_.size()) return std::nullopt;
  return bits_[cursor_++];
}

std::optional<Bit> SeededSource::draw() {
  if (remaining_ == 0) {
    word_ = engine_();
    remaining_ = 64;
  }
  const Bit b = (word_ & 1u) ? Bit::One : Bit::Zero;
  word_ >>= 1;
  --remaining_;
  return b;
}

SeededSource make_seeded(std::uint64_t seed) { return SeededSource(seed); }

}  // namespace kyroll
