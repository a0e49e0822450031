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

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace kyroll {

/// A single fair coin flip.
enum class Bit : std::uint8_t { Zero = 0, One = 1 };

constexpr std::uint64_t to_int(Bit b) noexcept { return static_cast<std::uint64_t>(b); }

/// Supplier of fair bits that counts exactly how many bits it has delivered.
///
/// A source is single-owner: callers must not invoke next() concurrently on one
/// instance. Exhaustion (only possible for finite sources) is reported as an
/// empty optional and is not counted as a flip.
class BitSource {
 public:
  virtual ~BitSource() = default;

  std::optional<Bit> next() {
    auto b = draw();
    if (b) ++flips_;
    return b;
  }

  std::uint64_t flips_consumed() const noexcept { return flips_; }

 protected:
  virtual std::optional<Bit> draw() = 0;

 private:
  std::uint64_t flips_ = 0;
};

/// Replays a fixed, finite bit sequence in order. Never wraps around.
class ReplaySource final : public BitSource {
 public:
  ReplaySource() = default;
  explicit ReplaySource(std::vector<Bit> bits) : bits_(std::move(bits)) {}
  explicit ReplaySource(std::span<const int> bits);

  /// Parses a string of '0'/'1' characters. Throws ParseError on anything else.
  static ReplaySource from_string(std::string_view history);

  std::size_t cursor() const noexcept { return cursor_; }
  std::size_t size() const noexcept { return bits_.size(); }
  bool exhausted() const noexcept { return cursor_ == bits_.size(); }

 protected:
  std::optional<Bit> draw() override;

 private:
  std::vector<Bit> bits_;
  std::size_t cursor_ = 0;
};

/// Seeded pseudorandom bits.
///
/// Generator: std::mt19937_64 constructed with the 64-bit seed (the standard
/// fixes its output sequence exactly). Each 64-bit output word is consumed
/// least-significant bit first.
class SeededSource final : public BitSource {
 public:
  explicit SeededSource(std::uint64_t seed) : engine_(seed) {}

 protected:
  std::optional<Bit> draw() override;

 private:
  std::mt19937_64 engine_;
  std::uint64_t word_ = 0;
  unsigned remaining_ = 0;
};

SeededSource make_seeded(std::uint64_t seed);

}  // namespace kyroll
