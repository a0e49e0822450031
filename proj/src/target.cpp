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

#include "kyroll/target.hpp"

#include "kyroll/error.hpp"

namespace kyroll {

Target Target::die(std::uint64_t n) {
  UniformRecycler validate(n);
  Target t;
  t.sides_ = n;
  return t;
}

Target Target::distribution(ProbabilityVector p) {
  Target t;
  t.sides_ = p.size();
  t.sampler_ = std::make_shared<const DiscreteSampler>(std::move(p));
  return t;
}

std::size_t Target::outcome_count() const { return static_cast<std::size_t>(sides_); }

ProbabilityVector Target::probabilities() const {
  return is_die() ? ProbabilityVector::uniform(sides_) : sampler_->distribution();
}

std::variant<TracedRoll, Exhausted> Target::try_draw(BitSource& source, TraceMode mode) const {
  return is_die() ? try_roll(sides_, source, mode) : try_sample(*sampler_, source, mode);
}

TracedRoll Target::draw(BitSource& source, TraceMode mode) const {
  return is_die() ? roll(sides_, source, mode) : sample(*sampler_, source, mode);
}

std::string Target::describe() const {
  return is_die() ? "die " + std::to_string(sides_)
                  : "distribution (" + sampler_->distribution().to_string() + ")";
}

namespace {

std::variant<UniformRecycler, DiscreteRecycler> make_machine(const Target& target) {
  if (target.is_die()) return UniformRecycler(target.sides());
  return DiscreteRecycler(target.sampler());
}

}  // namespace

AnyRecycler::AnyRecycler(const Target& target) : machine_(make_machine(target)) {}

bool AnyRecycler::finished() const noexcept {
  return std::visit([](const auto& m) { return m.finished(); }, machine_);
}

RecyclerState AnyRecycler::state() const noexcept {
  return std::visit([](const auto& m) { return m.state(); }, machine_);
}

TraceStep AnyRecycler::step(Bit b) {
  return std::visit([b](auto& m) { return m.step(b); }, machine_);
}

std::uint64_t AnyRecycler::outcome() const noexcept {
  return std::visit([](const auto& m) { return m.outcome(); }, machine_);
}

}  // namespace kyroll
