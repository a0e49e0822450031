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

#include "kyroll/discrete.hpp"

#include "kyroll/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <regex>
#include <string>

namespace kyroll {

namespace {

constexpr unsigned kMaxCachedLevels = 4096;
constexpr unsigned kOnDemandCache = 64;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

BigInt parse_integer(std::string_view token, const char* what) {
  static const std::regex integer(R"([+-]?[0-9]+)");
  const std::string t(trim(token));
  if (!std::regex_match(t, integer)) {
    throw ParseError(std::string("invalid ") + what + " '" + t + "'");
  }
  return BigInt(t[0] == '+' ? t.substr(1) : t, 10);
}

Rational make_fraction(const BigInt& num, const BigInt& den) {
  if (den == 0) throw ParseError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_fraction(std::string_view token) {
  token = trim(token);
  if (token.empty()) throw ParseError("empty probability entry");
  if (token.find_first_of(".eE") != std::string_view::npos) {
    throw ParseError("decimal probability '" + std::string(token) +
                     "' rejected; give exact fractions such as 3/8,1/2,1/8");
  }
  const auto slash = token.find('/');
  if (slash == std::string_view::npos) return make_fraction(parse_integer(token, "integer"), 1);
  return make_fraction(parse_integer(token.substr(0, slash), "numerator"),
                       parse_integer(token.substr(slash + 1), "denominator"));
}

BigInt json_integer(const nlohmann::json& v, const char* what) {
  if (v.is_number_unsigned()) return BigInt(v.get<unsigned long>());
  if (v.is_number_integer()) return BigInt(v.get<long>());
  if (v.is_string()) return parse_integer(v.get<std::string>(), what);
  throw ParseError(std::string("JSON ") + what + " must be an integer or integer string");
}

}  // namespace

ProbabilityVector::ProbabilityVector(std::vector<Rational> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw InvalidDistribution("probability vector is empty");
  Rational total = 0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    probs_[i].canonicalize();
    if (probs_[i] < 0) {
      throw InvalidDistribution("probability of outcome " + std::to_string(i + 1) +
                                " is negative");
    }
    total += probs_[i];
  }
  if (total != 1) {
    throw InvalidDistribution("probabilities sum to " + total.get_str() + ", not 1");
  }
}

ProbabilityVector ProbabilityVector::uniform(std::uint64_t n) {
  if (n == 0) throw InvalidDistribution("uniform distribution needs n >= 1");
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
  return ProbabilityVector(
      std::vector<Rational>(n, Rational(BigInt(1), BigInt(static_cast<unsigned long>(n)))));
}

ProbabilityVector ProbabilityVector::parse_fractions(std::string_view text) {
  std::vector<Rational> probs;
  std::size_t start = 0;
  for (;;) {
    const auto comma = text.find(',', start);
    probs.push_back(parse_fraction(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return ProbabilityVector(std::move(probs));
}

ProbabilityVector ProbabilityVector::parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_array()) throw ParseError("JSON distribution must be an array");
  std::vector<Rational> probs;
  for (const auto& entry : doc) {
    if (!entry.is_object() || !entry.contains("num") || !entry.contains("den")) {
      throw ParseError(R"(each JSON entry needs "num" and "den")");
    }
    probs.push_back(make_fraction(json_integer(entry["num"], "numerator"),
                                  json_integer(entry["den"], "denominator")));
  }
  return ProbabilityVector(std::move(probs));
}

ProbabilityVector ProbabilityVector::parse(std::string_view text) {
  const auto body = trim(text);
  if (!body.empty() && body.front() == '[') return parse_json(body);
  return parse_fractions(body);
}

std::optional<std::size_t> ProbabilityVector::certain_outcome() const {
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    if (probs_[i] == 1) return i + 1;
  }
  return std::nullopt;
}

std::string ProbabilityVector::to_string() const {
  std::string out;
  for (const auto& q : probs_) {
    if (!out.empty()) out += ',';
    out += q.get_str();
  }
  return out;
}

int binary_digit(const Rational& p, unsigned level) {
  BigInt scaled = p.get_num();
  scaled <<= level;
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), p.get_den().get_mpz_t());
  if (level == 0) return static_cast<int>(q.get_si());
  return mpz_odd_p(q.get_mpz_t()) ? 1 : 0;
}

std::vector<std::size_t> acceptance_set(const ProbabilityVector& p, unsigned level) {
  std::vector<std::size_t> set;
  for (std::size_t i = 1; i <= p.size(); ++i) {
    if (binary_digit(p[i], level) == 1) set.push_back(i);
  }
  return set;
}

LevelState level_state(const ProbabilityVector& p, unsigned level) {
  LevelState s{level, {}};
  s.residual_probs.reserve(p.size());
  for (const auto& q : p.values()) {
    BigInt num = q.get_num();
    num <<= level;
    BigInt rem;
    mpz_fdiv_r(rem.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
    Rational r(rem, q.get_den());
    r.canonicalize();
    s.residual_probs.push_back(std::move(r));
  }
  return s;
}

DiscreteSampler::DiscreteSampler(ProbabilityVector p) : p_(std::move(p)) {
  BigInt common = 1;
  for (const auto& q : p_.values()) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), q.get_den().get_mpz_t());
  const auto twos = static_cast<unsigned long>(mpz_scan1(common.get_mpz_t(), 0));
  BigInt odd = common >> twos;

  // Digits past the 2-adic preperiod repeat with the order of 2 mod the odd part.
  unsigned long period = 0;
  if (twos < kMaxCachedLevels) {
    if (odd == 1) {
      period = 1;
    } else {
      BigInt x = 2 % odd;
      period = 1;
      while (x != 1 && twos + period < kMaxCachedLevels) {
        x = (x * 2) % odd;
        ++period;
      }
      if (x != 1) period = 0;
    }
  }

  unsigned cache = kOnDemandCache;
  if (period != 0) {
    preperiod_ = static_cast<unsigned>(twos);
    period_ = static_cast<unsigned>(period);
    cache = preperiod_ + period_;
  }
  levels_.reserve(cache);
  for (unsigned j = 1; j <= cache; ++j) levels_.push_back(acceptance_set(p_, j));
}

const std::vector<std::size_t>* DiscreteSampler::cached(unsigned level) const noexcept {
  if (level == 0) return nullptr;
  if (level <= levels_.size()) return &levels_[level - 1];
  if (period_ == 0) return nullptr;
  const unsigned folded = preperiod_ + (level - preperiod_ - 1) % period_ + 1;
  return &levels_[folded - 1];
}

std::vector<std::size_t> DiscreteSampler::level_set(unsigned level) const {
  if (const auto* hit = cached(level)) return *hit;
  return acceptance_set(p_, level);
}

DiscreteRecycler::DiscreteRecycler(const DiscreteSampler& sampler) : sampler_(&sampler) {
  if (const auto certain = sampler.distribution().certain_outcome()) outcome_ = *certain;
}

TraceStep DiscreteRecycler::step(Bit b) {
  const unsigned level = static_cast<unsigned>(flips_ + 1);
  std::vector<std::size_t> computed;
  const auto* set = sampler_->cached(level);
  if (set == nullptr) {
    computed = acceptance_set(sampler_->distribution(), level);
    set = &computed;
  }
  const std::uint64_t n = set->size();

  TraceStep t;
  t.threshold = n;
  state_.x += to_int(b) * state_.m;
  state_.m *= 2;
  t.doubled = state_;
  if (state_.m >= n) {
    if (state_.x <= n) {
      state_.m = n;
      outcome_ = (*set)[state_.x - 1];
      t.accepted = true;
    } else {
      state_.x -= n;
      state_.m -= n;
    }
  }
  t.resolved = state_;
  ++flips_;
  return t;
}

SampleAttempt try_sample(const DiscreteSampler& sampler, BitSource& source, TraceMode mode) {
  DiscreteRecycler machine(sampler);
  std::vector<TraceStep> trace;
  while (!machine.finished()) {
    const auto b = source.next();
    if (!b) return Exhausted{machine.state(), machine.flips(), std::move(trace)};
    const TraceStep t = machine.step(*b);
    if (mode == TraceMode::On) trace.push_back(t);
  }
  return TracedRoll{machine.outcome(), machine.flips(), std::move(trace)};
}

TracedRoll sample(const DiscreteSampler& sampler, BitSource& source, TraceMode mode) {
  auto attempt = try_sample(sampler, source, mode);
  if (auto* done = std::get_if<TracedRoll>(&attempt)) return std::move(*done);
  throw SourceExhausted("bit source exhausted after " +
                        std::to_string(std::get<Exhausted>(attempt).flips) + " flips");
}

TracedRoll sample(const ProbabilityVector& p, BitSource& source, TraceMode mode) {
  return sample(DiscreteSampler(p), source, mode);
}

}  // namespace kyroll
