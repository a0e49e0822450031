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

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace kyroll {

/// Arbitrary-precision exact rational (GMP). Always kept in canonical form.
using Rational = mpq_class;
using BigInt = mpz_class;

/// 2^-k as an exact rational.
Rational dyadic(unsigned k);

/// "num/den", always with an explicit denominator (e.g. "3/1").
std::string to_fraction_string(const Rational& q);

/// Shortest round-trip-ish decimal rendering with at least one fractional digit ("3.6", "3.0").
std::string to_decimal_string(const Rational& q, int significant = 12);

/// Nearest double (GMP's own conversion truncates toward zero).
double to_double(const Rational& q);

Rational from_u64(std::uint64_t v);

}  // namespace kyroll
