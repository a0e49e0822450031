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

#include "kyroll/rational.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

namespace kyroll {

Rational dyadic(unsigned k) {
  BigInt den = 1;
  den <<= k;
  return Rational(BigInt(1), den);
}

std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rational& q) {
  if (q == 0) return 0.0;
  mpf_class f(0, 256);
  f = q;
  mp_exp_t exp = 0;
  char* digits = mpf_get_str(nullptr, &exp, 10, 40, f.get_mpf_t());
  std::string s(digits);
  void (*free_fn)(void*, std::size_t) = nullptr;
  mp_get_memory_functions(nullptr, nullptr, &free_fn);
  free_fn(digits, std::strlen(digits) + 1);
  const bool negative = !s.empty() && s[0] == '-';
  if (negative) s.erase(0, 1);
  s = (negative ? "-0." : "0.") + s + "e" + std::to_string(exp);
  return std::strtod(s.c_str(), nullptr);
}

std::string to_decimal_string(const Rational& q, int significant) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant, to_double(q));
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

Rational from_u64(std::uint64_t v) {
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
  return Rational(BigInt(static_cast<unsigned long>(v)));
}

}  // namespace kyroll
