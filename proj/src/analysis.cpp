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

#include "kyroll/analysis.hpp"

#include "kyroll/error.hpp"
#include "kyroll/uniform.hpp"

#include <cmath>
#include <string>
#include <unordered_map>
#include <vector>

namespace kyroll {

namespace {

// The chain of die sizes at the start of each doubling phase, starting from 1.
// s -> s * 2^k - n where k is the fewest doublings reaching n. The chain either
// hits 0 (n a power of two: acceptance is certain) or enters a cycle at `entry`.
struct PhaseChain {
  std::vector<std::uint64_t> sizes;
  std::vector<unsigned> doublings;
  std::size_t entry = 0;  // == sizes.size() when the chain terminates
};

// Total doublings along the chain; the exact sums grow to this many bits.
constexpr unsigned long kMaxChainFlips = 1ul << 21;

PhaseChain phase_chain(std::uint64_t n) {
  PhaseChain chain;
  unsigned long flips = 0;
  std::unordered_map<std::uint64_t, std::size_t> seen;
  std::uint64_t s = 1;
  for (;;) {
    if (s == 0) {
      chain.entry = chain.sizes.size();
      return chain;
    }
    if (const auto it = seen.find(s); it != seen.end()) {
      chain.entry = it->second;
      return chain;
    }
    seen.emplace(s, chain.sizes.size());
    unsigned k = 0;
    while ((s << k) < n) ++k;
    chain.sizes.push_back(s);
    chain.doublings.push_back(k);
    flips += k;
    if (flips > kMaxChainFlips) {
      throw RangeError("die " + std::to_string(n) + " has a recycling cycle too long for exact evaluation");
    }
    s = (s << k) - n;
  }
}

BigInt pow2(unsigned long k) {
  BigInt v = 1;
  v <<= k;
  return v;
}

void check_die(std::uint64_t n) {
  if (n == 0) throw RangeError("die must have at least one side");
  if (n > kMaxDieSides) throw RangeError("die size exceeds 2^63");
}

}  // namespace

Rational exact_expected_flips(std::uint64_t n) {
  check_die(n);
  if (n == 1) return 0;
  const PhaseChain chain = phase_chain(n);

  // Phase i is reached with probability s_i / 2^{K_i}, K_i the flips before it;
  // each trip around the cycle scales that by 2^-P. Horner keeps it integral.
  BigInt transient = 0;
  unsigned long k_entry = 0;
  for (std::size_t i = 0; i < chain.entry; ++i) {
    transient += BigInt(static_cast<unsigned long>(chain.sizes[i])) * chain.doublings[i];
    transient <<= chain.doublings[i];
    k_entry += chain.doublings[i];
  }
  if (chain.entry == chain.sizes.size()) {
    Rational e(transient, pow2(k_entry));
    e.canonicalize();
    return e;
  }
  BigInt cyclic = 0;
  unsigned long period = 0;
  for (std::size_t i = chain.entry; i < chain.sizes.size(); ++i) {
    cyclic += BigInt(static_cast<unsigned long>(chain.sizes[i])) * chain.doublings[i];
    cyclic <<= chain.doublings[i];
    period += chain.doublings[i];
  }
  const BigInt repeat = pow2(period) - 1;
  Rational e(transient * repeat + cyclic, pow2(k_entry) * repeat);
  e.canonicalize();
  return e;
}

RecurrenceSolution solve_recurrence(std::uint64_t n) {
  check_die(n);
  RecurrenceSolution sol;
  sol.expected_flips = 0;
  if (n == 1) return sol;
  const PhaseChain chain = phase_chain(n);

  unsigned long period = 0;
  for (std::size_t i = chain.entry; i < chain.sizes.size(); ++i) period += chain.doublings[i];
  Rational cycle_factor = 1;
  if (chain.entry < chain.sizes.size()) cycle_factor = Rational(pow2(period), pow2(period) - 1);

  unsigned long flips_before = 0;
  for (std::size_t i = 0; i < chain.sizes.size(); ++i) {
    Rational reach(BigInt(static_cast<unsigned long>(chain.sizes[i])), pow2(flips_before));
    reach.canonicalize();
    if (i >= chain.entry) reach *= cycle_factor;
    sol.expected_flips += reach * chain.doublings[i];
    sol.visit_states.emplace(chain.sizes[i], std::move(reach));
    flips_before += chain.doublings[i];
  }
  return sol;
}

FlipDistribution flip_distribution_uniform(std::uint64_t n, unsigned depth) {
  check_die(n);
  const Rational unit(BigInt(1), BigInt(static_cast<unsigned long>(n)));
  std::map<unsigned, Rational> mass;
  Rational total = 0;
  for (unsigned j = 0; j <= depth; ++j) {
    if (binary_digit(unit, j) == 0) continue;
    Rational q = dyadic(j) * static_cast<unsigned long>(n);
    total += q;
    mass.emplace(j, std::move(q));
  }
  return FlipDistribution(std::move(mass), 1 - total, depth);
}

FlipDistribution flip_distribution(const ProbabilityVector& p, unsigned depth) {
  std::map<unsigned, Rational> mass;
  Rational total = 0;
  for (unsigned j = 0; j <= depth; ++j) {
    unsigned long leaves = 0;
    for (const auto& q : p.values()) leaves += static_cast<unsigned long>(binary_digit(q, j));
    if (leaves == 0) continue;
    Rational m = dyadic(j) * leaves;
    total += m;
    mass.emplace(j, std::move(m));
  }
  return FlipDistribution(std::move(mass), 1 - total, depth);
}

Rational expansion_depth_sum(const Rational& p) {
  constexpr unsigned long kMaxDigits = 1ul << 22;
  if (p < 0 || p > 1) throw RangeError("probability outside [0, 1]");
  if (p == 0 || p == 1) return 0;
  const BigInt& den = p.get_den();
  const auto pre = static_cast<unsigned long>(mpz_scan1(den.get_mpz_t(), 0));
  if (pre > kMaxDigits) throw RangeError("binary expansion preperiod too long");

  // Integer residual r_j = 2^j a mod b; digit j is 1 iff 2 r_{j-1} >= b.
  BigInt r = p.get_num();
  unsigned long j = 0;
  auto next_digit = [&]() {
    r <<= 1;
    ++j;
    if (r >= den) {
      r -= den;
      return true;
    }
    return false;
  };

  BigInt head = 0;  // sum_{j<=pre} j d_j 2^{pre-j}
  while (j < pre) {
    head <<= 1;
    if (next_digit()) head += j;
  }
  Rational result(head, pow2(pre));
  result.canonicalize();
  if (r == 0) return result;

  const BigInt start = r;
  BigInt weighted = 0;  // sum over one period of j d_j 2^{pre+P-j}
  BigInt plain = 0;     // sum over one period of d_j 2^{pre+P-j}
  unsigned long period = 0;
  do {
    if (period == kMaxDigits) throw RangeError("binary expansion period too long");
    weighted <<= 1;
    plain <<= 1;
    if (next_digit()) {
      weighted += j;
      plain += 1;
    }
    ++period;
  } while (r != start);

  // Periodic part: sum_t x^t (D1 + t P D0) = D1/(1-x) + P D0 x/(1-x)^2, x = 2^-P.
  const BigInt scale = pow2(pre + period);
  const BigInt cycle = pow2(period);
  const BigInt cycle_m1 = cycle - 1;
  Rational d1(weighted, scale);
  Rational d0(plain, scale);
  d1.canonicalize();
  d0.canonicalize();
  Rational inv(cycle, cycle_m1);  // 1 / (1 - x)
  inv.canonicalize();
  Rational tail = d1 * inv + d0 * period * inv * inv / cycle;
  return result + tail;
}

Rational expected_flips_from_expansion(const ProbabilityVector& p) {
  Rational total = 0;
  for (const auto& q : p.values()) total += expansion_depth_sum(q);
  return total;
}

Rational expected_flips_from_expansion(std::uint64_t n) {
  check_die(n);
  const Rational unit(BigInt(1), BigInt(static_cast<unsigned long>(n)));
  return expansion_depth_sum(unit) * static_cast<unsigned long>(n);
}

BoundsReport verify_bounds(std::uint64_t n_max) {
  if (n_max == 0) throw RangeError("n_max must be at least 1");
  BoundsReport report;
  report.n_max = n_max;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const Rational e = exact_expected_flips(n);
    const unsigned lower = ceil_log2(n);
    if (e < lower) {
      throw BoundViolation(n, "E[N] = " + e.get_str() + " below ceil(log2 " +
                                  std::to_string(n) + ") = " + std::to_string(lower));
    }
    if (e > lower + 1) {
      throw BoundViolation(n, "E[N] = " + e.get_str() + " above ceil(log2 " +
                                  std::to_string(n) + ") + 1 = " + std::to_string(lower + 1));
    }
    Rational slack = lower + 1 - e;
    if (n == 1 || slack > report.max_slack) {
      report.max_slack = slack;
      report.max_slack_n = n;
    }
    if (n == 1 || slack < report.min_slack) {
      report.min_slack = slack;
      report.min_slack_n = n;
    }
  }
  return report;
}

double entropy(const ProbabilityVector& p) {
  double h = 0.0;
  for (const auto& q : p.values()) {
    const double x = to_double(q);
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

}  // namespace kyroll
