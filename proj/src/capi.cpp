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

#include "kyroll/kyroll.h"

#include "kyroll/analysis.hpp"
#include "kyroll/ddg.hpp"
#include "kyroll/error.hpp"
#include "kyroll/oracle.hpp"
#include "kyroll/stats.hpp"
#include "kyroll/target.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <vector>

struct kyr_source {
  std::unique_ptr<kyroll::BitSource> impl;
};

struct kyr_dist {
  kyroll::ProbabilityVector impl;
};

struct kyr_sampler {
  kyroll::Target impl;
};

struct kyr_flipdist {
  kyroll::FlipDistribution impl;
};

struct kyr_tree {
  kyroll::DdgTree impl;
};

struct kyr_state_tree {
  std::vector<std::pair<std::string, kyroll::oracle::StateSnapshot>> entries;
};

namespace {

thread_local std::string last_error;

struct InvalidArgument : kyroll::Error {
  using kyroll::Error::Error;
};

kyr_status fail(kyr_status status, const char* what) {
  last_error = what;
  return status;
}

template <class F>
kyr_status guarded(F&& body) noexcept {
  try {
    body();
    return KYR_OK;
  } catch (const InvalidArgument& e) {
    return fail(KYR_ERR_INVALID_ARGUMENT, e.what());
  } catch (const kyroll::SourceExhausted& e) {
    return fail(KYR_ERR_EXHAUSTED, e.what());
  } catch (const kyroll::InvalidDistribution& e) {
    return fail(KYR_ERR_INVALID_DISTRIBUTION, e.what());
  } catch (const kyroll::RangeError& e) {
    return fail(KYR_ERR_RANGE, e.what());
  } catch (const kyroll::ParseError& e) {
    return fail(KYR_ERR_PARSE, e.what());
  } catch (const kyroll::MassMismatch& e) {
    return fail(KYR_ERR_MASS_MISMATCH, e.what());
  } catch (const kyroll::BoundViolation& e) {
    return fail(KYR_ERR_BOUND_VIOLATION, e.what());
  } catch (const std::bad_alloc&) {
    return fail(KYR_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(KYR_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(KYR_ERR_INTERNAL, "unknown error");
  }
}

template <class T>
T& require(T* p, const char* name) {
  if (p == nullptr) throw InvalidArgument(std::string(name) + " is NULL");
  return *p;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void write_rational(const kyroll::Rational& q, char** fraction, double* approx) {
  if (approx != nullptr) *approx = kyroll::to_double(q);
  if (fraction != nullptr) *fraction = dup_string(kyroll::to_fraction_string(q));
}

template <class Handle, class... Args>
void emit(Handle** out, Args&&... args) {
  require(out, "out");
  *out = nullptr;
  *out = new Handle{std::forward<Args>(args)...};
}

}  // namespace

extern "C" {

const char* kyr_version(void) { return "0.1.0"; }

const char* kyr_status_name(kyr_status status) {
  switch (status) {
    case KYR_OK: return "ok";
    case KYR_ERR_INVALID_ARGUMENT: return "invalid argument";
    case KYR_ERR_RANGE: return "out of range";
    case KYR_ERR_PARSE: return "parse error";
    case KYR_ERR_INVALID_DISTRIBUTION: return "invalid distribution";
    case KYR_ERR_EXHAUSTED: return "source exhausted";
    case KYR_ERR_MASS_MISMATCH: return "mass mismatch";
    case KYR_ERR_BOUND_VIOLATION: return "bound violation";
    case KYR_ERR_NOT_OPTIMAL: return "not optimal";
    case KYR_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* kyr_last_error(void) { return last_error.c_str(); }

void kyr_string_free(char* s) { std::free(s); }

kyr_status kyr_source_new_seeded(uint64_t seed, kyr_source** out) {
  return guarded([&] { emit(out, std::make_unique<kyroll::SeededSource>(seed)); });
}

kyr_status kyr_source_new_replay(const char* bits, kyr_source** out) {
  return guarded([&] {
    const std::string text(&require(bits, "bits"));
    emit(out, std::make_unique<kyroll::ReplaySource>(kyroll::ReplaySource::from_string(text)));
  });
}

kyr_status kyr_source_next(kyr_source* source, int* bit) {
  return guarded([&] {
    auto& s = require(source, "source");
    const auto b = s.impl->next();
    if (!b) throw kyroll::SourceExhausted("replay source exhausted");
    require(bit, "bit") = static_cast<int>(kyroll::to_int(*b));
  });
}

kyr_status kyr_source_flips(const kyr_source* source, uint64_t* flips) {
  return guarded([&] { require(flips, "flips") = require(source, "source").impl->flips_consumed(); });
}

void kyr_source_free(kyr_source* source) { delete source; }

kyr_status kyr_dist_parse(const char* text, kyr_dist** out) {
  return guarded([&] {
    const std::string body(&require(text, "text"));
    emit(out, kyroll::ProbabilityVector::parse(body));
  });
}

kyr_status kyr_dist_new_uniform(uint64_t n, kyr_dist** out) {
  return guarded([&] { emit(out, kyroll::ProbabilityVector::uniform(n)); });
}

kyr_status kyr_dist_size(const kyr_dist* dist, size_t* size) {
  return guarded([&] { require(size, "size") = require(dist, "dist").impl.size(); });
}

kyr_status kyr_dist_prob(const kyr_dist* dist, size_t outcome, char** fraction, double* approx) {
  return guarded([&] {
    const auto& p = require(dist, "dist").impl;
    if (outcome == 0 || outcome > p.size()) throw InvalidArgument("outcome index out of bounds");
    write_rational(p[outcome], fraction, approx);
  });
}

kyr_status kyr_dist_entropy(const kyr_dist* dist, double* bits) {
  return guarded([&] { require(bits, "bits") = kyroll::entropy(require(dist, "dist").impl); });
}

void kyr_dist_free(kyr_dist* dist) { delete dist; }

kyr_status kyr_sampler_new_die(uint64_t n, kyr_sampler** out) {
  return guarded([&] { emit(out, kyroll::Target::die(n)); });
}

kyr_status kyr_sampler_new_dist(const kyr_dist* dist, kyr_sampler** out) {
  return guarded([&] { emit(out, kyroll::Target::distribution(require(dist, "dist").impl)); });
}

kyr_status kyr_sampler_outcomes(const kyr_sampler* sampler, size_t* count) {
  return guarded(
      [&] { require(count, "count") = require(sampler, "sampler").impl.outcome_count(); });
}

kyr_status kyr_sampler_dist(const kyr_sampler* sampler, kyr_dist** out) {
  return guarded([&] { emit(out, require(sampler, "sampler").impl.probabilities()); });
}

kyr_status kyr_sampler_draw(const kyr_sampler* sampler, kyr_source* source, uint64_t* outcome,
                            uint64_t* flips) {
  return guarded([&] {
    const auto r = require(sampler, "sampler").impl.draw(*require(source, "source").impl);
    if (outcome != nullptr) *outcome = r.outcome;
    if (flips != nullptr) *flips = r.flips;
  });
}

void kyr_sampler_free(kyr_sampler* sampler) { delete sampler; }

kyr_status kyr_naive_roll(uint64_t n, kyr_source* source, uint64_t* outcome, uint64_t* flips) {
  return guarded([&] {
    const auto r = kyroll::naive_rejection_roll(n, *require(source, "source").impl);
    if (outcome != nullptr) *outcome = r.outcome;
    if (flips != nullptr) *flips = r.flips;
  });
}

kyr_status kyr_expected_flips_die(uint64_t n, char** fraction, double* approx) {
  return guarded([&] { write_rational(kyroll::exact_expected_flips(n), fraction, approx); });
}

kyr_status kyr_expected_flips_dist(const kyr_dist* dist, char** fraction, double* approx) {
  return guarded([&] {
    write_rational(kyroll::expected_flips_from_expansion(require(dist, "dist").impl), fraction,
                   approx);
  });
}

kyr_status kyr_verify_bounds(uint64_t n_max, kyr_bounds_report* report) {
  kyr_bounds_report* r = report;
  return guarded([&] {
    auto& out = require(r, "report");
    out = kyr_bounds_report{};
    out.n_max = n_max;
    try {
      const auto b = kyroll::verify_bounds(n_max);
      out.max_slack_n = b.max_slack_n;
      out.max_slack = kyroll::to_double(b.max_slack);
      out.min_slack_n = b.min_slack_n;
      out.min_slack = kyroll::to_double(b.min_slack);
    } catch (const kyroll::BoundViolation& e) {
      out.violating_n = e.n();
      throw;
    }
  });
}

kyr_status kyr_flipdist_new_die(uint64_t n, unsigned depth, kyr_flipdist** out) {
  return guarded([&] { emit(out, kyroll::flip_distribution_uniform(n, depth)); });
}

kyr_status kyr_flipdist_new_dist(const kyr_dist* dist, unsigned depth, kyr_flipdist** out) {
  return guarded([&] { emit(out, kyroll::flip_distribution(require(dist, "dist").impl, depth)); });
}

kyr_status kyr_flipdist_new_tree(const kyr_tree* tree, kyr_flipdist** out) {
  return guarded([&] { emit(out, kyroll::flip_distribution(require(tree, "tree").impl)); });
}

kyr_status kyr_flipdist_depth(const kyr_flipdist* fd, unsigned* depth) {
  return guarded([&] { require(depth, "depth") = require(fd, "fd").impl.depth(); });
}

kyr_status kyr_flipdist_mass(const kyr_flipdist* fd, unsigned level, char** fraction,
                             double* approx) {
  return guarded([&] { write_rational(require(fd, "fd").impl.mass(level), fraction, approx); });
}

kyr_status kyr_flipdist_residual(const kyr_flipdist* fd, char** fraction, double* approx) {
  return guarded([&] { write_rational(require(fd, "fd").impl.residual(), fraction, approx); });
}

kyr_status kyr_flipdist_expectation(const kyr_flipdist* fd, char** fraction, double* approx) {
  return guarded(
      [&] { write_rational(require(fd, "fd").impl.truncated_expectation(), fraction, approx); });
}

kyr_status kyr_flipdist_dominates(const kyr_flipdist* a, const kyr_flipdist* b, int* result) {
  return guarded([&] {
    require(result, "result") = kyroll::dominates(require(a, "a").impl, require(b, "b").impl);
  });
}

void kyr_flipdist_free(kyr_flipdist* fd) { delete fd; }

kyr_status kyr_tree_new_from_sampler(const kyr_sampler* sampler, unsigned depth, kyr_tree** out) {
  return guarded(
      [&] { emit(out, kyroll::build_from_algorithm(require(sampler, "sampler").impl, depth)); });
}

kyr_status kyr_tree_new_canonical(const kyr_dist* dist, unsigned depth, kyr_tree** out) {
  return guarded([&] { emit(out, kyroll::build_canonical(require(dist, "dist").impl, depth)); });
}

kyr_status kyr_tree_counts(const kyr_tree* tree, size_t* leaves, size_t* internal,
                           size_t* pending) {
  return guarded([&] {
    const auto& t = require(tree, "tree").impl;
    if (leaves != nullptr) *leaves = t.leaf_count();
    if (internal != nullptr) *internal = t.internal_count();
    if (pending != nullptr) *pending = t.pending_count();
  });
}

kyr_status kyr_tree_dot(const kyr_tree* tree, char** dot) {
  return guarded([&] { require(dot, "dot") = dup_string(kyroll::export_dot(require(tree, "tree").impl)); });
}

kyr_status kyr_tree_check_optimal(const kyr_tree* tree, const kyr_dist* dist, char** detail) {
  bool optimal = false;
  const kyr_status status = guarded([&] {
    const auto verdict = kyroll::check_optimal(require(tree, "tree").impl, require(dist, "dist").impl);
    optimal = verdict.optimal;
    if (!optimal) last_error = verdict.detail;
    if (detail != nullptr) *detail = dup_string(verdict.detail);
  });
  if (status != KYR_OK) return status;
  return optimal ? KYR_OK : KYR_ERR_NOT_OPTIMAL;
}

void kyr_tree_free(kyr_tree* tree) { delete tree; }

kyr_status kyr_state_tree_new(const kyr_sampler* sampler, unsigned depth, kyr_state_tree** out) {
  return guarded([&] {
    auto states = kyroll::oracle::state_tree(require(sampler, "sampler").impl, depth);
    std::vector<std::pair<std::string, kyroll::oracle::StateSnapshot>> entries(
        std::make_move_iterator(states.begin()), std::make_move_iterator(states.end()));
    std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
      return kyroll::HistoryOrder{}(a.first, b.first);
    });
    emit(out, std::move(entries));
  });
}

kyr_status kyr_state_tree_size(const kyr_state_tree* tree, size_t* size) {
  return guarded([&] { require(size, "size") = require(tree, "tree").entries.size(); });
}

kyr_status kyr_state_tree_entry(const kyr_state_tree* tree, size_t index, kyr_state_entry* entry) {
  return guarded([&] {
    const auto& entries = require(tree, "tree").entries;
    if (index >= entries.size()) throw InvalidArgument("state index out of bounds");
    const auto& [history, snap] = entries[index];
    auto& e = require(entry, "entry");
    e.history = history.c_str();
    e.x = snap.state.x;
    e.m = snap.state.m;
    e.doubled_x = snap.doubled.x;
    e.doubled_m = snap.doubled.m;
    e.is_leaf = snap.outcome.has_value();
    e.outcome = snap.outcome.value_or(0);
  });
}

void kyr_state_tree_free(kyr_state_tree* tree) { delete tree; }

kyr_status kyr_chisq_run(const kyr_sampler* sampler, uint64_t count, uint64_t seed,
                         double significance, kyr_chisq_report* report, uint64_t* observed) {
  return guarded([&] {
    auto& out = require(report, "report");
    const auto r = kyroll::run_chisq(require(sampler, "sampler").impl, count, seed, significance);
    out.count = r.count;
    out.statistic = r.result.statistic;
    out.dof = r.result.dof;
    out.p_value = r.result.p_value;
    out.significance = r.significance;
    out.passed = r.passed;
    if (observed != nullptr) std::copy(r.observed.begin(), r.observed.end(), observed);
  });
}

kyr_status kyr_bench_run(uint64_t n, uint64_t count, uint64_t seed, kyr_bench_row* row) {
  return guarded([&] {
    auto& out = require(row, "row");
    const auto r = kyroll::run_bench(n, count, seed);
    out.n = r.n;
    out.count = r.count;
    out.recycler_flips_per_roll = r.recycler_flips_per_roll;
    out.recycler_flip_stddev = r.recycler_flip_stddev;
    out.naive_flips_per_roll = r.naive_flips_per_roll;
    out.recycler_rolls_per_sec = r.recycler_rolls_per_sec;
    out.naive_rolls_per_sec = r.naive_rolls_per_sec;
    out.exact_known = r.exact_expected.has_value();
    out.exact_expected = r.exact_expected ? kyroll::to_double(*r.exact_expected) : 0.0;
  });
}

}  // extern "C"
