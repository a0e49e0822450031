/*
 * Copyright 2026 The kyroll Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * kyroll C API: entropy-optimal fair dice and discrete sampling from fair
 * coin flips, with exact analysis of the induced generating trees.
 *
 * Every function returns a kyr_status. On failure a human-readable message
 * for the calling thread is available from kyr_last_error(). Handles are
 * opaque; each *_new_* has a matching *_free that accepts NULL. Strings
 * returned through char** are heap-allocated and released with
 * kyr_string_free(). Outcomes are 1-indexed. Rationals cross the boundary as
 * "num/den" strings plus a double approximation; either out-pointer may be NULL.
 *
 * A kyr_source must not be used from two threads at once. Every other handle
 * is immutable after construction and may be shared read-only.
 */

#ifndef KYROLL_H
#define KYROLL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(KYROLL_BUILDING_LIBRARY)
#    define KYR_API __declspec(dllexport)
#  else
#    define KYR_API __declspec(dllimport)
#  endif
#else
#  define KYR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kyr_status {
  KYR_OK = 0,
  KYR_ERR_INVALID_ARGUMENT = 1,     /* NULL pointer, index out of bounds */
  KYR_ERR_RANGE = 2,                /* value outside the supported range */
  KYR_ERR_PARSE = 3,                /* malformed text input */
  KYR_ERR_INVALID_DISTRIBUTION = 4, /* negative entry or sum != 1 */
  KYR_ERR_EXHAUSTED = 5,            /* replay source ran out of bits */
  KYR_ERR_MASS_MISMATCH = 6,        /* tree does not reproduce the distribution */
  KYR_ERR_BOUND_VIOLATION = 7,      /* expected-flip bound failed */
  KYR_ERR_NOT_OPTIMAL = 8,          /* tree is valid but not entropy-optimal */
  KYR_ERR_INTERNAL = 99
} kyr_status;

typedef struct kyr_source kyr_source;
typedef struct kyr_dist kyr_dist;
typedef struct kyr_sampler kyr_sampler;
typedef struct kyr_flipdist kyr_flipdist;
typedef struct kyr_tree kyr_tree;
typedef struct kyr_state_tree kyr_state_tree;

KYR_API const char* kyr_version(void);
KYR_API const char* kyr_status_name(kyr_status status);
/* Message of the most recent failing call on this thread ("" if none). */
KYR_API const char* kyr_last_error(void);
KYR_API void kyr_string_free(char* s);

/* ---- bit sources ---------------------------------------------------------- */

/* std::mt19937_64(seed), each 64-bit word consumed least-significant bit first. */
KYR_API kyr_status kyr_source_new_seeded(uint64_t seed, kyr_source** out);
/* Replays a string of '0'/'1' characters, then reports KYR_ERR_EXHAUSTED. */
KYR_API kyr_status kyr_source_new_replay(const char* bits, kyr_source** out);
KYR_API kyr_status kyr_source_next(kyr_source* source, int* bit);
KYR_API kyr_status kyr_source_flips(const kyr_source* source, uint64_t* flips);
KYR_API void kyr_source_free(kyr_source* source);

/* ---- distributions -------------------------------------------------------- */

/* "3/8,1/2,1/8" or a JSON array [{"num":3,"den":8}, ...]. Decimals are rejected. */
KYR_API kyr_status kyr_dist_parse(const char* text, kyr_dist** out);
KYR_API kyr_status kyr_dist_new_uniform(uint64_t n, kyr_dist** out);
KYR_API kyr_status kyr_dist_size(const kyr_dist* dist, size_t* size);
KYR_API kyr_status kyr_dist_prob(const kyr_dist* dist, size_t outcome, char** fraction,
                                 double* approx);
/* Shannon entropy in bits (double precision). */
KYR_API kyr_status kyr_dist_entropy(const kyr_dist* dist, double* bits);
KYR_API void kyr_dist_free(kyr_dist* dist);

/* ---- sampling ------------------------------------------------------------- */

/* 1 <= n <= 2^63. */
KYR_API kyr_status kyr_sampler_new_die(uint64_t n, kyr_sampler** out);
KYR_API kyr_status kyr_sampler_new_dist(const kyr_dist* dist, kyr_sampler** out);
KYR_API kyr_status kyr_sampler_outcomes(const kyr_sampler* sampler, size_t* count);
/* Exact outcome probabilities of the sampler (1/n each for a die). */
KYR_API kyr_status kyr_sampler_dist(const kyr_sampler* sampler, kyr_dist** out);
KYR_API kyr_status kyr_sampler_draw(const kyr_sampler* sampler, kyr_source* source,
                                    uint64_t* outcome, uint64_t* flips);
KYR_API void kyr_sampler_free(kyr_sampler* sampler);

/* Baseline: ceil(log2 n) flips per attempt, all discarded on rejection. */
KYR_API kyr_status kyr_naive_roll(uint64_t n, kyr_source* source, uint64_t* outcome,
                                  uint64_t* flips);

/* ---- exact analysis ------------------------------------------------------- */

KYR_API kyr_status kyr_expected_flips_die(uint64_t n, char** fraction, double* approx);
/* E[N] of the optimal tree for dist, summed exactly from the binary expansions. */
KYR_API kyr_status kyr_expected_flips_dist(const kyr_dist* dist, char** fraction,
                                           double* approx);

typedef struct kyr_bounds_report {
  uint64_t n_max;
  uint64_t max_slack_n; /* slack = ceil(log2 n) + 1 - E[N] */
  double max_slack;
  uint64_t min_slack_n;
  double min_slack;
  uint64_t violating_n; /* set on KYR_ERR_BOUND_VIOLATION, else 0 */
} kyr_bounds_report;

KYR_API kyr_status kyr_verify_bounds(uint64_t n_max, kyr_bounds_report* report);

KYR_API kyr_status kyr_flipdist_new_die(uint64_t n, unsigned depth, kyr_flipdist** out);
KYR_API kyr_status kyr_flipdist_new_dist(const kyr_dist* dist, unsigned depth,
                                         kyr_flipdist** out);
KYR_API kyr_status kyr_flipdist_new_tree(const kyr_tree* tree, kyr_flipdist** out);
KYR_API kyr_status kyr_flipdist_depth(const kyr_flipdist* fd, unsigned* depth);
/* P(N = level). */
KYR_API kyr_status kyr_flipdist_mass(const kyr_flipdist* fd, unsigned level, char** fraction,
                                     double* approx);
/* Mass still unresolved at the materialized depth. */
KYR_API kyr_status kyr_flipdist_residual(const kyr_flipdist* fd, char** fraction,
                                         double* approx);
/* Sum of level * P(N = level) over materialized levels. */
KYR_API kyr_status kyr_flipdist_expectation(const kyr_flipdist* fd, char** fraction,
                                            double* approx);
/* *result = 1 iff P(N_a > i) <= P(N_b > i) for every i. */
KYR_API kyr_status kyr_flipdist_dominates(const kyr_flipdist* a, const kyr_flipdist* b,
                                          int* result);
KYR_API void kyr_flipdist_free(kyr_flipdist* fd);

/* ---- generating trees ----------------------------------------------------- */

KYR_API kyr_status kyr_tree_new_from_sampler(const kyr_sampler* sampler, unsigned depth,
                                             kyr_tree** out);
KYR_API kyr_status kyr_tree_new_canonical(const kyr_dist* dist, unsigned depth,
                                          kyr_tree** out);
KYR_API kyr_status kyr_tree_counts(const kyr_tree* tree, size_t* leaves, size_t* internal,
                                   size_t* pending);
/* Graphviz DOT text; node ids are "r" followed by the bit history. */
KYR_API kyr_status kyr_tree_dot(const kyr_tree* tree, char** dot);
/* KYR_OK when optimal, KYR_ERR_NOT_OPTIMAL with *detail naming the violation,
 * KYR_ERR_MASS_MISMATCH when the tree does not produce dist. detail may be NULL. */
KYR_API kyr_status kyr_tree_check_optimal(const kyr_tree* tree, const kyr_dist* dist,
                                          char** detail);
KYR_API void kyr_tree_free(kyr_tree* tree);

/* ---- brute-force oracle --------------------------------------------------- */

/* Every bit history of length <= depth visited by the sampler, in level order. */
KYR_API kyr_status kyr_state_tree_new(const kyr_sampler* sampler, unsigned depth,
                                      kyr_state_tree** out);
KYR_API kyr_status kyr_state_tree_size(const kyr_state_tree* tree, size_t* size);

typedef struct kyr_state_entry {
  const char* history; /* owned by the state tree */
  uint64_t x;          /* state after the accept/recycle step */
  uint64_t m;
  uint64_t doubled_x;  /* state right after doubling */
  uint64_t doubled_m;
  int is_leaf;
  uint64_t outcome;    /* valid when is_leaf */
} kyr_state_entry;

KYR_API kyr_status kyr_state_tree_entry(const kyr_state_tree* tree, size_t index,
                                        kyr_state_entry* entry);
KYR_API void kyr_state_tree_free(kyr_state_tree* tree);

/* ---- statistics and benchmarking ------------------------------------------ */

typedef struct kyr_chisq_report {
  uint64_t count;
  double statistic;
  unsigned dof;
  double p_value;
  double significance;
  int passed; /* p_value > significance */
} kyr_chisq_report;

/* count >= 50 * outcomes. observed may be NULL, else it receives one count per outcome. */
KYR_API kyr_status kyr_chisq_run(const kyr_sampler* sampler, uint64_t count, uint64_t seed,
                                 double significance, kyr_chisq_report* report,
                                 uint64_t* observed);

typedef struct kyr_bench_row {
  uint64_t n;
  uint64_t count;
  double recycler_flips_per_roll;
  double recycler_flip_stddev;
  double naive_flips_per_roll;
  double recycler_rolls_per_sec;
  double naive_rolls_per_sec;
  int exact_known;       /* exact E[N] computed (n <= 2^20) */
  double exact_expected; /* valid when exact_known */
} kyr_bench_row;

KYR_API kyr_status kyr_bench_run(uint64_t n, uint64_t count, uint64_t seed, kyr_bench_row* row);

#ifdef __cplusplus
}
#endif

#endif /* KYROLL_H */
