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

// Command-line front end over the C API.

#include "kyroll/kyroll.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitCheck = 2;

// Reported as exit code 1 with the library's message.
struct Failure {
  std::string message;
};

void ok(kyr_status s) {
  if (s != KYR_OK) throw Failure{std::string(kyr_status_name(s)) + ": " + kyr_last_error()};
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Source = std::unique_ptr<kyr_source, Deleter<kyr_source, kyr_source_free>>;
using Dist = std::unique_ptr<kyr_dist, Deleter<kyr_dist, kyr_dist_free>>;
using Sampler = std::unique_ptr<kyr_sampler, Deleter<kyr_sampler, kyr_sampler_free>>;
using FlipDist = std::unique_ptr<kyr_flipdist, Deleter<kyr_flipdist, kyr_flipdist_free>>;
using Tree = std::unique_ptr<kyr_tree, Deleter<kyr_tree, kyr_tree_free>>;
using StateTree = std::unique_ptr<kyr_state_tree, Deleter<kyr_state_tree, kyr_state_tree_free>>;

std::string take(char* s) {
  std::string out = s == nullptr ? "" : s;
  kyr_string_free(s);
  return out;
}

std::string decimal(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  std::string s = buf;
  if (s.find_first_of(".en") == std::string::npos) s += ".0";
  return s;
}

unsigned ceil_log2(std::uint64_t n) {
  unsigned k = 0;
  while (k < 64 && (std::uint64_t{1} << k) < n) ++k;
  return k;
}

struct TargetArgs {
  std::optional<std::uint64_t> die;
  std::optional<std::string> dist;

  void attach(CLI::App* cmd) {
    auto* d = cmd->add_option("--die", die, "fair die with N sides")->check(CLI::PositiveNumber);
    auto* p = cmd->add_option("--dist", dist, "exact probabilities, e.g. 3/8,1/2,1/8");
    d->excludes(p);
    p->excludes(d);
    cmd->callback([cmd, d, p] {
      if (d->count() + p->count() != 1) {
        throw CLI::ValidationError(cmd->get_name() + ": give exactly one of --die or --dist");
      }
    });
  }

  Sampler sampler() const {
    kyr_sampler* s = nullptr;
    if (die) {
      ok(kyr_sampler_new_die(*die, &s));
    } else {
      Dist d = distribution();
      ok(kyr_sampler_new_dist(d.get(), &s));
    }
    return Sampler(s);
  }

  Dist distribution() const {
    kyr_dist* d = nullptr;
    if (die) {
      ok(kyr_dist_new_uniform(*die, &d));
    } else {
      ok(kyr_dist_parse(dist->c_str(), &d));
    }
    return Dist(d);
  }

  double entropy() const {
    if (die) return std::log2(static_cast<double>(*die));
    double h = 0;
    ok(kyr_dist_entropy(distribution().get(), &h));
    return h;
  }
};

struct Rational {
  std::string text;
  double approx = 0;
};

// ---- sample ---------------------------------------------------------------

struct SampleArgs {
  TargetArgs target;
  std::uint64_t count = 1;
  std::uint64_t seed = 0;
  bool show_flips = false;
};

int run_sample(const SampleArgs& a) {
  const Sampler s = a.target.sampler();
  kyr_source* raw = nullptr;
  ok(kyr_source_new_seeded(a.seed, &raw));
  const Source src(raw);
  std::uint64_t total = 0;
  std::string out;
  for (std::uint64_t i = 0; i < a.count; ++i) {
    std::uint64_t outcome = 0;
    std::uint64_t flips = 0;
    ok(kyr_sampler_draw(s.get(), src.get(), &outcome, &flips));
    total += flips;
    out += std::to_string(outcome);
    if (a.show_flips) out += " " + std::to_string(flips);
    out += '\n';
  }
  std::cout << out;
  std::cout << "total flips " << total << ", flips/roll "
            << decimal(static_cast<double>(total) / static_cast<double>(a.count))
            << ", entropy floor " << decimal(a.target.entropy()) << '\n';
  return 0;
}

// ---- analyze --------------------------------------------------------------

struct AnalyzeArgs {
  TargetArgs target;
  unsigned depth = 16;
  bool json = false;
};

Rational read(kyr_status (*fn)(const kyr_flipdist*, char**, double*), const kyr_flipdist* fd) {
  char* text = nullptr;
  Rational r;
  ok(fn(fd, &text, &r.approx));
  r.text = take(text);
  return r;
}

int run_analyze(const AnalyzeArgs& a) {
  Rational e;
  char* text = nullptr;
  kyr_flipdist* raw = nullptr;
  std::uint64_t lower = 0;
  std::uint64_t upper = 0;
  if (a.target.die) {
    ok(kyr_expected_flips_die(*a.target.die, &text, &e.approx));
    ok(kyr_flipdist_new_die(*a.target.die, a.depth, &raw));
    lower = ceil_log2(*a.target.die);
    upper = lower + 1;
  } else {
    const Dist d = a.target.distribution();
    ok(kyr_expected_flips_dist(d.get(), &text, &e.approx));
    ok(kyr_flipdist_new_dist(d.get(), a.depth, &raw));
  }
  e.text = take(text);
  const FlipDist fd(raw);
  const double h = a.target.entropy();

  struct Row {
    unsigned flips;
    Rational mass;
  };
  std::vector<Row> rows;
  for (unsigned j = 0; j <= a.depth; ++j) {
    char* m = nullptr;
    Rational r;
    ok(kyr_flipdist_mass(fd.get(), j, &m, &r.approx));
    r.text = take(m);
    if (r.text != "0/1") rows.push_back({j, r});
  }
  const Rational residual = read(kyr_flipdist_residual, fd.get());

  if (a.json) {
    nlohmann::ordered_json j;
    if (a.target.die) {
      j["n"] = *a.target.die;
    } else {
      j["distribution"] = *a.target.dist;
    }
    j["expected"] = e.text;
    j["expected_approx"] = e.approx;
    if (a.target.die) {
      j["lower"] = lower;
      j["upper"] = upper;
    }
    j["entropy"] = h;
    j["depth"] = a.depth;
    auto& dist = j["flip_distribution"] = nlohmann::ordered_json::array();
    for (const auto& r : rows) dist.push_back({{"flips", r.flips}, {"mass", r.mass.text}});
    j["residual"] = residual.text;
    std::cout << j.dump(2) << '\n';
    return 0;
  }

  std::cout << "E[N] = " << e.text << " = " << decimal(e.approx);
  if (a.target.die) std::cout << "; bounds [" << lower << ", " << upper << "]";
  std::cout << '\n';
  std::cout << "entropy = " << decimal(h) << " bits\n";
  std::cout << "flip distribution through depth " << a.depth << ":\n";
  for (const auto& r : rows) {
    std::cout << "  P(N = " << r.flips << ") = " << r.mass.text << " = " << decimal(r.mass.approx)
              << '\n';
  }
  std::cout << "  P(N > " << a.depth << ") = " << residual.text << " = "
            << decimal(residual.approx) << '\n';
  return 0;
}

// ---- tree -----------------------------------------------------------------

struct TreeArgs {
  TargetArgs target;
  std::optional<unsigned> depth;
  bool check = false;
  bool canonical = false;
};

int run_tree(const TreeArgs& a) {
  const unsigned depth =
      a.depth.value_or(a.target.die ? 2 * ceil_log2(*a.target.die) + 8 : 16);
  const Dist d = a.target.distribution();
  kyr_tree* raw = nullptr;
  if (a.canonical) {
    ok(kyr_tree_new_canonical(d.get(), depth, &raw));
  } else {
    ok(kyr_tree_new_from_sampler(a.target.sampler().get(), depth, &raw));
  }
  const Tree tree(raw);
  char* dot = nullptr;
  ok(kyr_tree_dot(tree.get(), &dot));
  std::cout << take(dot);
  if (!a.check) return 0;

  char* detail = nullptr;
  const kyr_status s = kyr_tree_check_optimal(tree.get(), d.get(), &detail);
  if (s == KYR_OK) {
    std::cerr << take(detail) << '\n';
    return 0;
  }
  if (s == KYR_ERR_NOT_OPTIMAL) {
    std::cerr << "not optimal: " << take(detail) << '\n';
    return kExitCheck;
  }
  if (s == KYR_ERR_MASS_MISMATCH) {
    std::cerr << "mass mismatch: " << kyr_last_error() << '\n';
    return kExitCheck;
  }
  ok(s);
  return 0;
}

// ---- oracle-dump ----------------------------------------------------------

struct OracleArgs {
  TargetArgs target;
  unsigned depth = 6;
};

int run_oracle(const OracleArgs& a) {
  kyr_state_tree* raw = nullptr;
  ok(kyr_state_tree_new(a.target.sampler().get(), a.depth, &raw));
  const StateTree st(raw);
  std::size_t size = 0;
  ok(kyr_state_tree_size(st.get(), &size));
  std::ostringstream out;
  out << "# level history doubled state outcome\n";
  for (std::size_t i = 0; i < size; ++i) {
    kyr_state_entry e{};
    ok(kyr_state_tree_entry(st.get(), i, &e));
    const std::string h = e.history;
    out << h.size() << ' ' << (h.empty() ? "-" : h) << " (" << e.doubled_x << ',' << e.doubled_m
        << ") (" << e.x << ',' << e.m << ") ";
    if (e.is_leaf) {
      out << e.outcome;
    } else {
      out << '.';
    }
    out << '\n';
  }
  std::cout << out.str();
  return 0;
}

// ---- chisq ----------------------------------------------------------------

struct ChisqArgs {
  TargetArgs target;
  std::uint64_t count = 100000;
  std::uint64_t seed = 0;
  double significance = 0.001;
};

int run_chisq(const ChisqArgs& a) {
  const Sampler s = a.target.sampler();
  std::size_t k = 0;
  ok(kyr_sampler_outcomes(s.get(), &k));
  std::vector<std::uint64_t> observed(k);
  kyr_chisq_report r{};
  const kyr_status status = kyr_chisq_run(s.get(), a.count, a.seed, a.significance, &r,
                                          observed.data());
  if (status == KYR_ERR_RANGE) {
    std::cerr << "chisq: " << kyr_last_error() << '\n';
    return kExitUsage;
  }
  ok(status);
  const Dist d = a.target.distribution();
  std::cout << "outcome observed expected\n";
  for (std::size_t i = 0; i < k; ++i) {
    double p = 0;
    ok(kyr_dist_prob(d.get(), i + 1, nullptr, &p));
    std::cout << i + 1 << ' ' << observed[i] << ' ' << decimal(p * static_cast<double>(a.count))
              << '\n';
  }
  std::cout << "chi2 = " << decimal(r.statistic) << ", dof = " << r.dof
            << ", p-value = " << decimal(r.p_value) << ", significance "
            << decimal(r.significance) << ": " << (r.passed ? "pass" : "FAIL") << '\n';
  return r.passed ? 0 : kExitCheck;
}

// ---- bench ----------------------------------------------------------------

struct BenchArgs {
  std::vector<std::uint64_t> sides;
  std::uint64_t count = 1000000;
  std::uint64_t seed = 0;
  bool json = false;
};

int run_bench(const BenchArgs& a) {
  std::vector<kyr_bench_row> rows;
  for (auto n : a.sides) {
    kyr_bench_row row{};
    ok(kyr_bench_run(n, a.count, a.seed, &row));
    rows.push_back(row);
  }
  if (a.json) {
    auto j = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
      nlohmann::ordered_json o;
      o["n"] = r.n;
      o["count"] = r.count;
      o["recycler_flips_per_roll"] = r.recycler_flips_per_roll;
      o["recycler_flip_stddev"] = r.recycler_flip_stddev;
      o["naive_flips_per_roll"] = r.naive_flips_per_roll;
      o["recycler_rolls_per_sec"] = r.recycler_rolls_per_sec;
      o["naive_rolls_per_sec"] = r.naive_rolls_per_sec;
      o["exact_expected"] = r.exact_known ? nlohmann::ordered_json(r.exact_expected) : nullptr;
      j.push_back(o);
    }
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  std::printf("%-12s %12s %12s %12s %14s %14s\n", "n", "exact", "recycler", "naive",
              "recycler/s", "naive/s");
  for (const auto& r : rows) {
    const std::string exact = r.exact_known ? decimal(r.exact_expected) : "-";
    std::printf("%-12llu %12.12s %12.6f %12.6f %14.0f %14.0f\n",
                static_cast<unsigned long long>(r.n), exact.c_str(), r.recycler_flips_per_roll,
                r.naive_flips_per_roll, r.recycler_rolls_per_sec, r.naive_rolls_per_sec);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fair dice and exact discrete sampling from coin flips"};
  app.set_version_flag("--version", std::string(kyr_version()));
  app.require_subcommand(1);

  SampleArgs sample;
  auto* cmd_sample = app.add_subcommand("sample", "draw outcomes from a seeded source");
  sample.target.attach(cmd_sample);
  cmd_sample->add_option("--count", sample.count, "number of draws")->check(CLI::PositiveNumber);
  cmd_sample->add_option("--seed", sample.seed, "seed for the mt19937_64 bit source");
  cmd_sample->add_flag("--show-flips", sample.show_flips, "print flips used by each draw");

  AnalyzeArgs analyze;
  auto* cmd_analyze = app.add_subcommand("analyze", "exact expected flips and flip distribution");
  analyze.target.attach(cmd_analyze);
  cmd_analyze->add_option("--depth", analyze.depth, "deepest level of the flip table");
  cmd_analyze->add_flag("--json", analyze.json, "machine-readable output");

  TreeArgs tree;
  auto* cmd_tree = app.add_subcommand("tree", "export the sampling tree as Graphviz DOT");
  tree.target.attach(cmd_tree);
  cmd_tree->add_option("--depth", tree.depth, "truncation depth")->check(CLI::PositiveNumber);
  cmd_tree->add_flag("--check", tree.check, "verify optimality; exit 2 if violated");
  cmd_tree->add_flag("--canonical", tree.canonical, "build the Knuth-Yao tree directly");

  OracleArgs oracle;
  auto* cmd_oracle = app.add_subcommand("oracle-dump", "print every recycler state to a depth");
  oracle.target.attach(cmd_oracle);
  cmd_oracle->add_option("--depth", oracle.depth, "enumeration depth");

  ChisqArgs chisq;
  auto* cmd_chisq = app.add_subcommand("chisq", "chi-square goodness-of-fit test");
  chisq.target.attach(cmd_chisq);
  cmd_chisq->add_option("--count", chisq.count, "number of draws");
  cmd_chisq->add_option("--seed", chisq.seed, "seed for the mt19937_64 bit source");
  cmd_chisq->add_option("--significance", chisq.significance, "rejection threshold")
      ->check(CLI::Range(0.0, 1.0));

  BenchArgs bench;
  auto* cmd_bench = app.add_subcommand("bench", "compare flips/roll against naive rejection");
  cmd_bench->add_option("n", bench.sides, "die sizes")->required()->check(CLI::PositiveNumber);
  cmd_bench->add_option("--count", bench.count, "rolls per die")->check(CLI::PositiveNumber);
  cmd_bench->add_option("--seed", bench.seed, "seed for the mt19937_64 bit source");
  cmd_bench->add_flag("--json", bench.json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*cmd_sample) return run_sample(sample);
    if (*cmd_analyze) return run_analyze(analyze);
    if (*cmd_tree) return run_tree(tree);
    if (*cmd_oracle) return run_oracle(oracle);
    if (*cmd_chisq) return run_chisq(chisq);
    if (*cmd_bench) return run_bench(bench);
  } catch (const Failure& f) {
    std::cerr << "kyroll: " << f.message << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
