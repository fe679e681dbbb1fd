// Copyright 2026 The macc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "macc/delivery.hpp"
#include "macc/error.hpp"
#include "macc/harness.hpp"
#include "macc/indexcoding.hpp"
#include "macc/rates.hpp"

using namespace macc;

namespace {

using Clock = std::chrono::steady_clock;

const std::vector<std::uint32_t> kExampleProfile{2, 2, 2, 1, 1, 1};

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

GammaPolynomial mono(int a, int b, std::int64_t k = 1) { return GammaPolynomial::monomial(a, b, k); }

// Payload bits against alpha for one simulated instance with distinct demands.
struct AlphaTally {
  std::uint64_t instances = 0;
  std::uint64_t violations = 0;

  void record(const TransmissionLog& log, const CacheSubsetTable& table, const DemandVector& d,
              const PrefetchState& state) {
    const auto y = construct_independent_set(table, d, state);
    ++instances;
    if (log.total_payload_bits() < alpha_count(y)) ++violations;
  }
};

AlphaTally g_alpha;

Outcome criterion1() {
  const auto start = Clock::now();
  const auto got = reproduce_example("example2_transmissions");
  const double elapsed = seconds_since(start);
  const bool same = got == read_file(MACC_GOLDEN_DIR "/example2_transmissions.txt");
  return {same && elapsed < 1.0,
          fmt::format("byte-identical={} runtime={:.3f}s (limit 1s)", same, elapsed)};
}

Outcome criterion2() {
  Outcome out;
  for (const char* name : {"example1_association", "example3_A_sets", "example4_E_sets",
                           "example5_Y_sets"}) {
    const bool same = reproduce_example(name) ==
                      read_file(std::string(MACC_GOLDEN_DIR "/") + name + ".txt");
    out.pass = out.pass && same;
    out.detail += fmt::format("{}={} ", name, same ? "match" : "DIFFER");
  }
  return out;
}

Outcome criterion3() {
  const auto t = profile_from_vector(4, 2, kExampleProfile);
  const auto params = SystemParams::make(4, 2, 9, 9, Rational{0});
  const auto alpha = alpha_polynomial(construct_independent_set(t, DemandVector::distinct(t, params)));
  const auto full = mono(2, 2, 2) + mono(1, 3, 6) + mono(0, 4, 9);
  const auto simplified = mono(0, 2, 2) + mono(0, 3, 2) + mono(0, 4, 5);
  const bool a = alpha.expand() == full.expand();
  const bool b = alpha.expand() == simplified.expand();
  return {a && b, fmt::format("alpha/F={} full-form={} simplified-form={}", alpha.to_string(), a, b)};
}

// Random profile with 1..20 users spread over the r-subsets.
CacheSubsetTable random_table(std::mt19937_64& rng, int c, int r, std::uint32_t max_users) {
  const auto subsets = subsets_of_size(c, r);
  const std::uint32_t users = 1 + static_cast<std::uint32_t>(rng() % max_users);
  std::map<Mask, std::uint32_t> counts;
  for (Mask m : subsets) counts[m] = 0;
  for (std::uint32_t u = 0; u < users; ++u) ++counts[subsets[rng() % subsets.size()]];
  return CacheSubsetTable::from_counts(c, r, counts);
}

Outcome criterion4() {
  std::mt19937_64 rng(20240401);
  int ok = 0;
  int distinct = 0;
  std::string first_failure;
  for (int trial = 0; trial < 1000; ++trial) {
    const int c = 2 + static_cast<int>(rng() % 5);
    const int r = 1 + static_cast<int>(rng() % c);
    const auto t = random_table(rng, c, r, 20);
    const std::uint32_t K = t.total_users();
    const bool use_distinct = trial % 2 == 0;
    const std::uint32_t N = use_distinct ? K + static_cast<std::uint32_t>(rng() % 4)
                                         : 1 + static_cast<std::uint32_t>(rng() % K);
    const double M = std::uniform_real_distribution<double>(0.0, N)(rng);
    const auto params = SystemParams::make(c, r, N, K, M, 1024);
    std::vector<std::uint32_t> files(K);
    for (auto& f : files) f = 1 + static_cast<std::uint32_t>(rng() % N);
    const auto d = use_distinct ? DemandVector::distinct(t, params)
                                : DemandVector::from_list(t, params, files);
    const auto state = decentralized_prefetch(params, rng());
    const auto log = generate_transmissions(state, t, d);
    if (verify_delivery(log, state, t, d).ok) {
      ++ok;
    } else if (first_failure.empty()) {
      first_failure = fmt::format(" first failure: trial {} c={} r={} K={}", trial, c, r, K);
    }
    if (d.all_distinct()) {
      ++distinct;
      g_alpha.record(log, t, d, state);
    }
  }
  return {ok == 1000,
          fmt::format("{}/1000 instances decoded ({} with distinct demands){}", ok, distinct,
                      first_failure)};
}

Outcome criterion5() {
  const auto t = profile_from_vector(4, 2, kExampleProfile);
  const auto start = Clock::now();
  Outcome out;
  int within = 0;
  // gamma = M / N with N = 9.
  const std::vector<std::pair<std::string, Rational>> memories{
      {"0.1", Rational{9, 10}}, {"1/3", Rational{3}}, {"0.5", Rational{9, 2}}, {"0.8", Rational{36, 5}}};
  for (const auto& [label, M] : memories) {
    const auto params = SystemParams::make(4, 2, 9, 9, M, std::uint64_t{1} << 17);
    const double analytic = rate_per_user(t).per_user(params.gamma());
    const auto d = DemandVector::distinct(t, params);
    double worst_here = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto state = decentralized_prefetch(params, seed);
      const auto log = generate_transmissions(state, t, d);
      const double rel = std::abs(measured_rate_per_user(log, params) - analytic) / analytic;
      worst_here = std::max(worst_here, rel);
      if (rel <= 0.02) ++within;
      g_alpha.record(log, t, d, state);
    }
    out.detail += fmt::format("g={} max_rel={:.4f} ", label, worst_here);
  }
  const double elapsed = seconds_since(start);
  out.pass = within == 40 && elapsed < 30.0;
  out.detail += fmt::format("within-2%={}/40 runtime={:.2f}s (limit 30s)", within, elapsed);
  return out;
}

Outcome criterion6() {
  std::mt19937_64 rng(6);
  int exact_checked = 0;
  int exact_failed = 0;
  int interior_profiles = 0;
  int interior_gaps = 0;
  for (int c = 1; c <= 6; ++c) {
    for (int r = 1; r <= c; ++r) {
      for (int trial = 0; trial < 40; ++trial) {
        const auto t = random_table(rng, c, r, 20);
        const auto rate = rate_per_user(t);
        const auto bound = lower_bound_per_user(t);
        if (r == 1 || r == c - 1 || r == c) {
          ++exact_checked;
          if (!rate.equivalent(bound)) ++exact_failed;
        } else {
          ++interior_profiles;
          for (int k = 1; k < 100; ++k) {
            const Rational g{k, 100};
            if (rate.per_user(g) > bound.per_user(g)) {
              ++interior_gaps;
              break;
            }
          }
        }
      }
    }
  }
  return {exact_failed == 0 && interior_gaps >= 1,
          fmt::format("exact equality {}/{} profiles with r in {{1,c-1,c}}; strict gap in {}/{} "
                      "interior profiles",
                      exact_checked - exact_failed, exact_checked, interior_gaps, interior_profiles)};
}

Outcome criterion7() {
  std::mt19937_64 rng(7);
  int failures = 0;
  int checked = 0;
  for (int c = 1; c <= 8; ++c) {
    for (int trial = 0; trial < 25; ++trial) {
      const auto t = random_table(rng, c, 1, 20);
      GammaPolynomial expect;
      for (std::size_t i = 1; i <= t.size(); ++i) expect.add(0, static_cast<int>(i), t.group(i).users);
      ++checked;
      const auto rate = rate_per_user(t);
      if (rate.users() != t.total_users() || !rate.total().equivalent(expect)) ++failures;
    }
    // L_i = 1: g R(g) = (1-g)(1 - (1-g)^c).
    const auto ones = profile_from_vector(c, 1, std::vector<std::uint32_t>(c, 1));
    const auto cleared = mono(1, 0) * rate_per_user(ones).total();
    ++checked;
    if (!cleared.equivalent(mono(0, 1) - mono(0, c + 1))) ++failures;
  }
  return {failures == 0, fmt::format("{}/{} identities hold", checked - failures, checked)};
}

Outcome criterion8() {
  int failures = 0;
  int grid_points = 0;
  for (int c = 4; c <= 6; ++c) {
    for (int r = 1; r <= c; ++r) {
      const auto params = SystemParams::make(c, r, c, c, Rational{0});
      const auto t = cyclic_profile(params);
      const auto bound = lower_bound_per_user(t);
      if (!bound.equivalent(cyclic_lower_bound(params))) ++failures;
      const auto rate = rate_per_user(t);
      for (int k = 1; k <= 100; ++k) {
        const Rational g{k, 100};
        ++grid_points;
        if (rate.per_user(g) < bound.per_user(g)) ++failures;
      }
    }
  }
  return {failures == 0,
          fmt::format("15 cyclic systems, {} grid points, {} failures", grid_points, failures)};
}

// Atoms of the independent set for a canonical count vector.
std::size_t atom_count(const CacheSubsetTable& t) {
  std::size_t atoms = 0;
  Mask covered = 0;
  for (std::size_t i = 1; i <= t.size(); ++i) {
    covered |= t.group(i).caches;
    atoms += static_cast<std::size_t>(t.group(i).users) << (t.caches() - cardinality(covered));
  }
  return atoms;
}

// Every non-increasing count vector over the r-subsets with at most `limit`
// atoms. Raising any count only adds atoms, so the search prunes cleanly.
void for_each_small_profile(int c, int r, std::size_t limit,
                            const std::function<void(const CacheSubsetTable&)>& visit) {
  const std::size_t n = subsets_of_size(c, r).size();
  std::vector<std::uint32_t> counts(n, 0);
  std::function<void(std::size_t, std::uint32_t)> extend = [&](std::size_t pos, std::uint32_t cap) {
    if (pos == n) {
      const auto t = profile_from_vector(c, r, counts);
      if (t.total_users() > 0) visit(t);
      return;
    }
    for (std::uint32_t v = 0; v <= cap; ++v) {
      counts[pos] = v;
      std::fill(counts.begin() + static_cast<std::ptrdiff_t>(pos) + 1, counts.end(), 0);
      if (atom_count(profile_from_vector(c, r, counts)) > limit) break;
      extend(pos + 1, v);
    }
    counts[pos] = 0;
  };
  extend(0, static_cast<std::uint32_t>(limit));
}

Outcome criterion9() {
  Outcome out;
  std::uint64_t profiles = 0;
  std::uint64_t subsets = 0;
  int atom_failures = 0;
  for (int c = 1; c <= 5; ++c) {
    for (int r = 1; r <= c; ++r) {
      for_each_small_profile(c, r, IndependenceCheck::kExhaustiveAtomLimit, [&](const CacheSubsetTable& t) {
        const auto params = SystemParams::make(c, r, t.total_users(), t.total_users(), Rational{0});
        const auto d = DemandVector::distinct(t, params);
        const auto y = construct_independent_set(t, d);
        const auto report =
            check_generalized_independence(y, build_symbolic_instance(t, d, params.files()));
        ++profiles;
        subsets += report.atom_subsets_checked;
        if (!report.independent || !report.exhaustive_atoms) ++atom_failures;
      });
    }
  }

  // Bit level: small sampled instances whose Y fits in 16 bits.
  std::mt19937_64 rng(9);
  int bit_instances = 0;
  int bit_failures = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int c = 1 + static_cast<int>(rng() % 4);
    const int r = 1 + static_cast<int>(rng() % c);
    const auto t = random_table(rng, c, r, 3);
    const std::uint32_t K = t.total_users();
    const auto params = SystemParams::make(c, r, K, K, std::uniform_real_distribution<double>(0.0, K)(rng),
                                           1 + rng() % 6);
    const auto d = DemandVector::distinct(t, params);
    const auto state = decentralized_prefetch(params, rng());
    const auto y = construct_independent_set(t, d, state);
    if (alpha_count(y) > IndependenceCheck::kExhaustiveBitLimit) continue;
    const auto report = check_generalized_independence(y, build_instance(state, t, d));
    ++bit_instances;
    if (!report.independent || !report.bit_level_checked) ++bit_failures;
  }

  // Mutation 1: a bit the receiver already caches, hidden inside an existing atom.
  bool side_info_caught = false;
  {
    const auto t = profile_from_vector(2, 1, std::vector<std::uint32_t>{1, 1});
    const auto params = SystemParams::make(2, 1, 2, 2, Rational{1}, 6);
    const auto d = DemandVector::distinct(t, params);
    const auto state = decentralized_prefetch(params, 3);
    const Mask own = t.group(1).caches;
    auto y = construct_independent_set(t, d, state);
    for (std::uint32_t bit = 0; bit < 6; ++bit) {
      if (state.placement(1, bit) & own) {
        y.atoms.front().bits.push_back(bit);
        break;
      }
    }
    const auto report = check_generalized_independence(y, build_instance(state, t, d));
    side_info_caught = report.bit_level_checked && !report.independent;
  }

  // Mutation 2: deleting any single transmission breaks exactly its users.
  std::size_t deletions = 0;
  std::size_t deletions_caught = 0;
  {
    const auto t = profile_from_vector(4, 2, kExampleProfile);
    const auto params = SystemParams::make(4, 2, 9, 9, Rational{3}, 1024);
    const auto d = DemandVector::distinct(t, params);
    const auto state = decentralized_prefetch(params, 5);
    const auto log = generate_transmissions(state, t, d);
    for (std::size_t k = 0; k < log.size(); ++k) {
      ++deletions;
      if (!verify_delivery(log.without(k), state, t, d).ok) ++deletions_caught;
    }
  }

  out.pass = atom_failures == 0 && profiles > 0 && bit_failures == 0 && bit_instances > 0 &&
             side_info_caught && deletions > 0 && deletions_caught == deletions;
  out.detail = fmt::format(
      "atom-level {}/{} profiles ({} subsets); bit-level {}/{} instances; side-info mutation {}; "
      "deletions caught {}/{}",
      profiles - atom_failures, profiles, subsets, bit_instances - bit_failures, bit_instances,
      side_info_caught ? "caught" : "MISSED", deletions_caught, deletions);
  return out;
}

Outcome criterion10() {
  return {g_alpha.instances > 0 && g_alpha.violations == 0,
          fmt::format("{} simulated instances, {} with payload below alpha", g_alpha.instances,
                      g_alpha.violations)};
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4}, {5, criterion5},
      {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9}, {10, criterion10}};
  int failed = 0;
  for (const auto& [id, run] : criteria) {
    Outcome out;
    try {
      out = run();
    } catch (const std::exception& e) {
      out = {false, fmt::format("exception: {}", e.what())};
    }
    if (!out.pass) ++failed;
    std::printf("%s criterion %d: %s\n", out.pass ? "PASS" : "FAIL", id, out.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
