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

// Exact rate expressions as polynomials in g = M/N.

#ifndef MACC_RATES_HPP
#define MACC_RATES_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "macc/model.hpp"
#include "macc/polynomial.hpp"

namespace macc {

/// For group i: every C_i + P with P a subset of the other caches, kept only
/// when no earlier group's caches fit inside it. Each subset of [c] of size at
/// least r lands in exactly one family.
struct FamilyA {
  std::size_t group = 0;
  Mask caches = 0;
  std::vector<Mask> complements;  // power set of [c] \ C_i
  std::vector<Mask> members;      // A_(i,k), in the order of `complements`
};

using SetFamilyA = std::vector<FamilyA>;

SetFamilyA build_A_sets(const CacheSubsetTable& table);

/// Achievable rate of the XOR delivery:
///   sum_i L_i sum_k g^(|A_ik|-r) (1-g)^(c-|A_ik|+r)  /  K
RatePolynomial rate_per_user(const CacheSubsetTable& table);

/// Index-coding lower bound on linear schemes:
///   sum_i L_i sum_k g^|E_ik| (1-g)^(c-|E_ik|)  /  K
RatePolynomial lower_bound_per_user(const CacheSubsetTable& table);

/// Shared caches (r = 1): sum_i L_i (1-g)^i / K. kWrongAccessDegree otherwise.
RatePolynomial shared_caching_rate(const CacheSubsetTable& table);

/// Cyclic wrap-around lower bound:
///   [ sum_{k=1}^{K-r} (1-g)^(k+r-1) + r (1-g)^K ] / K
/// kCyclicRequiresKEqualsC unless K == c.
RatePolynomial cyclic_lower_bound(const SystemParams& params);

/// Optimal rate where the achievable rate meets the lower bound (r = 1,
/// r = c - 1, r = c); std::nullopt elsewhere.
std::optional<RatePolynomial> closed_form_optimal(const CacheSubsetTable& table);

struct GapPoint {
  double gamma = 0.0;
  double rate = 0.0;
  double lower_bound = 0.0;
  double gap = 0.0;
};

std::vector<GapPoint> optimality_gap(const CacheSubsetTable& table,
                                     const std::vector<double>& gamma_grid);

}  // namespace macc

#endif  // MACC_RATES_HPP
