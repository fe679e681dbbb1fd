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

#include "macc/rates.hpp"

#include <fmt/format.h>

#include "macc/error.hpp"
#include "macc/indexcoding.hpp"

namespace macc {

SetFamilyA build_A_sets(const CacheSubsetTable& table) {
  SetFamilyA families;
  const Mask all = full_mask(table.caches());
  const auto& groups = table.groups();
  for (std::size_t i = 0; i < groups.size(); ++i) {
    FamilyA family;
    family.group = groups[i].index;
    family.caches = groups[i].caches;
    family.complements = subsets_of(all & ~groups[i].caches);
    for (Mask p : family.complements) {
      const Mask candidate = groups[i].caches | p;
      bool claimed = false;
      for (std::size_t j = 0; j < i && !claimed; ++j) {
        claimed = is_subset(groups[j].caches, candidate);
      }
      if (!claimed) family.members.push_back(candidate);
    }
    families.push_back(std::move(family));
  }
  return families;
}

RatePolynomial rate_per_user(const CacheSubsetTable& table) {
  const int c = table.caches();
  const int r = table.access_degree();
  GammaPolynomial total;
  for (const auto& family : build_A_sets(table)) {
    const auto users = static_cast<std::int64_t>(table.group(family.group).users);
    for (Mask a : family.members) {
      const int s = cardinality(a);
      total.add(s - r, c - s + r, users);
    }
  }
  return {total, table.total_users()};
}

RatePolynomial lower_bound_per_user(const CacheSubsetTable& table) {
  const int c = table.caches();
  GammaPolynomial total;
  for (const auto& family : build_E_sets(table)) {
    const auto users = static_cast<std::int64_t>(table.group(family.group).users);
    for (Mask e : family.members) {
      const int s = cardinality(e);
      total.add(s, c - s, users);
    }
  }
  return {total, table.total_users()};
}

RatePolynomial shared_caching_rate(const CacheSubsetTable& table) {
  if (table.access_degree() != 1) {
    throw Error(ErrorCode::kWrongAccessDegree,
                fmt::format("shared caching needs r=1, got r={}", table.access_degree()));
  }
  GammaPolynomial total;
  for (const auto& g : table.groups()) {
    total.add(0, static_cast<int>(g.index), static_cast<std::int64_t>(g.users));
  }
  return {total, table.total_users()};
}

RatePolynomial cyclic_lower_bound(const SystemParams& params) {
  const int c = params.caches();
  const int r = params.access_degree();
  const auto K = static_cast<int>(params.users());
  if (K != c) {
    throw Error(ErrorCode::kCyclicRequiresKEqualsC,
                fmt::format("cyclic access needs K == c, got K={} c={}", K, c));
  }
  GammaPolynomial total;
  for (int k = 1; k <= K - r; ++k) total.add(0, k + r - 1, 1);
  total.add(0, K, r);
  return {total, static_cast<std::uint64_t>(K)};
}

std::optional<RatePolynomial> closed_form_optimal(const CacheSubsetTable& table) {
  const int c = table.caches();
  const int r = table.access_degree();
  const auto& groups = table.groups();
  GammaPolynomial total;
  if (r == c) {
    total.add(0, c, groups.front().users);
  } else if (r == 1) {
    for (const auto& g : groups) total.add(0, static_cast<int>(g.index), g.users);
  } else if (r == c - 1) {
    // L_1 (1-g)^(c-1) + sum_{i>=2} L_i (1-g)^c; equivalently
    // L_1 g (1-g)^(c-1) + sum_{i>=1} L_i (1-g)^c.
    total.add(0, c - 1, groups.front().users);
    for (std::size_t i = 1; i < groups.size(); ++i) total.add(0, c, groups[i].users);
  } else {
    return std::nullopt;
  }
  return RatePolynomial{total, table.total_users()};
}

std::vector<GapPoint> optimality_gap(const CacheSubsetTable& table,
                                     const std::vector<double>& gamma_grid) {
  const auto rate = rate_per_user(table);
  const auto bound = lower_bound_per_user(table);
  std::vector<GapPoint> out;
  out.reserve(gamma_grid.size());
  for (double g : gamma_grid) {
    if (!(g >= 0.0 && g <= 1.0)) {
      throw Error(ErrorCode::kInvalidParameter, fmt::format("gamma={} outside [0, 1]", g));
    }
    GapPoint p;
    p.gamma = g;
    p.rate = rate.per_user(g);
    p.lower_bound = bound.per_user(g);
    p.gap = p.rate - p.lower_bound;
    out.push_back(p);
  }
  return out;
}

}  // namespace macc
