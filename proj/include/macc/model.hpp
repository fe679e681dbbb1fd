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

// Problem parameters, the canonical user-to-cache association table, and
// demand vectors.

#ifndef MACC_MODEL_HPP
#define MACC_MODEL_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "macc/polynomial.hpp"
#include "macc/subset.hpp"

namespace macc {

/// Scalar parameters of a multi-access caching system. gamma is always
/// derived from M and N.
class SystemParams {
 public:
  /// Exact construction; gamma is kept as the rational M/N.
  static SystemParams make(int caches, int access_degree, std::uint32_t files,
                           std::uint32_t users, Rational memory, std::uint64_t file_bits = 1);
  /// Real-valued memory. Integral values are promoted to the exact form.
  static SystemParams make(int caches, int access_degree, std::uint32_t files,
                           std::uint32_t users, double memory, std::uint64_t file_bits = 1);

  int caches() const { return caches_; }
  int access_degree() const { return access_degree_; }
  std::uint32_t files() const { return files_; }
  std::uint32_t users() const { return users_; }
  double memory() const { return memory_; }
  double gamma() const { return gamma_; }
  const std::optional<Rational>& exact_gamma() const { return exact_gamma_; }
  std::uint64_t file_bits() const { return file_bits_; }

  /// Rate-optimality statements need N >= K.
  bool distinct_demands_valid() const { return files_ >= users_; }

  SystemParams with_users(std::uint32_t users) const;
  SystemParams with_access_degree(int access_degree) const;
  SystemParams with_file_bits(std::uint64_t file_bits) const;

 private:
  SystemParams() = default;
  void validate() const;

  int caches_ = 1;
  int access_degree_ = 1;
  std::uint32_t files_ = 1;
  std::uint32_t users_ = 1;
  double memory_ = 0.0;
  double gamma_ = 0.0;
  std::optional<Rational> exact_gamma_;
  std::optional<Rational> exact_memory_;
  std::uint64_t file_bits_ = 1;
};

/// u_i(l): the l-th user attached to the i-th cache subset. Both 1-based.
struct UserLabel {
  std::size_t group = 1;
  std::size_t slot = 1;

  friend auto operator<=>(const UserLabel&, const UserLabel&) = default;
};

struct CacheGroup {
  std::size_t index = 0;  // 1-based position in canonical order
  Mask caches = 0;
  std::uint32_t users = 0;
};

/// One entry of a user-supplied association: the caches (1-based) and the
/// number of users attached to exactly those caches.
struct ProfileEntry {
  std::vector<int> caches;
  std::uint32_t users = 0;
};

using RawProfile = std::vector<ProfileEntry>;

/// All C(c, r) cache subsets of size r in canonical order: user count
/// non-increasing, ties by descending decimal value of the indicator vector.
/// Empty subsets are kept.
class CacheSubsetTable {
 public:
  /// Canonicalizes a mask-keyed count map. Keys must have cardinality r.
  static CacheSubsetTable from_counts(int caches, int access_degree,
                                      const std::map<Mask, std::uint32_t>& counts);

  int caches() const { return caches_; }
  int access_degree() const { return access_degree_; }
  std::size_t size() const { return groups_.size(); }
  const std::vector<CacheGroup>& groups() const { return groups_; }
  /// 1-based.
  const CacheGroup& group(std::size_t index) const { return groups_.at(index - 1); }

  std::uint32_t total_users() const { return total_users_; }

  /// The profile vector (L_1, ..., L_{C(c,r)}).
  std::vector<std::uint32_t> profile() const;

  std::map<Mask, std::uint32_t> counts() const;

  /// Users flattened row-major over the canonical order: u_1(1), u_1(2), ...
  std::vector<UserLabel> users() const;
  /// 0-based position of `user` in users().
  std::size_t flat_index(UserLabel user) const;
  UserLabel user_at(std::size_t flat) const;
  bool contains(UserLabel user) const;

  friend bool operator==(const CacheSubsetTable& a, const CacheSubsetTable& b);

 private:
  int caches_ = 0;
  int access_degree_ = 0;
  std::uint32_t total_users_ = 0;
  std::vector<CacheGroup> groups_;
  std::vector<std::size_t> first_flat_;  // flat index of u_i(1)
};

/// Canonical table from a raw association. Missing subsets count zero.
/// Errors: kInvalidSubset (wrong cardinality or cache out of range),
/// kDuplicateSubset, kInvalidParameter (counts do not sum to K, or c/r mismatch).
CacheSubsetTable canonicalize_profile(const RawProfile& raw, const SystemParams& params);

/// Cyclic wrap-around access: user i reaches caches i, i+1, ..., i+r-1 (mod c).
/// Requires K == c. For r == c every window is [c] and the counts accumulate.
CacheSubsetTable cyclic_profile(const SystemParams& params);

/// k users on every r-subset.
CacheSubsetTable uniform_profile(int caches, int access_degree, std::uint32_t users_per_subset);

/// Assigns L_i to the i-th r-subset in descending decimal order, then
/// canonicalizes. A non-increasing vector keeps its order.
CacheSubsetTable profile_from_vector(int caches, int access_degree,
                                     std::span<const std::uint32_t> profile);

/// File demanded by each user, flattened in CacheSubsetTable::users() order.
/// File indices are 1-based.
class DemandVector {
 public:
  /// User k (flat, 0-based) demands file k+1. Requires N >= K.
  static DemandVector distinct(const CacheSubsetTable& table, const SystemParams& params);
  /// Errors: kIncompleteDemandVector when the list does not cover every user,
  /// kInvalidParameter for file indices outside [1, N].
  static DemandVector from_list(const CacheSubsetTable& table, const SystemParams& params,
                                std::vector<std::uint32_t> files);

  std::uint32_t file_of(const CacheSubsetTable& table, UserLabel user) const;
  const std::vector<std::uint32_t>& files() const { return files_; }
  std::size_t size() const { return files_.size(); }
  bool all_distinct() const;

  friend bool operator==(const DemandVector&, const DemandVector&) = default;

 private:
  std::vector<std::uint32_t> files_;
};

}  // namespace macc

#endif  // MACC_MODEL_HPP
