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

#include "macc/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "macc/error.hpp"

namespace macc {

SystemParams SystemParams::make(int caches, int access_degree, std::uint32_t files,
                                std::uint32_t users, Rational memory, std::uint64_t file_bits) {
  SystemParams p;
  p.caches_ = caches;
  p.access_degree_ = access_degree;
  p.files_ = files;
  p.users_ = users;
  p.file_bits_ = file_bits;
  p.exact_memory_ = memory;
  p.memory_ = boost::rational_cast<double>(memory);
  if (files > 0) {
    p.exact_gamma_ = memory / static_cast<std::int64_t>(files);
    p.gamma_ = boost::rational_cast<double>(*p.exact_gamma_);
  }
  p.validate();
  return p;
}

SystemParams SystemParams::make(int caches, int access_degree, std::uint32_t files,
                                std::uint32_t users, double memory, std::uint64_t file_bits) {
  if (std::isfinite(memory) && memory == std::floor(memory) && std::abs(memory) < 1e15) {
    return make(caches, access_degree, files, users,
                Rational{static_cast<std::int64_t>(memory)}, file_bits);
  }
  SystemParams p;
  p.caches_ = caches;
  p.access_degree_ = access_degree;
  p.files_ = files;
  p.users_ = users;
  p.file_bits_ = file_bits;
  p.memory_ = memory;
  p.gamma_ = files > 0 ? memory / static_cast<double>(files) : 0.0;
  p.validate();
  return p;
}

void SystemParams::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::kInvalidParameter, msg); };
  if (caches_ < 1 || caches_ > kMaxCaches) {
    fail(fmt::format("c={} outside [1, {}]", caches_, kMaxCaches));
  }
  if (access_degree_ < 1 || access_degree_ > caches_) {
    fail(fmt::format("r={} outside [1, c={}]", access_degree_, caches_));
  }
  if (files_ < 1) fail("N must be positive");
  if (users_ < 1) fail("K must be positive");
  if (file_bits_ < 1 || file_bits_ > 0xffffffffULL) fail("F outside [1, 2^32)");
  if (!(memory_ >= 0.0) || memory_ > static_cast<double>(files_)) {
    fail(fmt::format("M={} outside [0, N={}]", memory_, files_));
  }
}

SystemParams SystemParams::with_users(std::uint32_t users) const {
  SystemParams p = *this;
  p.users_ = users;
  p.validate();
  return p;
}

SystemParams SystemParams::with_access_degree(int access_degree) const {
  SystemParams p = *this;
  p.access_degree_ = access_degree;
  p.validate();
  return p;
}

SystemParams SystemParams::with_file_bits(std::uint64_t file_bits) const {
  SystemParams p = *this;
  p.file_bits_ = file_bits;
  p.validate();
  return p;
}

CacheSubsetTable CacheSubsetTable::from_counts(int caches, int access_degree,
                                               const std::map<Mask, std::uint32_t>& counts) {
  if (caches < 1 || caches > kMaxCaches || access_degree < 1 || access_degree > caches) {
    throw Error(ErrorCode::kInvalidParameter,
                fmt::format("c={} r={} not a valid cache system", caches, access_degree));
  }
  for (const auto& [mask, count] : counts) {
    if (!is_subset(mask, full_mask(caches)) || cardinality(mask) != access_degree) {
      throw Error(ErrorCode::kInvalidSubset,
                  fmt::format("{} is not a {}-subset of [{}]", format_mask_hex(mask),
                              access_degree, caches));
    }
  }

  CacheSubsetTable table;
  table.caches_ = caches;
  table.access_degree_ = access_degree;
  for (Mask m : subsets_of_size(caches, access_degree)) {
    auto it = counts.find(m);
    table.groups_.push_back({0, m, it == counts.end() ? 0U : it->second});
  }
  // subsets_of_size is already in descending decimal order, so a stable sort on
  // the count alone realizes the tie-break.
  std::stable_sort(table.groups_.begin(), table.groups_.end(),
                   [](const CacheGroup& a, const CacheGroup& b) { return a.users > b.users; });
  std::size_t flat = 0;
  for (std::size_t i = 0; i < table.groups_.size(); ++i) {
    table.groups_[i].index = i + 1;
    table.first_flat_.push_back(flat);
    flat += table.groups_[i].users;
  }
  table.total_users_ = static_cast<std::uint32_t>(flat);
  return table;
}

std::vector<std::uint32_t> CacheSubsetTable::profile() const {
  std::vector<std::uint32_t> out;
  out.reserve(groups_.size());
  for (const auto& g : groups_) out.push_back(g.users);
  return out;
}

std::map<Mask, std::uint32_t> CacheSubsetTable::counts() const {
  std::map<Mask, std::uint32_t> out;
  for (const auto& g : groups_) out[g.caches] = g.users;
  return out;
}

std::vector<UserLabel> CacheSubsetTable::users() const {
  std::vector<UserLabel> out;
  out.reserve(total_users_);
  for (const auto& g : groups_) {
    for (std::size_t l = 1; l <= g.users; ++l) out.push_back({g.index, l});
  }
  return out;
}

bool CacheSubsetTable::contains(UserLabel user) const {
  return user.group >= 1 && user.group <= groups_.size() && user.slot >= 1 &&
         user.slot <= groups_[user.group - 1].users;
}

std::size_t CacheSubsetTable::flat_index(UserLabel user) const {
  if (!contains(user)) {
    throw Error(ErrorCode::kInvalidParameter,
                fmt::format("no user u_{}({}) in table", user.group, user.slot));
  }
  return first_flat_[user.group - 1] + user.slot - 1;
}

UserLabel CacheSubsetTable::user_at(std::size_t flat) const {
  if (flat >= total_users_) {
    throw Error(ErrorCode::kInvalidParameter, fmt::format("user index {} >= K", flat));
  }
  auto it = std::upper_bound(first_flat_.begin(), first_flat_.end(), flat);
  // Zero-count groups share a start offset with their successor; upper_bound
  // lands after the last of them, which is the populated one.
  const auto group = static_cast<std::size_t>(it - first_flat_.begin());
  return {group, flat - first_flat_[group - 1] + 1};
}

bool operator==(const CacheSubsetTable& a, const CacheSubsetTable& b) {
  if (a.caches_ != b.caches_ || a.access_degree_ != b.access_degree_ ||
      a.groups_.size() != b.groups_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.groups_.size(); ++i) {
    if (a.groups_[i].caches != b.groups_[i].caches || a.groups_[i].users != b.groups_[i].users) {
      return false;
    }
  }
  return true;
}

CacheSubsetTable canonicalize_profile(const RawProfile& raw, const SystemParams& params) {
  const int c = params.caches();
  const int r = params.access_degree();
  std::map<Mask, std::uint32_t> counts;
  std::uint64_t sum = 0;
  for (const auto& entry : raw) {
    const Mask m = mask_from_caches(entry.caches, c);
    if (cardinality(m) != r) {
      throw Error(ErrorCode::kInvalidSubset,
                  fmt::format("{} has {} caches, expected r={}", format_caches(m, c),
                              cardinality(m), r));
    }
    if (!counts.emplace(m, entry.users).second) {
      throw Error(ErrorCode::kDuplicateSubset, fmt::format("{} listed twice", format_caches(m, c)));
    }
    sum += entry.users;
  }
  if (sum != params.users()) {
    throw Error(ErrorCode::kInvalidParameter,
                fmt::format("profile has {} users but K={}", sum, params.users()));
  }
  return CacheSubsetTable::from_counts(c, r, counts);
}

CacheSubsetTable cyclic_profile(const SystemParams& params) {
  const int c = params.caches();
  const int r = params.access_degree();
  if (params.users() != static_cast<std::uint32_t>(c)) {
    throw Error(ErrorCode::kCyclicRequiresKEqualsC,
                fmt::format("cyclic access needs K == c, got K={} c={}", params.users(), c));
  }
  std::map<Mask, std::uint32_t> counts;
  for (int start = 1; start <= c; ++start) {
    Mask window = 0;
    for (int k = 0; k < r; ++k) window |= cache_bit((start - 1 + k) % c + 1, c);
    ++counts[window];
  }
  return CacheSubsetTable::from_counts(c, r, counts);
}

CacheSubsetTable uniform_profile(int caches, int access_degree, std::uint32_t users_per_subset) {
  std::map<Mask, std::uint32_t> counts;
  for (Mask m : subsets_of_size(caches, access_degree)) counts[m] = users_per_subset;
  return CacheSubsetTable::from_counts(caches, access_degree, counts);
}

CacheSubsetTable profile_from_vector(int caches, int access_degree,
                                     std::span<const std::uint32_t> profile) {
  const auto subsets = subsets_of_size(caches, access_degree);
  if (profile.size() > subsets.size()) {
    throw Error(ErrorCode::kInvalidParameter,
                fmt::format("profile has {} entries but C({},{})={}", profile.size(), caches,
                            access_degree, subsets.size()));
  }
  std::map<Mask, std::uint32_t> counts;
  for (std::size_t i = 0; i < profile.size(); ++i) counts[subsets[i]] = profile[i];
  return CacheSubsetTable::from_counts(caches, access_degree, counts);
}

DemandVector DemandVector::distinct(const CacheSubsetTable& table, const SystemParams& params) {
  if (params.files() < table.total_users()) {
    throw Error(ErrorCode::kInvalidParameter,
                fmt::format("distinct demands need N >= K, got N={} K={}", params.files(),
                            table.total_users()));
  }
  DemandVector d;
  d.files_.resize(table.total_users());
  for (std::uint32_t k = 0; k < table.total_users(); ++k) d.files_[k] = k + 1;
  return d;
}

DemandVector DemandVector::from_list(const CacheSubsetTable& table, const SystemParams& params,
                                     std::vector<std::uint32_t> files) {
  if (files.size() != table.total_users()) {
    throw Error(ErrorCode::kIncompleteDemandVector,
                fmt::format("{} demands for {} users", files.size(), table.total_users()));
  }
  for (std::size_t k = 0; k < files.size(); ++k) {
    if (files[k] < 1 || files[k] > params.files()) {
      throw Error(ErrorCode::kInvalidParameter,
                  fmt::format("demand[{}]={} outside [1, N={}]", k, files[k], params.files()));
    }
  }
  DemandVector d;
  d.files_ = std::move(files);
  return d;
}

std::uint32_t DemandVector::file_of(const CacheSubsetTable& table, UserLabel user) const {
  const std::size_t flat = table.flat_index(user);
  if (flat >= files_.size()) {
    throw Error(ErrorCode::kIncompleteDemandVector,
                fmt::format("no demand for u_{}({})", user.group, user.slot));
  }
  return files_[flat];
}

bool DemandVector::all_distinct() const {
  std::set<std::uint32_t> seen(files_.begin(), files_.end());
  return seen.size() == files_.size();
}

}  // namespace macc
