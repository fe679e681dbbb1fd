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

#include "macc/subset.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "macc/error.hpp"

namespace macc {

Mask mask_from_caches(std::span<const int> caches, int c) {
  Mask m = 0;
  for (int cache : caches) {
    if (cache < 1 || cache > c) {
      throw Error(ErrorCode::kInvalidSubset,
                  fmt::format("cache {} outside [1, {}]", cache, c));
    }
    const Mask bit = cache_bit(cache, c);
    if (m & bit) {
      throw Error(ErrorCode::kInvalidSubset, fmt::format("cache {} listed twice", cache));
    }
    m |= bit;
  }
  return m;
}

std::vector<int> caches_of(Mask m, int c) {
  std::vector<int> out;
  for (int j = 1; j <= c; ++j) {
    if (m & cache_bit(j, c)) out.push_back(j);
  }
  return out;
}

std::string format_caches(Mask m, int c) {
  return fmt::format("[{}]", fmt::join(caches_of(m, c), ","));
}

std::string format_mask_hex(Mask m) { return fmt::format("{:#x}", m); }

std::string format_indicator(Mask m, int c) {
  std::string s;
  for (int j = 1; j <= c; ++j) s.push_back((m & cache_bit(j, c)) ? '1' : '0');
  return s;
}

std::vector<Mask> subsets_of_size(int c, int s) {
  std::vector<Mask> out;
  if (s < 0 || s > c) return out;
  for (Mask m = full_mask(c) + 1; m-- > 0;) {
    if (cardinality(m) == s) out.push_back(m);
  }
  return out;
}

std::vector<Mask> subsets_of(Mask base) {
  std::vector<Mask> out;
  // Standard submask walk: visits every submask of base in decreasing order.
  for (Mask m = base;; m = (m - 1) & base) {
    out.push_back(m);
    if (m == 0) break;
  }
  std::stable_sort(out.begin(), out.end(), [](Mask a, Mask b) {
    return cardinality(a) > cardinality(b);
  });
  return out;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) result = result * static_cast<std::uint64_t>(n - k + i) / i;
  return result;
}

}  // namespace macc
