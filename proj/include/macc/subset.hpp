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

// Cache subsets as bit masks.
//
// Caches are numbered 1..c. Cache j occupies bit (c - j) of a mask, so cache 1
// is the most significant bit and the integer value of a mask is exactly the
// decimal reading of its indicator vector b = (b_1, ..., b_c). Every ordering
// in the library ("descending decimal") compares masks as plain integers.

#ifndef MACC_SUBSET_HPP
#define MACC_SUBSET_HPP

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace macc {

using Mask = std::uint32_t;

inline constexpr int kMaxCaches = 16;

constexpr Mask cache_bit(int cache, int c) { return Mask{1} << (c - cache); }

constexpr Mask full_mask(int c) { return (Mask{1} << c) - 1; }

constexpr int cardinality(Mask m) { return std::popcount(m); }

constexpr bool is_subset(Mask inner, Mask outer) { return (inner & ~outer) == 0; }

/// Builds a mask from 1-based cache numbers. Throws kInvalidSubset on a cache
/// outside [1, c] or a repeated cache.
Mask mask_from_caches(std::span<const int> caches, int c);

/// Sorted 1-based cache numbers of `m`.
std::vector<int> caches_of(Mask m, int c);

/// "[1,2]" style rendering; the empty set is "[]".
std::string format_caches(Mask m, int c);

/// "0xc" style rendering of the raw mask value.
std::string format_mask_hex(Mask m);

/// Indicator vector as a string of c digits, cache 1 first ("1100").
std::string format_indicator(Mask m, int c);

/// All s-subsets of [c] in descending decimal order.
std::vector<Mask> subsets_of_size(int c, int s);

/// All subsets of `base` (including the empty set and `base` itself) ordered
/// by descending cardinality, ties broken by descending decimal value.
std::vector<Mask> subsets_of(Mask base);

std::uint64_t binomial(int n, int k);

}  // namespace macc

#endif  // MACC_SUBSET_HPP
