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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "macc/error.hpp"
#include "macc/subset.hpp"

using namespace macc;

TEST_CASE("cache 1 is the most significant bit") {
  CHECK(cache_bit(1, 4) == 0x8);
  CHECK(cache_bit(4, 4) == 0x1);
  const std::vector<int> caches{1, 2};
  CHECK(mask_from_caches(caches, 4) == 0xc);
  CHECK(format_indicator(0xc, 4) == "1100");
  CHECK(format_indicator(0x3, 4) == "0011");
  CHECK(format_caches(0xa, 4) == "[1,3]");
  CHECK(format_caches(0, 4) == "[]");
  CHECK(format_mask_hex(0xe) == "0xe");
  CHECK(format_mask_hex(0) == "0x0");
  CHECK(caches_of(0x5, 4) == std::vector<int>{2, 4});
}

TEST_CASE("mask_from_caches rejects bad input") {
  const std::vector<int> out_of_range{0, 2};
  CHECK_THROWS_AS(mask_from_caches(out_of_range, 4), Error);
  const std::vector<int> too_big{5};
  CHECK_THROWS_AS(mask_from_caches(too_big, 4), Error);
  const std::vector<int> repeated{2, 2};
  CHECK_THROWS_AS(mask_from_caches(repeated, 4), Error);
}

TEST_CASE("subsets_of_size enumerates in descending decimal order") {
  CHECK(subsets_of_size(4, 2) == std::vector<Mask>{0xc, 0xa, 0x9, 0x6, 0x5, 0x3});
  CHECK(subsets_of_size(4, 0) == std::vector<Mask>{0x0});
  CHECK(subsets_of_size(4, 4) == std::vector<Mask>{0xf});
  for (int c = 1; c <= 10; ++c) {
    for (int s = 0; s <= c; ++s) {
      const auto subsets = subsets_of_size(c, s);
      REQUIRE(subsets.size() == binomial(c, s));
      CHECK(std::is_sorted(subsets.rbegin(), subsets.rend()));
      CHECK(std::adjacent_find(subsets.begin(), subsets.end()) == subsets.end());
      for (Mask m : subsets) {
        CHECK(cardinality(m) == s);
        CHECK(is_subset(m, full_mask(c)));
      }
    }
  }
}

TEST_CASE("subsets_of lists the power set by size then decimal") {
  CHECK(subsets_of(0x3) == std::vector<Mask>{0x3, 0x2, 0x1, 0x0});
  CHECK(subsets_of(0x0) == std::vector<Mask>{0x0});
  for (Mask base : {0x0u, 0x5u, 0x2du, 0xffu}) {
    const auto family = subsets_of(base);
    CHECK(family.size() == (std::size_t{1} << cardinality(base)));
    std::set<Mask> seen(family.begin(), family.end());
    CHECK(seen.size() == family.size());
    for (std::size_t k = 1; k < family.size(); ++k) {
      const int a = cardinality(family[k - 1]);
      const int b = cardinality(family[k]);
      CHECK((a > b || (a == b && family[k - 1] > family[k])));
      CHECK(is_subset(family[k], base));
    }
  }
}

TEST_CASE("binomial") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(16, 8) == 12870);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(5, 6) == 0);
}
