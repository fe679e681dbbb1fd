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

#include "macc/prefetch.hpp"

#include <cmath>

#include <fmt/format.h>

#include "parallel.hpp"

namespace macc {

namespace {

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kContentKey = 0x6a09e667f3bcc909ULL;

}  // namespace

BernoulliThreshold BernoulliThreshold::from(const SystemParams& params) {
  BernoulliThreshold t;
  if (const auto& exact = params.exact_gamma()) {
    const auto num = static_cast<unsigned __int128>(exact->numerator());
    const auto den = static_cast<unsigned __int128>(exact->denominator());
    if (num >= den) {
      t.always = true;
    } else {
      t.bound = static_cast<std::uint64_t>((num << 64) / den);
    }
    return t;
  }
  const double g = params.gamma();
  if (g >= 1.0) {
    t.always = true;
  } else if (g > 0.0) {
    t.bound = static_cast<std::uint64_t>(std::ldexp(g, 64));
  }
  return t;
}

std::uint64_t placement_word(std::uint64_t seed, std::uint32_t file, std::uint32_t bit,
                             int cache) {
  std::uint64_t h = mix64(seed + kGolden);
  h = mix64(h ^ (static_cast<std::uint64_t>(file) * kGolden));
  h = mix64(h ^ bit);
  return mix64(h ^ (static_cast<std::uint64_t>(cache) << 32));
}

bool file_bit_value(std::uint32_t file, std::uint32_t bit) {
  return (mix64(kContentKey ^ (static_cast<std::uint64_t>(file) << 32 | bit)) & 1U) != 0;
}

std::span<const std::uint32_t> PrefetchState::subfile(std::uint32_t file, Mask subset) const {
  const auto& off = offsets_[file - 1];
  const auto& pos = positions_[file - 1];
  return std::span<const std::uint32_t>(pos).subspan(off[subset], off[subset + 1] - off[subset]);
}

std::uint64_t PrefetchState::cache_load(int cache) const {
  const Mask bit = cache_bit(cache, caches_);
  std::uint64_t load = 0;
  for (std::uint32_t f = 1; f <= files_; ++f) {
    for (Mask m = 0; m <= full_mask(caches_); ++m) {
      if (m & bit) load += subfile(f, m).size();
    }
  }
  return load;
}

std::uint64_t PrefetchState::checksum() const {
  std::uint64_t h = mix64(seed_ ^ files_ ^ (static_cast<std::uint64_t>(file_bits_) << 20));
  for (const auto& file : placements_) {
    for (std::uint16_t m : file) h = mix64(h ^ m) + kGolden;
  }
  return h;
}

std::string PrefetchState::serialize() const {
  std::string out = fmt::format("prefetch c={} N={} F={} seed={}\n", caches_, files_,
                                file_bits_, seed_);
  for (std::uint32_t f = 1; f <= files_; ++f) {
    out += fmt::format("file {}\n", f);
    for (Mask m = 0; m <= full_mask(caches_); ++m) {
      const auto bits = subfile(f, m);
      if (bits.empty()) continue;
      out += fmt::format("  {} ", format_mask_hex(m));
      std::size_t i = 0;
      bool first = true;
      while (i < bits.size()) {
        std::size_t j = i + 1;
        while (j < bits.size() && bits[j] == bits[j - 1] + 1) ++j;
        out += fmt::format("{}{}+{}", first ? "" : ",", bits[i], j - i);
        first = false;
        i = j;
      }
      out += '\n';
    }
  }
  return out;
}

PrefetchState decentralized_prefetch(const SystemParams& params, std::uint64_t seed) {
  const int c = params.caches();
  const auto threshold = BernoulliThreshold::from(params);
  const auto F = static_cast<std::uint32_t>(params.file_bits());
  const std::uint32_t N = params.files();
  const std::size_t subsets = std::size_t{1} << c;

  PrefetchState state;
  state.caches_ = c;
  state.files_ = N;
  state.file_bits_ = F;
  state.seed_ = seed;
  state.placements_.resize(N);
  state.offsets_.resize(N);
  state.positions_.resize(N);

  detail::parallel_for(N, [&](std::size_t fi) {
    const auto file = static_cast<std::uint32_t>(fi + 1);
    auto& placement = state.placements_[fi];
    placement.resize(F);
    std::vector<std::uint32_t> counts(subsets + 1, 0);
    for (std::uint32_t bit = 0; bit < F; ++bit) {
      Mask m = 0;
      for (int cache = 1; cache <= c; ++cache) {
        if (threshold.accepts(placement_word(seed, file, bit, cache))) m |= cache_bit(cache, c);
      }
      placement[bit] = static_cast<std::uint16_t>(m);
      ++counts[m + 1];
    }
    for (std::size_t m = 1; m <= subsets; ++m) counts[m] += counts[m - 1];
    auto& positions = state.positions_[fi];
    positions.resize(F);
    std::vector<std::uint32_t> cursor(counts.begin(), counts.end() - 1);
    for (std::uint32_t bit = 0; bit < F; ++bit) positions[cursor[placement[bit]]++] = bit;
    state.offsets_[fi] = std::move(counts);
  });
  return state;
}

double expected_subfile_fraction(Mask subset, const SystemParams& params) {
  const int s = cardinality(subset);
  const double g = params.gamma();
  return std::pow(g, s) * std::pow(1.0 - g, params.caches() - s);
}

}  // namespace macc
