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

// Decentralized random placement at bit granularity.
//
// Every (file, bit, cache) triple is an independent Bernoulli(gamma) draw taken
// from a counter-based generator, so the placement of any bit can be
// recomputed from (seed, file, bit) alone. A bit stored in exactly the caches
// of S belongs to the subfile W^file_S.

#ifndef MACC_PREFETCH_HPP
#define MACC_PREFETCH_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "macc/model.hpp"
#include "macc/subset.hpp"

namespace macc {

/// Fixed-point acceptance threshold for a Bernoulli(gamma) draw on 64-bit words.
struct BernoulliThreshold {
  std::uint64_t bound = 0;
  bool always = false;

  static BernoulliThreshold from(const SystemParams& params);
  bool accepts(std::uint64_t word) const { return always || word < bound; }
};

/// Counter-based 64-bit word for draw (seed, file, bit, cache).
std::uint64_t placement_word(std::uint64_t seed, std::uint32_t file, std::uint32_t bit,
                             int cache);

/// Content of bit `bit` of file `file`; a fixed function of its coordinates.
bool file_bit_value(std::uint32_t file, std::uint32_t bit);

class PrefetchState {
 public:
  int caches() const { return caches_; }
  std::uint32_t files() const { return files_; }
  std::uint32_t file_bits() const { return file_bits_; }
  std::uint64_t seed() const { return seed_; }

  /// Set of caches holding bit `bit` of file `file` (1-based file index).
  Mask placement(std::uint32_t file, std::uint32_t bit) const {
    return placements_[file - 1][bit];
  }

  /// Sorted bit positions of W^file_S.
  std::span<const std::uint32_t> subfile(std::uint32_t file, Mask subset) const;

  /// Exact number of bits held by `cache` over all files.
  std::uint64_t cache_load(int cache) const;

  /// Order-sensitive digest of every placement.
  std::uint64_t checksum() const;

  /// Structured text form:
  ///   prefetch c=<c> N=<N> F=<F> seed=<seed>
  ///   file <i>
  ///     <mask hex> <start>+<len>,<start>+<len>,...
  /// Empty subfiles are omitted; runs cover maximal consecutive positions.
  std::string serialize() const;

 private:
  friend PrefetchState decentralized_prefetch(const SystemParams&, std::uint64_t);

  int caches_ = 0;
  std::uint32_t files_ = 0;
  std::uint32_t file_bits_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<std::vector<std::uint16_t>> placements_;  // [file][bit]
  std::vector<std::vector<std::uint32_t>> offsets_;     // [file][mask], 2^c + 1 entries
  std::vector<std::vector<std::uint32_t>> positions_;   // [file] grouped by mask
};

/// Samples a placement for all N files of F = params.file_bits() bits.
PrefetchState decentralized_prefetch(const SystemParams& params, std::uint64_t seed);

/// gamma^|S| (1-gamma)^(c-|S|): the limiting fraction of a file in W_S.
double expected_subfile_fraction(Mask subset, const SystemParams& params);

}  // namespace macc

#endif  // MACC_PREFETCH_HPP
