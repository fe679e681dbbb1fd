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

// The index coding instance behind one delivery phase and an explicit
// generalized independent set for it.
//
// Messages are the bits (file, position). A user u_z(l) demanding file d is a
// bundle of receivers, one per bit of d outside its caches; all of them share
// the side information "every bit stored in a cache of C_z". A set of messages
// H is generalized independent when every non-empty subset D of H contains a
// message x demanded by some receiver whose side information misses all of D.
//
// The independent set takes, for each group i, every user of that group and
// every E among the subsets of caches not used by groups 1..i, the bits V^u_E.

#ifndef MACC_INDEXCODING_HPP
#define MACC_INDEXCODING_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "macc/model.hpp"
#include "macc/polynomial.hpp"
#include "macc/prefetch.hpp"

namespace macc {

struct FamilyE {
  std::size_t group = 0;
  Mask covered = 0;            // union of C_1 .. C_group
  std::vector<Mask> members;   // all subsets of [c] \ covered
};

using SetFamilyE = std::vector<FamilyE>;

SetFamilyE build_E_sets(const CacheSubsetTable& table);

struct ReceiverBundle {
  UserLabel user;
  std::uint32_t file = 0;
  std::vector<std::uint32_t> demanded_bits;  // empty for symbolic instances
};

struct ReceiverGroup {
  std::size_t group = 0;
  Mask caches = 0;
  std::vector<ReceiverBundle> users;
};

/// Identifies the (table, demands, placement) an object was derived from.
struct InstanceKey {
  int caches = 0;
  int access_degree = 0;
  std::vector<std::uint32_t> profile;
  std::vector<Mask> group_masks;
  std::vector<std::uint32_t> demands;
  bool sampled = false;
  std::uint64_t placement_checksum = 0;

  friend bool operator==(const InstanceKey&, const InstanceKey&) = default;
};

/// Receivers are kept per group: side information is never materialized, it
/// is answered from the placement on demand. A sampled instance holds a
/// pointer to its PrefetchState, which must outlive it.
class IndexCodingInstance {
 public:
  int caches() const { return caches_; }
  std::uint32_t files() const { return files_; }
  std::uint32_t file_bits() const { return file_bits_; }
  bool sampled() const { return state_ != nullptr; }
  const PrefetchState* state() const { return state_; }
  const std::vector<ReceiverGroup>& groups() const { return groups_; }
  const InstanceKey& key() const { return key_; }

  /// Total number of single-bit receivers (sampled instances only).
  std::uint64_t receiver_count() const;

  /// Whether message (file, bit) is side information of group z.
  bool in_side_info(std::size_t group, std::uint32_t file, std::uint32_t bit) const;

 private:
  friend IndexCodingInstance build_instance(const PrefetchState&, const CacheSubsetTable&,
                                            const DemandVector&);
  friend IndexCodingInstance build_symbolic_instance(const CacheSubsetTable&,
                                                     const DemandVector&, std::uint32_t);

  int caches_ = 0;
  std::uint32_t files_ = 0;
  std::uint32_t file_bits_ = 0;
  const PrefetchState* state_ = nullptr;
  std::vector<ReceiverGroup> groups_;
  InstanceKey key_;
};

IndexCodingInstance build_instance(const PrefetchState& state, const CacheSubsetTable& table,
                                   const DemandVector& demands);

/// Instance over (file, subfile) classes instead of bits.
IndexCodingInstance build_symbolic_instance(const CacheSubsetTable& table,
                                            const DemandVector& demands, std::uint32_t files);

/// V^{u_i(l)}_S: one block of the independent set.
struct Atom {
  std::size_t group = 0;
  std::size_t slot = 0;
  Mask subfile = 0;
  std::uint32_t file = 0;
  std::vector<std::uint32_t> bits;  // empty when symbolic
};

struct IndependentSet {
  int caches = 0;
  int access_degree = 0;
  bool symbolic = true;
  std::vector<Atom> atoms;  // ordered by group, then E member, then slot
  InstanceKey key;

  /// One line per atom, "i=<group> S=<hex> l=<slot> file=<file> size=<size>",
  /// then "alpha=<size>". Sizes are bit counts, or "(a,b)" monomials of F when
  /// symbolic.
  std::string serialize() const;
};

/// kRequiresDistinctDemands when two users want the same file.
IndependentSet construct_independent_set(const CacheSubsetTable& table,
                                         const DemandVector& demands,
                                         const PrefetchState& state);
IndependentSet construct_independent_set(const CacheSubsetTable& table,
                                         const DemandVector& demands);

struct IndependenceCheck {
  enum class Mode { kExhaustive, kSampled };

  Mode mode = Mode::kExhaustive;
  std::size_t samples = 10000;
  std::uint64_t seed = 0;

  /// Atom counts up to this are enumerated in full in kExhaustive mode.
  static constexpr std::size_t kExhaustiveAtomLimit = 20;
  /// Sampled instances with at most this many bits in Y are also checked bit by bit.
  static constexpr std::uint64_t kExhaustiveBitLimit = 16;
};

struct IndependenceReport {
  bool independent = true;
  bool exhaustive_atoms = false;
  std::uint64_t atom_subsets_checked = 0;
  bool bit_level_checked = false;
  std::uint64_t bit_subsets_checked = 0;
  std::string witness;  // first failing subset, when any
};

/// Checks that every subset of Y lies in J(I). Subsets of atoms are enumerated
/// in full when there are at most 20 atoms, otherwise all singletons and pairs
/// plus `samples` uniformly random subsets. kInstanceMismatch when Y and the
/// instance come from different systems.
IndependenceReport check_generalized_independence(const IndependentSet& y,
                                                  const IndexCodingInstance& instance,
                                                  const IndependenceCheck& options = {});

/// |Y| in bits. Throws kInvalidParameter for a symbolic set.
std::uint64_t alpha_count(const IndependentSet& y);

/// |Y| / F as a polynomial in g: the sum over atoms of g^|S| (1-g)^(c-|S|).
GammaPolynomial alpha_polynomial(const IndependentSet& y);

}  // namespace macc

#endif  // MACC_INDEXCODING_HPP
