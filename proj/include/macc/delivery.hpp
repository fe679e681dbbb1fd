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

// XOR delivery for multi-access decentralized caching, and a bit-exact decoder
// that replays it.
//
// For every S subset of [c] with |S| >= r and every slot l up to the largest
// population among groups inside S, the server sends
//
//     XOR over groups i with C_i in S and l <= L_i of  V^{u_i(l)}_{S \ C_i}
//
// where V^u_D is the part of user u's demanded file stored exactly in the
// caches of D. Groups with fewer than l users contribute nothing.
//
// Records are ordered by |S| ascending, then S by descending decimal value,
// then l ascending. Terms inside a record are ordered by group index.

#ifndef MACC_DELIVERY_HPP
#define MACC_DELIVERY_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "macc/model.hpp"
#include "macc/polynomial.hpp"
#include "macc/prefetch.hpp"

namespace macc {

struct Term {
  std::size_t group = 0;
  UserLabel user;
  std::uint32_t file = 0;
  Mask subfile = 0;                 // S \ C_group
  std::vector<std::uint32_t> bits;  // ascending; empty in symbolic logs
};

struct Transmission {
  Mask subset = 0;
  std::size_t slot = 0;
  std::vector<Term> terms;
  std::uint64_t payload_length = 0;  // max term size; 0 in symbolic logs
  std::vector<std::uint64_t> payload;  // packed XOR, bit k of the padded terms
};

class TransmissionLog {
 public:
  TransmissionLog(int caches, int access_degree, bool symbolic)
      : caches_(caches), access_degree_(access_degree), symbolic_(symbolic) {}

  int caches() const { return caches_; }
  int access_degree() const { return access_degree_; }
  bool symbolic() const { return symbolic_; }

  const std::vector<Transmission>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }

  void append(Transmission record);
  const Transmission* find(Mask subset, std::size_t slot) const;

  /// Copy without the record at `index`.
  TransmissionLog without(std::size_t index) const;

  std::uint64_t total_payload_bits() const;

  /// Expected size, as a fraction of F, of every term of a record for S:
  /// g^(|S|-r) (1-g)^(c-|S|+r).
  GammaPolynomial expected_term_size(Mask subset) const;

  /// One record per line:
  ///   S=<hex> l=<slot> terms=(<group>,<file>,<hex>)(...)... len=<length>
  /// where <length> is the bit count, or "(a,b)" for g^a (1-g)^b F in
  /// symbolic logs.
  std::string serialize() const;

 private:
  int caches_;
  int access_degree_;
  bool symbolic_;
  std::vector<Transmission> records_;
  std::map<std::pair<Mask, std::size_t>, std::size_t> index_;
};

/// Largest L_i over groups with C_i in S. kSubsetTooSmall when |S| < r.
std::uint32_t leader_count(Mask subset, const CacheSubsetTable& table);

/// Bit-level delivery against a sampled placement.
TransmissionLog generate_transmissions(const PrefetchState& state, const CacheSubsetTable& table,
                                       const DemandVector& demands);

/// Same record structure with (file, subfile) labels only.
TransmissionLog symbolic_transmissions(const CacheSubsetTable& table,
                                       const DemandVector& demands);

/// Replays the decoder of `user`. The user sees the payloads and the content
/// of its own r caches; `state` is consulted only to answer "is this bit in
/// my caches, and what is it". Returns the sorted positions of the demanded
/// file the user holds afterwards. Throws DecodingFailure when a needed record
/// is missing, a foreign term is not covered by the user's caches, or a
/// recovered bit has the wrong value.
std::vector<std::uint32_t> decode_user(const TransmissionLog& log, const PrefetchState& state,
                                       const CacheSubsetTable& table,
                                       const DemandVector& demands, UserLabel user);

struct UserOutcome {
  UserLabel user;
  double recovered_fraction = 0.0;
  std::optional<std::string> failure;
};

struct DeliveryReport {
  bool ok = false;
  std::vector<UserOutcome> per_user;  // CacheSubsetTable::users() order

  std::vector<UserLabel> failed_users() const;
};

DeliveryReport verify_delivery(const TransmissionLog& log, const PrefetchState& state,
                               const CacheSubsetTable& table, const DemandVector& demands);

/// Sum of payload lengths over F K.
double measured_rate_per_user(const TransmissionLog& log, const SystemParams& params);

}  // namespace macc

#endif  // MACC_DELIVERY_HPP
