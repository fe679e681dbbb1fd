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

#include "macc/delivery.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "macc/error.hpp"
#include "parallel.hpp"

namespace macc {

namespace {

bool payload_bit(const std::vector<std::uint64_t>& words, std::size_t k) {
  return ((words[k / 64] >> (k % 64)) & 1U) != 0;
}

void flip_payload_bit(std::vector<std::uint64_t>& words, std::size_t k) {
  words[k / 64] ^= std::uint64_t{1} << (k % 64);
}

TransmissionLog build_log(const CacheSubsetTable& table, const DemandVector& demands,
                          const PrefetchState* state) {
  if (demands.size() != table.total_users()) {
    throw Error(ErrorCode::kIncompleteDemandVector,
                fmt::format("{} demands for {} users", demands.size(), table.total_users()));
  }
  const int c = table.caches();
  const int r = table.access_degree();
  if (state && state->caches() != c) {
    throw Error(ErrorCode::kInvalidParameter,
                fmt::format("placement has c={} but table has c={}", state->caches(), c));
  }

  TransmissionLog log(c, r, state == nullptr);
  std::vector<const CacheGroup*> inside;
  for (int s = r; s <= c; ++s) {
    for (Mask subset : subsets_of_size(c, s)) {
      inside.clear();
      std::uint32_t leaders = 0;
      for (const auto& g : table.groups()) {
        if (is_subset(g.caches, subset)) {
          inside.push_back(&g);
          leaders = std::max(leaders, g.users);
        }
      }
      for (std::size_t slot = 1; slot <= leaders; ++slot) {
        Transmission t;
        t.subset = subset;
        t.slot = slot;
        for (const CacheGroup* g : inside) {
          if (slot > g->users) continue;
          Term term;
          term.group = g->index;
          term.user = {g->index, slot};
          term.file = demands.file_of(table, term.user);
          term.subfile = subset & ~g->caches;
          if (state) {
            if (term.file > state->files()) {
              throw Error(ErrorCode::kInvalidParameter,
                          fmt::format("demanded file {} not in placement", term.file));
            }
            const auto bits = state->subfile(term.file, term.subfile);
            term.bits.assign(bits.begin(), bits.end());
            t.payload_length = std::max<std::uint64_t>(t.payload_length, bits.size());
          }
          t.terms.push_back(std::move(term));
        }
        if (state) {
          t.payload.assign((t.payload_length + 63) / 64, 0);
          for (const auto& term : t.terms) {
            for (std::size_t k = 0; k < term.bits.size(); ++k) {
              if (file_bit_value(term.file, term.bits[k])) flip_payload_bit(t.payload, k);
            }
          }
        }
        log.append(std::move(t));
      }
    }
  }
  return log;
}

}  // namespace

void TransmissionLog::append(Transmission record) {
  index_[{record.subset, record.slot}] = records_.size();
  records_.push_back(std::move(record));
}

const Transmission* TransmissionLog::find(Mask subset, std::size_t slot) const {
  auto it = index_.find({subset, slot});
  return it == index_.end() ? nullptr : &records_[it->second];
}

TransmissionLog TransmissionLog::without(std::size_t index) const {
  TransmissionLog out(caches_, access_degree_, symbolic_);
  for (std::size_t i = 0; i < records_.size(); ++i) {
    if (i != index) out.append(records_[i]);
  }
  return out;
}

std::uint64_t TransmissionLog::total_payload_bits() const {
  std::uint64_t total = 0;
  for (const auto& t : records_) total += t.payload_length;
  return total;
}

GammaPolynomial TransmissionLog::expected_term_size(Mask subset) const {
  const int s = cardinality(subset);
  return GammaPolynomial::monomial(s - access_degree_, caches_ - s + access_degree_);
}

std::string TransmissionLog::serialize() const {
  std::string out;
  for (const auto& t : records_) {
    out += fmt::format("S={} l={} terms=", format_mask_hex(t.subset), t.slot);
    for (const auto& term : t.terms) {
      out += fmt::format("({},{},{})", term.group, term.file, format_mask_hex(term.subfile));
    }
    if (symbolic_) {
      const int s = cardinality(t.subset);
      out += fmt::format(" len=({},{})\n", s - access_degree_, caches_ - s + access_degree_);
    } else {
      out += fmt::format(" len={}\n", t.payload_length);
    }
  }
  return out;
}

std::uint32_t leader_count(Mask subset, const CacheSubsetTable& table) {
  if (cardinality(subset) < table.access_degree()) {
    throw Error(ErrorCode::kSubsetTooSmall,
                fmt::format("|S|={} < r={}", cardinality(subset), table.access_degree()));
  }
  std::uint32_t leaders = 0;
  for (const auto& g : table.groups()) {
    if (is_subset(g.caches, subset)) leaders = std::max(leaders, g.users);
  }
  return leaders;
}

TransmissionLog generate_transmissions(const PrefetchState& state, const CacheSubsetTable& table,
                                       const DemandVector& demands) {
  return build_log(table, demands, &state);
}

TransmissionLog symbolic_transmissions(const CacheSubsetTable& table,
                                       const DemandVector& demands) {
  return build_log(table, demands, nullptr);
}

std::vector<std::uint32_t> decode_user(const TransmissionLog& log, const PrefetchState& state,
                                       const CacheSubsetTable& table,
                                       const DemandVector& demands, UserLabel user) {
  if (!table.contains(user)) {
    throw Error(ErrorCode::kInvalidParameter,
                fmt::format("no user u_{}({})", user.group, user.slot));
  }
  if (log.symbolic()) {
    throw Error(ErrorCode::kInvalidParameter, "cannot decode a symbolic log");
  }
  const int c = table.caches();
  const Mask mine = table.group(user.group).caches;
  const std::uint32_t file = demands.file_of(table, user);
  const std::uint32_t F = state.file_bits();

  // Side information: anything stored in one of the user's caches.
  auto cached = [&](std::uint32_t f, std::uint32_t bit) {
    return (state.placement(f, bit) & mine) != 0;
  };

  std::vector<char> have(F, 0);
  for (std::uint32_t bit = 0; bit < F; ++bit) have[bit] = cached(file, bit) ? 1 : 0;

  for (Mask missing : subsets_of(full_mask(c) & ~mine)) {
    const Mask subset = missing | mine;
    const Transmission* t = log.find(subset, user.slot);
    if (t == nullptr) {
      throw DecodingFailure(subset, user.slot, user.group, "transmission missing");
    }
    const Term* own = nullptr;
    for (const auto& term : t->terms) {
      if (term.group == user.group) own = &term;
    }
    if (own == nullptr) throw DecodingFailure(subset, user.slot, user.group, "no own term");
    if (own->file != file || own->subfile != missing) {
      throw DecodingFailure(subset, user.slot, user.group, "own term carries the wrong subfile");
    }
    if (own->bits.size() > t->payload_length) {
      throw DecodingFailure(subset, user.slot, user.group, "payload shorter than own term");
    }

    std::vector<std::uint64_t> payload = t->payload;
    for (const auto& term : t->terms) {
      if (&term == own) continue;
      for (std::size_t k = 0; k < term.bits.size(); ++k) {
        if (!cached(term.file, term.bits[k])) {
          throw DecodingFailure(subset, user.slot, term.group,
                                fmt::format("bit {} of file {} not in side information",
                                            term.bits[k], term.file));
        }
        if (file_bit_value(term.file, term.bits[k])) flip_payload_bit(payload, k);
      }
    }
    for (std::size_t k = 0; k < own->bits.size(); ++k) {
      const std::uint32_t bit = own->bits[k];
      if (payload_bit(payload, k) != file_bit_value(file, bit)) {
        throw DecodingFailure(subset, user.slot, user.group,
                              fmt::format("bit {} decoded to the wrong value", bit));
      }
      have[bit] = 1;
    }
  }

  std::vector<std::uint32_t> recovered;
  recovered.reserve(F);
  for (std::uint32_t bit = 0; bit < F; ++bit) {
    if (have[bit]) recovered.push_back(bit);
  }
  return recovered;
}

std::vector<UserLabel> DeliveryReport::failed_users() const {
  std::vector<UserLabel> out;
  for (const auto& u : per_user) {
    if (u.failure || u.recovered_fraction < 1.0) out.push_back(u.user);
  }
  return out;
}

DeliveryReport verify_delivery(const TransmissionLog& log, const PrefetchState& state,
                               const CacheSubsetTable& table, const DemandVector& demands) {
  DeliveryReport report;
  const auto users = table.users();
  report.per_user.resize(users.size());
  const double F = state.file_bits();
  detail::parallel_for(users.size(), [&](std::size_t k) {
    UserOutcome& outcome = report.per_user[k];
    outcome.user = users[k];
    try {
      const auto recovered = decode_user(log, state, table, demands, users[k]);
      outcome.recovered_fraction = static_cast<double>(recovered.size()) / F;
    } catch (const Error& e) {
      outcome.failure = e.what();
    }
  });
  report.ok = std::all_of(report.per_user.begin(), report.per_user.end(), [&](const auto& u) {
    return !u.failure && u.recovered_fraction == 1.0;
  });
  return report;
}

double measured_rate_per_user(const TransmissionLog& log, const SystemParams& params) {
  return static_cast<double>(log.total_payload_bits()) /
         (static_cast<double>(params.file_bits()) * static_cast<double>(params.users()));
}

}  // namespace macc
