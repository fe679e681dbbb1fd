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

#include "macc/indexcoding.hpp"

#include <random>

#include <fmt/format.h>

#include "macc/error.hpp"

namespace macc {

namespace {

InstanceKey make_key(const CacheSubsetTable& table, const DemandVector& demands,
                     const PrefetchState* state) {
  InstanceKey key;
  key.caches = table.caches();
  key.access_degree = table.access_degree();
  key.profile = table.profile();
  for (const auto& g : table.groups()) key.group_masks.push_back(g.caches);
  key.demands = demands.files();
  key.sampled = state != nullptr;
  key.placement_checksum = state ? state->checksum() : 0;
  return key;
}

void require_complete(const CacheSubsetTable& table, const DemandVector& demands) {
  if (demands.size() != table.total_users()) {
    throw Error(ErrorCode::kIncompleteDemandVector,
                fmt::format("{} demands for {} users", demands.size(), table.total_users()));
  }
}

IndependentSet construct(const CacheSubsetTable& table, const DemandVector& demands,
                         const PrefetchState* state) {
  require_complete(table, demands);
  if (!demands.all_distinct()) {
    throw Error(ErrorCode::kRequiresDistinctDemands,
                "the independent set is defined for distinct demands");
  }
  IndependentSet y;
  y.caches = table.caches();
  y.access_degree = table.access_degree();
  y.symbolic = state == nullptr;
  y.key = make_key(table, demands, state);
  for (const auto& family : build_E_sets(table)) {
    const auto& g = table.group(family.group);
    for (Mask subfile : family.members) {
      for (std::size_t slot = 1; slot <= g.users; ++slot) {
        Atom atom;
        atom.group = g.index;
        atom.slot = slot;
        atom.subfile = subfile;
        atom.file = demands.file_of(table, {g.index, slot});
        if (state) {
          const auto bits = state->subfile(atom.file, subfile);
          atom.bits.assign(bits.begin(), bits.end());
        }
        y.atoms.push_back(std::move(atom));
      }
    }
  }
  return y;
}

std::string describe_atoms(const IndependentSet& y, const std::vector<std::size_t>& picked) {
  std::string out = "{";
  for (std::size_t k = 0; k < picked.size(); ++k) {
    const Atom& a = y.atoms[picked[k]];
    out += fmt::format("{}V^u{}({})_{}", k ? ", " : "", a.group, a.slot,
                       format_caches(a.subfile, y.caches));
  }
  return out + "}";
}

// For each atom, the cache sets of the users whose receivers demand its bits.
std::vector<std::vector<Mask>> atom_receivers(const IndependentSet& y,
                                              const IndexCodingInstance& instance) {
  std::vector<std::vector<Mask>> out(y.atoms.size());
  for (std::size_t a = 0; a < y.atoms.size(); ++a) {
    const Atom& atom = y.atoms[a];
    for (const auto& group : instance.groups()) {
      if (atom.subfile & group.caches) continue;  // bits already cached there
      for (const auto& bundle : group.users) {
        if (bundle.file == atom.file) out[a].push_back(group.caches);
      }
    }
  }
  return out;
}

// D is in J(I) iff some atom of D has a receiver whose caches miss every
// subfile index occurring in D.
bool subset_in_j(const std::vector<std::size_t>& picked, Mask used,
                 const std::vector<std::vector<Mask>>& receivers) {
  for (std::size_t a : picked) {
    for (Mask caches : receivers[a]) {
      if ((used & caches) == 0) return true;
    }
  }
  return false;
}

}  // namespace

SetFamilyE build_E_sets(const CacheSubsetTable& table) {
  SetFamilyE families;
  Mask covered = 0;
  const Mask all = full_mask(table.caches());
  for (const auto& g : table.groups()) {
    covered |= g.caches;
    families.push_back({g.index, covered, subsets_of(all & ~covered)});
  }
  return families;
}

std::uint64_t IndexCodingInstance::receiver_count() const {
  std::uint64_t n = 0;
  for (const auto& g : groups_) {
    for (const auto& u : g.users) n += u.demanded_bits.size();
  }
  return n;
}

bool IndexCodingInstance::in_side_info(std::size_t group, std::uint32_t file,
                                       std::uint32_t bit) const {
  if (state_ == nullptr) {
    throw Error(ErrorCode::kInvalidParameter, "symbolic instance has no bit-level side information");
  }
  return (state_->placement(file, bit) & groups_.at(group - 1).caches) != 0;
}

IndexCodingInstance build_instance(const PrefetchState& state, const CacheSubsetTable& table,
                                   const DemandVector& demands) {
  require_complete(table, demands);
  IndexCodingInstance instance;
  instance.caches_ = table.caches();
  instance.files_ = state.files();
  instance.file_bits_ = state.file_bits();
  instance.state_ = &state;
  instance.key_ = make_key(table, demands, &state);
  for (const auto& g : table.groups()) {
    ReceiverGroup group{g.index, g.caches, {}};
    for (std::size_t slot = 1; slot <= g.users; ++slot) {
      ReceiverBundle bundle;
      bundle.user = {g.index, slot};
      bundle.file = demands.file_of(table, bundle.user);
      for (std::uint32_t bit = 0; bit < state.file_bits(); ++bit) {
        if ((state.placement(bundle.file, bit) & g.caches) == 0) {
          bundle.demanded_bits.push_back(bit);
        }
      }
      group.users.push_back(std::move(bundle));
    }
    instance.groups_.push_back(std::move(group));
  }
  return instance;
}

IndexCodingInstance build_symbolic_instance(const CacheSubsetTable& table,
                                            const DemandVector& demands, std::uint32_t files) {
  require_complete(table, demands);
  IndexCodingInstance instance;
  instance.caches_ = table.caches();
  instance.files_ = files;
  instance.key_ = make_key(table, demands, nullptr);
  for (const auto& g : table.groups()) {
    ReceiverGroup group{g.index, g.caches, {}};
    for (std::size_t slot = 1; slot <= g.users; ++slot) {
      ReceiverBundle bundle;
      bundle.user = {g.index, slot};
      bundle.file = demands.file_of(table, bundle.user);
      if (bundle.file > files) {
        throw Error(ErrorCode::kInvalidParameter,
                    fmt::format("demanded file {} > N={}", bundle.file, files));
      }
      group.users.push_back(std::move(bundle));
    }
    instance.groups_.push_back(std::move(group));
  }
  return instance;
}

IndependentSet construct_independent_set(const CacheSubsetTable& table,
                                         const DemandVector& demands,
                                         const PrefetchState& state) {
  return construct(table, demands, &state);
}

IndependentSet construct_independent_set(const CacheSubsetTable& table,
                                         const DemandVector& demands) {
  return construct(table, demands, nullptr);
}

std::string IndependentSet::serialize() const {
  std::string out;
  for (const auto& a : atoms) {
    const int s = cardinality(a.subfile);
    const std::string size =
        symbolic ? fmt::format("({},{})", s, caches - s) : fmt::format("{}", a.bits.size());
    out += fmt::format("i={} S={} l={} file={} size={}\n", a.group, format_mask_hex(a.subfile),
                       a.slot, a.file, size);
  }
  out += fmt::format("alpha={}\n", symbolic ? alpha_polynomial(*this).to_string()
                                            : fmt::format("{}", alpha_count(*this)));
  return out;
}

IndependenceReport check_generalized_independence(const IndependentSet& y,
                                                  const IndexCodingInstance& instance,
                                                  const IndependenceCheck& options) {
  if (!(y.key == instance.key())) {
    throw Error(ErrorCode::kInstanceMismatch,
                "independent set was built for a different system, demand or placement");
  }
  IndependenceReport report;
  const std::size_t n = y.atoms.size();
  const auto receivers = atom_receivers(y, instance);

  auto fail = [&](const std::vector<std::size_t>& picked) {
    report.independent = false;
    if (report.witness.empty()) report.witness = describe_atoms(y, picked);
  };

  std::vector<std::size_t> picked;
  if (options.mode == IndependenceCheck::Mode::kExhaustive &&
      n <= IndependenceCheck::kExhaustiveAtomLimit) {
    report.exhaustive_atoms = true;
    // used[D] = OR of subfile indices over D, built from D without its lowest atom.
    std::vector<Mask> used(std::size_t{1} << n, 0);
    for (std::uint32_t d = 1; d < used.size(); ++d) {
      const int low = std::countr_zero(d);
      used[d] = used[d & (d - 1)] | y.atoms[low].subfile;
      picked.clear();
      for (std::uint32_t rest = d; rest; rest &= rest - 1) {
        picked.push_back(static_cast<std::size_t>(std::countr_zero(rest)));
      }
      ++report.atom_subsets_checked;
      if (!subset_in_j(picked, used[d], receivers)) {
        fail(picked);
        break;
      }
    }
  } else {
    auto check = [&](const std::vector<std::size_t>& subset) {
      Mask used = 0;
      for (std::size_t a : subset) used |= y.atoms[a].subfile;
      ++report.atom_subsets_checked;
      if (!subset_in_j(subset, used, receivers)) fail(subset);
    };
    for (std::size_t a = 0; a < n && report.independent; ++a) {
      check({a});
      for (std::size_t b = a + 1; b < n && report.independent; ++b) check({a, b});
    }
    std::mt19937_64 rng(options.seed);
    for (std::size_t s = 0; s < options.samples && report.independent && n > 0; ++s) {
      picked.clear();
      for (std::size_t a = 0; a < n; ++a) {
        if (rng() & 1U) picked.push_back(a);
      }
      if (picked.empty()) continue;
      check(picked);
    }
  }

  if (!instance.sampled()) return report;
  std::uint64_t total_bits = 0;
  for (const auto& a : y.atoms) total_bits += a.bits.size();
  if (total_bits > IndependenceCheck::kExhaustiveBitLimit) return report;

  // Bit-level pass: messages and side information taken straight from the
  // placement, without the atom labels.
  struct Message {
    std::uint32_t file;
    std::uint32_t bit;
  };
  std::vector<Message> messages;
  for (const auto& a : y.atoms) {
    for (std::uint32_t bit : a.bits) messages.push_back({a.file, bit});
  }
  const std::size_t m = messages.size();
  // For each message, the bitmask (over messages) of side information of every
  // receiver demanding it.
  std::vector<std::vector<std::uint32_t>> receiver_side_info(m);
  for (std::size_t x = 0; x < m; ++x) {
    for (const auto& group : instance.groups()) {
      if (instance.in_side_info(group.group, messages[x].file, messages[x].bit)) continue;
      for (const auto& bundle : group.users) {
        if (bundle.file != messages[x].file) continue;
        std::uint32_t side = 0;
        for (std::size_t w = 0; w < m; ++w) {
          if (instance.in_side_info(group.group, messages[w].file, messages[w].bit)) {
            side |= std::uint32_t{1} << w;
          }
        }
        receiver_side_info[x].push_back(side);
      }
    }
  }
  report.bit_level_checked = true;
  for (std::uint32_t d = 1; d < (std::uint32_t{1} << m); ++d) {
    ++report.bit_subsets_checked;
    bool in_j = false;
    for (std::uint32_t rest = d; rest && !in_j; rest &= rest - 1) {
      for (std::uint32_t side : receiver_side_info[std::countr_zero(rest)]) {
        if ((side & d) == 0) {
          in_j = true;
          break;
        }
      }
    }
    if (!in_j) {
      report.independent = false;
      if (report.witness.empty()) {
        std::string w = "bits {";
        for (std::uint32_t rest = d; rest; rest &= rest - 1) {
          const auto& msg = messages[std::countr_zero(rest)];
          w += fmt::format(" (file {}, bit {})", msg.file, msg.bit);
        }
        report.witness = w + " }";
      }
      break;
    }
  }
  return report;
}

std::uint64_t alpha_count(const IndependentSet& y) {
  if (y.symbolic) {
    throw Error(ErrorCode::kInvalidParameter, "symbolic set has no bit count; use alpha_polynomial");
  }
  std::uint64_t total = 0;
  for (const auto& a : y.atoms) total += a.bits.size();
  return total;
}

GammaPolynomial alpha_polynomial(const IndependentSet& y) {
  GammaPolynomial p;
  for (const auto& a : y.atoms) {
    const int s = cardinality(a.subfile);
    p.add(s, y.caches - s, 1);
  }
  return p;
}

}  // namespace macc
