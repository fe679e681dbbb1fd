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

// Experiment configuration, parameter sweeps and Monte Carlo campaigns.

#ifndef MACC_HARNESS_HPP
#define MACC_HARNESS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "macc/model.hpp"

namespace macc {

inline constexpr std::uint64_t kDefaultSimulationBits = std::uint64_t{1} << 17;

struct ProfileShape {
  enum class Kind { kExplicit, kVector, kCyclic, kUniform };

  Kind kind = Kind::kVector;
  RawProfile entries;                   // kExplicit
  std::vector<std::uint32_t> vector;    // kVector
  std::uint32_t per_subset = 0;         // kUniform
};

struct MemorySpec {
  double value = 0.0;
  std::optional<Rational> exact;
};

struct SweepSpec {
  std::string variable;  // "M" or "r"
  std::vector<double> values;
};

struct ExperimentConfig {
  int caches = 1;
  int access_degree = 1;
  std::uint32_t files = 1;
  std::optional<std::uint32_t> users;
  MemorySpec memory;
  std::optional<std::uint64_t> file_bits;
  ProfileShape profile;
  std::map<int, ProfileShape> profiles_by_r;
  bool distinct_demands = true;
  std::vector<std::uint32_t> demand_list;
  std::optional<SweepSpec> sweep;
  std::uint32_t trials = 1;
  std::uint64_t seed = 1;

  /// F used for simulation: the configured value, else 2^17.
  std::uint64_t simulation_bits() const { return file_bits.value_or(kDefaultSimulationBits); }
};

/// Parses the JSON configuration. Violations raise kConfigError with the
/// offending field path, e.g. "config.sweep.values[3]: M=12 outside [0, 9]".
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::string& path);

/// Association table for access degree r (profiles_by_r first, then profile).
CacheSubsetTable config_table(const ExperimentConfig& config, int access_degree);
SystemParams config_params(const ExperimentConfig& config, int access_degree,
                           const MemorySpec& memory);
DemandVector config_demands(const ExperimentConfig& config, const CacheSubsetTable& table,
                            const SystemParams& params);

struct SweepRow {
  std::string variable;
  double value = 0.0;
  double rate_pu = 0.0;
  double lb_pu = 0.0;
  std::optional<double> closed_form_pu;
  std::optional<double> emp_mean;
  std::optional<double> emp_std;
  bool decode_ok = true;
};

/// One row per sweep value (or a single row at the configured point). Trial t
/// of every point uses seed config.seed + t.
std::vector<SweepRow> run_sweep(const ExperimentConfig& config);

/// Columns: sweep_var,value,rate_pu,lb_pu,closed_form_pu,emp_rate_pu_mean,
/// emp_rate_pu_std,decode_ok. Optional cells are left empty.
void write_csv(const std::vector<SweepRow>& rows, std::ostream& out);
void write_json(const std::vector<SweepRow>& rows, std::ostream& out);

const std::vector<std::string>& example_names();

/// Renders one of the worked-example tables for the c=4, r=2,
/// L=(2,2,2,1,1,1), N=K=9 system with demand (1, ..., 9).
/// kUnknownExample for other names.
std::string reproduce_example(const std::string& name);

}  // namespace macc

#endif  // MACC_HARNESS_HPP
