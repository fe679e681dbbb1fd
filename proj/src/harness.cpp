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

#include "macc/harness.hpp"

#include <cmath>
#include <fstream>
#include <numeric>

#include <fmt/format.h>

#include "macc/delivery.hpp"
#include "macc/error.hpp"
#include "macc/indexcoding.hpp"
#include "macc/prefetch.hpp"
#include "macc/rates.hpp"
#include "parallel.hpp"

namespace macc {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::kConfigError, fmt::format("{}: {}", path, msg));
}

template <typename T>
T get_integer(const json& node, const std::string& path, std::int64_t lo, std::int64_t hi) {
  if (!node.is_number_integer()) config_error(path, "expected an integer");
  const auto v = node.get<std::int64_t>();
  if (v < lo || v > hi) config_error(path, fmt::format("{} outside [{}, {}]", v, lo, hi));
  return static_cast<T>(v);
}

MemorySpec parse_memory(const json& node, const std::string& path) {
  MemorySpec m;
  if (node.is_number_integer()) {
    m.exact = Rational{node.get<std::int64_t>()};
    m.value = boost::rational_cast<double>(*m.exact);
  } else if (node.is_number()) {
    m.value = node.get<double>();
  } else if (node.is_string()) {
    const auto text = node.get<std::string>();
    const auto slash = text.find('/');
    try {
      if (slash == std::string::npos) {
        m.exact = Rational{std::stoll(text)};
      } else {
        m.exact = Rational{std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1))};
      }
    } catch (const std::exception&) {
      config_error(path, fmt::format("cannot read \"{}\" as a rational", text));
    }
    m.value = boost::rational_cast<double>(*m.exact);
  } else {
    config_error(path, "expected a number or a \"p/q\" string");
  }
  return m;
}

ProfileShape parse_profile(const json& node, const std::string& path, int c) {
  ProfileShape shape;
  if (node.is_string()) {
    const auto text = node.get<std::string>();
    if (text == "cyclic") {
      shape.kind = ProfileShape::Kind::kCyclic;
    } else if (text.rfind("uniform:", 0) == 0) {
      shape.kind = ProfileShape::Kind::kUniform;
      try {
        const long k = std::stol(text.substr(8));
        if (k < 0) throw std::out_of_range("negative");
        shape.per_subset = static_cast<std::uint32_t>(k);
      } catch (const std::exception&) {
        config_error(path, fmt::format("bad uniform count in \"{}\"", text));
      }
    } else {
      config_error(path, fmt::format("unknown profile keyword \"{}\"", text));
    }
    return shape;
  }
  if (!node.is_array()) config_error(path, "expected an array, \"cyclic\" or \"uniform:<k>\"");
  if (!node.empty() && node.front().is_object()) {
    shape.kind = ProfileShape::Kind::kExplicit;
    for (std::size_t i = 0; i < node.size(); ++i) {
      const std::string item = fmt::format("{}[{}]", path, i);
      const json& e = node[i];
      if (!e.is_object() || !e.contains("caches") || !e.contains("users")) {
        config_error(item, "expected {\"caches\": [...], \"users\": n}");
      }
      ProfileEntry entry;
      if (!e["caches"].is_array()) config_error(item + ".caches", "expected a list of caches");
      for (std::size_t j = 0; j < e["caches"].size(); ++j) {
        entry.caches.push_back(
            get_integer<int>(e["caches"][j], fmt::format("{}.caches[{}]", item, j), 1, c));
      }
      entry.users = get_integer<std::uint32_t>(e["users"], item + ".users", 0, 1 << 20);
      shape.entries.push_back(std::move(entry));
    }
    return shape;
  }
  shape.kind = ProfileShape::Kind::kVector;
  for (std::size_t i = 0; i < node.size(); ++i) {
    shape.vector.push_back(
        get_integer<std::uint32_t>(node[i], fmt::format("{}[{}]", path, i), 0, 1 << 20));
  }
  return shape;
}

CacheSubsetTable table_from_shape(const ProfileShape& shape, const ExperimentConfig& config, int r,
                                 const std::string& path) {
  const int c = config.caches;
  try {
    switch (shape.kind) {
      case ProfileShape::Kind::kCyclic: {
        const auto params = SystemParams::make(c, r, config.files, static_cast<std::uint32_t>(c),
                                               Rational{0});
        return cyclic_profile(params);
      }
      case ProfileShape::Kind::kUniform:
        return uniform_profile(c, r, shape.per_subset);
      case ProfileShape::Kind::kVector:
        return profile_from_vector(c, r, shape.vector);
      case ProfileShape::Kind::kExplicit: {
        std::uint32_t total = 0;
        for (const auto& e : shape.entries) total += e.users;
        const auto params = SystemParams::make(c, r, std::max(config.files, total),
                                               std::max(total, 1U), Rational{0});
        return canonicalize_profile(shape.entries, params);
      }
    }
  } catch (const Error& e) {
    config_error(path, e.what());
  }
  config_error(path, "unhandled profile kind");
}

struct TrialResult {
  double rate = 0.0;
  bool ok = false;
};

std::string format_number(double v) { return fmt::format("{:.12g}", v); }

}  // namespace

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) config_error("config", "expected a JSON object");
  ExperimentConfig config;
  auto require = [&](const char* key) -> const json& {
    if (!doc.contains(key)) config_error(fmt::format("config.{}", key), "missing");
    return doc[key];
  };
  config.caches = get_integer<int>(require("c"), "config.c", 1, kMaxCaches);
  config.access_degree = get_integer<int>(require("r"), "config.r", 1, config.caches);
  config.files = get_integer<std::uint32_t>(require("N"), "config.N", 1, 1 << 20);
  if (doc.contains("K")) {
    config.users = get_integer<std::uint32_t>(doc["K"], "config.K", 1, 1 << 20);
  }
  config.memory = parse_memory(require("M"), "config.M");
  if (!(config.memory.value >= 0.0 && config.memory.value <= config.files)) {
    config_error("config.M", fmt::format("M={} outside [0, N={}]", config.memory.value,
                                         config.files));
  }
  if (doc.contains("F")) {
    config.file_bits = get_integer<std::uint64_t>(doc["F"], "config.F", 1, 0xffffffffLL);
  }
  config.profile = parse_profile(require("profile"), "config.profile", config.caches);
  if (doc.contains("profiles_by_r")) {
    const json& by_r = doc["profiles_by_r"];
    if (!by_r.is_object()) config_error("config.profiles_by_r", "expected an object keyed by r");
    for (const auto& [key, value] : by_r.items()) {
      const std::string path = fmt::format("config.profiles_by_r.{}", key);
      int r = 0;
      try {
        r = std::stoi(key);
      } catch (const std::exception&) {
        config_error(path, "key must be an integer r");
      }
      if (r < 1 || r > config.caches) {
        config_error(path, fmt::format("r={} outside [1, c={}]", r, config.caches));
      }
      config.profiles_by_r[r] = parse_profile(value, path, config.caches);
    }
  }
  if (doc.contains("demand")) {
    const json& d = doc["demand"];
    if (d.is_string()) {
      if (d.get<std::string>() != "distinct") {
        config_error("config.demand", "expected \"distinct\" or a list of file indices");
      }
    } else if (d.is_array()) {
      config.distinct_demands = false;
      for (std::size_t i = 0; i < d.size(); ++i) {
        config.demand_list.push_back(get_integer<std::uint32_t>(
            d[i], fmt::format("config.demand[{}]", i), 1, config.files));
      }
    } else {
      config_error("config.demand", "expected \"distinct\" or a list of file indices");
    }
  }
  if (doc.contains("sweep")) {
    const json& s = doc["sweep"];
    if (!s.is_object() || !s.contains("var")) config_error("config.sweep", "expected {\"var\": ...}");
    SweepSpec sweep;
    sweep.variable = s["var"].is_string() ? s["var"].get<std::string>() : "";
    if (sweep.variable != "M" && sweep.variable != "r") {
      config_error("config.sweep.var", "expected \"M\" or \"r\"");
    }
    if (s.contains("values")) {
      if (!s["values"].is_array()) config_error("config.sweep.values", "expected an array");
      for (std::size_t i = 0; i < s["values"].size(); ++i) {
        const json& v = s["values"][i];
        const std::string path = fmt::format("config.sweep.values[{}]", i);
        if (!v.is_number()) config_error(path, "expected a number");
        sweep.values.push_back(v.get<double>());
      }
    } else if (s.contains("from") && s.contains("to") && s.contains("step")) {
      const double from = s["from"].get<double>();
      const double to = s["to"].get<double>();
      const double step = s["step"].get<double>();
      if (!(step > 0.0)) config_error("config.sweep.step", "must be positive");
      for (std::size_t k = 0;; ++k) {
        const double v = from + static_cast<double>(k) * step;
        if (v > to + 1e-9 * step) break;
        sweep.values.push_back(v);
      }
    } else {
      config_error("config.sweep", "needs \"values\" or \"from\"/\"to\"/\"step\"");
    }
    for (std::size_t i = 0; i < sweep.values.size(); ++i) {
      const double v = sweep.values[i];
      const std::string path = fmt::format("config.sweep.values[{}]", i);
      if (sweep.variable == "M" && !(v >= 0.0 && v <= config.files)) {
        config_error(path, fmt::format("M={} outside [0, {}]", v, config.files));
      }
      if (sweep.variable == "r" &&
          (v != std::floor(v) || v < 1.0 || v > static_cast<double>(config.caches))) {
        config_error(path, fmt::format("r={} is not an integer in [1, {}]", v, config.caches));
      }
    }
    config.sweep = std::move(sweep);
  }
  if (doc.contains("trials")) {
    config.trials = get_integer<std::uint32_t>(doc["trials"], "config.trials", 1, 1 << 20);
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned() && !doc["seed"].is_number_integer()) {
      config_error("config.seed", "expected a non-negative integer");
    }
    config.seed = doc["seed"].get<std::uint64_t>();
  }

  // Validate every table the config can produce now, so errors carry field paths.
  std::vector<int> degrees{config.access_degree};
  if (config.sweep && config.sweep->variable == "r") {
    degrees.clear();
    for (double v : config.sweep->values) degrees.push_back(static_cast<int>(v));
  }
  for (int r : degrees) {
    const auto table = config_table(config, r);
    if (config.users && *config.users != table.total_users()) {
      config_error("config.K", fmt::format("K={} but the profile for r={} has {} users",
                                           *config.users, r, table.total_users()));
    }
    if (config.distinct_demands && config.files < table.total_users()) {
      config_error("config.demand", fmt::format("distinct demands need N >= K={}",
                                                table.total_users()));
    }
    if (!config.distinct_demands && config.demand_list.size() != table.total_users()) {
      config_error("config.demand", fmt::format("{} demands for {} users",
                                                config.demand_list.size(), table.total_users()));
    }
  }
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error(path, "cannot open");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    config_error(path, e.what());
  }
  return parse_config(doc);
}

CacheSubsetTable config_table(const ExperimentConfig& config, int access_degree) {
  if (auto it = config.profiles_by_r.find(access_degree); it != config.profiles_by_r.end()) {
    return table_from_shape(it->second, config, access_degree,
                           fmt::format("config.profiles_by_r.{}", access_degree));
  }
  return table_from_shape(config.profile, config, access_degree, "config.profile");
}

SystemParams config_params(const ExperimentConfig& config, int access_degree,
                           const MemorySpec& memory) {
  const auto table = config_table(config, access_degree);
  const std::uint32_t users = std::max(table.total_users(), 1U);
  try {
    if (memory.exact) {
      return SystemParams::make(config.caches, access_degree, config.files, users, *memory.exact,
                                config.simulation_bits());
    }
    return SystemParams::make(config.caches, access_degree, config.files, users, memory.value,
                              config.simulation_bits());
  } catch (const Error& e) {
    config_error("config", e.what());
  }
}

DemandVector config_demands(const ExperimentConfig& config, const CacheSubsetTable& table,
                            const SystemParams& params) {
  try {
    if (config.distinct_demands) return DemandVector::distinct(table, params);
    return DemandVector::from_list(table, params, config.demand_list);
  } catch (const Error& e) {
    config_error("config.demand", e.what());
  }
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& config) {
  struct Point {
    int access_degree;
    MemorySpec memory;
    double value;
  };
  std::vector<Point> points;
  const std::string variable = config.sweep ? config.sweep->variable : "M";
  if (!config.sweep) {
    points.push_back({config.access_degree, config.memory, config.memory.value});
  } else {
    for (double v : config.sweep->values) {
      if (variable == "r") {
        points.push_back({static_cast<int>(v), config.memory, v});
      } else {
        MemorySpec m;
        m.value = v;
        if (v == std::floor(v)) m.exact = Rational{static_cast<std::int64_t>(v)};
        points.push_back({config.access_degree, m, v});
      }
    }
  }

  std::vector<SweepRow> rows(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    const auto table = config_table(config, points[p].access_degree);
    const auto params = config_params(config, points[p].access_degree, points[p].memory);
    const double g = params.gamma();
    SweepRow& row = rows[p];
    row.variable = variable;
    row.value = points[p].value;
    row.rate_pu = rate_per_user(table).per_user(g);
    row.lb_pu = lower_bound_per_user(table).per_user(g);
    if (const auto closed = closed_form_optimal(table)) row.closed_form_pu = closed->per_user(g);
  }

  if (config.trials == 0) return rows;

  const std::size_t trials = config.trials;
  std::vector<TrialResult> results(points.size() * trials);
  detail::parallel_for(results.size(), [&](std::size_t job) {
    const std::size_t p = job / trials;
    const std::size_t t = job % trials;
    const auto table = config_table(config, points[p].access_degree);
    const auto params = config_params(config, points[p].access_degree, points[p].memory);
    const auto demands = config_demands(config, table, params);
    const auto state = decentralized_prefetch(params, config.seed + t);
    const auto log = generate_transmissions(state, table, demands);
    results[job].rate = measured_rate_per_user(log, params);
    results[job].ok = verify_delivery(log, state, table, demands).ok;
  });

  for (std::size_t p = 0; p < points.size(); ++p) {
    double sum = 0.0;
    bool ok = true;
    for (std::size_t t = 0; t < trials; ++t) {
      sum += results[p * trials + t].rate;
      ok = ok && results[p * trials + t].ok;
    }
    const double mean = sum / static_cast<double>(trials);
    double sq = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      const double d = results[p * trials + t].rate - mean;
      sq += d * d;
    }
    rows[p].emp_mean = mean;
    rows[p].emp_std = trials > 1 ? std::sqrt(sq / static_cast<double>(trials - 1)) : 0.0;
    rows[p].decode_ok = ok;
  }
  return rows;
}

void write_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "sweep_var,value,rate_pu,lb_pu,closed_form_pu,emp_rate_pu_mean,emp_rate_pu_std,"
         "decode_ok\n";
  auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
  for (const auto& row : rows) {
    out << fmt::format("{},{},{},{},{},{},{},{}\n", row.variable, format_number(row.value),
                       format_number(row.rate_pu), format_number(row.lb_pu),
                       opt(row.closed_form_pu), opt(row.emp_mean), opt(row.emp_std),
                       row.decode_ok ? "true" : "false");
  }
}

void write_json(const std::vector<SweepRow>& rows, std::ostream& out) {
  json doc = json::array();
  for (const auto& row : rows) {
    json r;
    r["sweep_var"] = row.variable;
    r["value"] = row.value;
    r["rate_pu"] = row.rate_pu;
    r["lb_pu"] = row.lb_pu;
    r["closed_form_pu"] = row.closed_form_pu ? json(*row.closed_form_pu) : json(nullptr);
    r["emp_rate_pu_mean"] = row.emp_mean ? json(*row.emp_mean) : json(nullptr);
    r["emp_rate_pu_std"] = row.emp_std ? json(*row.emp_std) : json(nullptr);
    r["decode_ok"] = row.decode_ok;
    doc.push_back(std::move(r));
  }
  out << doc.dump(2) << '\n';
}

const std::vector<std::string>& example_names() {
  static const std::vector<std::string> names{
      "example1_association", "example2_transmissions", "example3_A_sets",
      "example4_E_sets",      "example5_Y_sets",
  };
  return names;
}

std::string reproduce_example(const std::string& name) {
  const std::vector<std::uint32_t> profile{2, 2, 2, 1, 1, 1};
  const auto table = profile_from_vector(4, 2, profile);
  const auto params = SystemParams::make(4, 2, 9, 9, Rational{0});
  const auto demands = DemandVector::distinct(table, params);
  const int c = table.caches();

  auto family_list = [c](const std::vector<Mask>& sets) {
    std::vector<std::string> parts;
    for (Mask m : sets) parts.push_back(format_caches(m, c));
    return fmt::format("[{}]", fmt::join(parts, ","));
  };

  if (name == "example1_association") {
    std::string out;
    std::size_t next_user = 1;
    for (const auto& g : table.groups()) {
      std::vector<std::size_t> users(g.users);
      std::iota(users.begin(), users.end(), next_user);
      next_user += g.users;
      out += fmt::format("i={} C={} b={} U=[{}] L={}\n", g.index, format_caches(g.caches, c),
                         format_indicator(g.caches, c), fmt::join(users, ","), g.users);
    }
    return out;
  }
  if (name == "example2_transmissions") {
    return symbolic_transmissions(table, demands).serialize();
  }
  if (name == "example3_A_sets") {
    std::string out;
    for (const auto& f : build_A_sets(table)) {
      out += fmt::format("i={} C={} P={} A={}\n", f.group, format_caches(f.caches, c),
                         family_list(f.complements), family_list(f.members));
    }
    return out;
  }
  if (name == "example4_E_sets") {
    std::string out;
    for (const auto& f : build_E_sets(table)) {
      out += fmt::format("i={} C={} E={}\n", f.group, format_caches(f.covered, c),
                         family_list(f.members));
    }
    return out;
  }
  if (name == "example5_Y_sets") {
    return construct_independent_set(table, demands).serialize();
  }
  throw Error(ErrorCode::kUnknownExample,
              fmt::format("\"{}\" (known: {})", name, fmt::join(example_names(), ", ")));
}

}  // namespace macc
