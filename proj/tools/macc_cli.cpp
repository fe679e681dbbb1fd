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

// Command-line front end. Exit codes: 0 success, 1 decoding failure,
// 2 configuration or usage error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "macc/delivery.hpp"
#include "macc/error.hpp"
#include "macc/harness.hpp"
#include "macc/prefetch.hpp"
#include "macc/rates.hpp"

namespace {

constexpr int kExitDecode = 1;
constexpr int kExitConfig = 2;

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint32_t> trials;
  std::string out;
  std::string format = "csv";
  std::string example;
  bool symbolic = false;
};

macc::ExperimentConfig load(const Options& opts) {
  auto config = macc::load_config(opts.config_path);
  if (opts.seed) config.seed = *opts.seed;
  if (opts.trials) config.trials = *opts.trials;
  return config;
}

// Writes to --out when given, else stdout.
template <typename Fn>
void emit(const Options& opts, Fn&& body) {
  if (opts.out.empty()) {
    body(std::cout);
    return;
  }
  std::ofstream file(opts.out);
  if (!file) {
    throw macc::Error(macc::ErrorCode::kConfigError, fmt::format("cannot write {}", opts.out));
  }
  body(file);
}

int cmd_bound(const Options& opts, bool lower) {
  const auto config = load(opts);
  const auto table = macc::config_table(config, config.access_degree);
  const auto params = macc::config_params(config, config.access_degree, config.memory);
  const auto poly = lower ? macc::lower_bound_per_user(table) : macc::rate_per_user(table);
  emit(opts, [&](std::ostream& out) {
    out << fmt::format("c={} r={} N={} K={} M={} gamma={:.12g}\n", params.caches(),
                       params.access_degree(), params.files(), params.users(),
                       config.memory.value, params.gamma());
    out << (lower ? "lower_bound" : "rate") << "=" << poly.to_string() << "\n";
    out << fmt::format("per_user={:.12g}\n", poly.per_user(params.gamma()));
  });
  return 0;
}

int cmd_transmissions(const Options& opts) {
  const auto config = load(opts);
  const auto table = macc::config_table(config, config.access_degree);
  const auto params = macc::config_params(config, config.access_degree, config.memory);
  const auto demands = macc::config_demands(config, table, params);
  if (opts.symbolic) {
    const auto log = macc::symbolic_transmissions(table, demands);
    emit(opts, [&](std::ostream& out) { out << log.serialize(); });
    return 0;
  }
  const auto state = macc::decentralized_prefetch(params, config.seed);
  const auto log = macc::generate_transmissions(state, table, demands);
  emit(opts, [&](std::ostream& out) { out << log.serialize(); });
  return 0;
}

int cmd_verify(const Options& opts) {
  const auto config = load(opts);
  const auto table = macc::config_table(config, config.access_degree);
  const auto params = macc::config_params(config, config.access_degree, config.memory);
  const auto demands = macc::config_demands(config, table, params);
  bool all_ok = true;
  emit(opts, [&](std::ostream& out) {
    for (std::uint32_t t = 0; t < config.trials; ++t) {
      const std::uint64_t seed = config.seed + t;
      const auto state = macc::decentralized_prefetch(params, seed);
      const auto log = macc::generate_transmissions(state, table, demands);
      const auto report = macc::verify_delivery(log, state, table, demands);
      out << fmt::format("seed={} records={} rate_pu={:.6f} decode={}\n", seed, log.size(),
                         macc::measured_rate_per_user(log, params), report.ok ? "ok" : "FAILED");
      for (const auto& outcome : report.per_user) {
        if (outcome.failure) {
          out << fmt::format("  user ({},{}): {}\n", outcome.user.group, outcome.user.slot,
                             *outcome.failure);
        }
      }
      all_ok = all_ok && report.ok;
    }
  });
  if (!all_ok) std::cerr << "macc: decoding failed\n";
  return all_ok ? 0 : kExitDecode;
}

int cmd_sweep(const Options& opts) {
  const auto config = load(opts);
  const auto rows = macc::run_sweep(config);
  emit(opts, [&](std::ostream& out) {
    if (opts.format == "json") {
      macc::write_json(rows, out);
    } else {
      macc::write_csv(rows, out);
    }
  });
  for (const auto& row : rows) {
    if (!row.decode_ok) {
      std::cerr << fmt::format("macc: decoding failed at {}={}\n", row.variable, row.value);
      return kExitDecode;
    }
  }
  return 0;
}

int cmd_reproduce(const Options& opts) {
  const auto text = macc::reproduce_example(opts.example);
  emit(opts, [&](std::ostream& out) { out << text; });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-access coded caching with decentralized prefetching"};
  app.require_subcommand(1);
  Options opts;

  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config_path, "JSON experiment configuration")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", opts.seed, "Base seed");
    sub->add_option("--trials", opts.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  };
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", opts.out, "Output path (default stdout)");
  };

  auto* rate = app.add_subcommand("rate", "Achievable rate per user");
  add_config(rate);
  add_out(rate);
  auto* lower = app.add_subcommand("lower-bound", "Lower bound on the rate per user");
  add_config(lower);
  add_out(lower);
  auto* tx = app.add_subcommand("transmissions", "Delivery transmissions for one placement");
  add_config(tx);
  add_out(tx);
  tx->add_flag("--symbolic", opts.symbolic, "Subfile sizes as monomials in gamma");
  auto* verify = app.add_subcommand("verify", "Simulate and decode every user");
  add_config(verify);
  add_out(verify);
  auto* sweep = app.add_subcommand("sweep", "Parameter sweep with Monte Carlo trials");
  add_config(sweep);
  add_out(sweep);
  sweep->add_option("--format", opts.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  auto* reproduce = app.add_subcommand("reproduce", "Worked-example tables");
  reproduce->add_option("example", opts.example, "Example name")
      ->required()
      ->check(CLI::IsMember(macc::example_names()));
  add_out(reproduce);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*rate) return cmd_bound(opts, false);
    if (*lower) return cmd_bound(opts, true);
    if (*tx) return cmd_transmissions(opts);
    if (*verify) return cmd_verify(opts);
    if (*sweep) return cmd_sweep(opts);
    if (*reproduce) return cmd_reproduce(opts);
  } catch (const macc::DecodingFailure& e) {
    std::cerr << "macc: " << e.what() << "\n";
    return kExitDecode;
  } catch (const macc::Error& e) {
    std::cerr << "macc: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
