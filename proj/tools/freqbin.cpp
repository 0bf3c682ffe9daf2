// Copyright 2026 The freqbin Authors
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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "freqbin/commands.hpp"

namespace {

using namespace freqbin;

enum ExitCode { kOk = 0, kUsage = 2, kData = 3, kCapacity = 4, kNumerical = 5 };

void emit(const std::string& out_dir, const std::string& name, const std::string& text) {
  if (out_dir.empty()) {
    std::cout << text;
    return;
  }
  std::filesystem::create_directories(out_dir);
  const auto path = std::filesystem::path(out_dir) / name;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path.string());
  f << text;
  std::cerr << "wrote " << path.string() << "\n";
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

AllocationPolicy parse_policy(const std::string& s) {
  if (s == "lexicographic") return AllocationPolicy::Lexicographic;
  if (s == "balanced") return AllocationPolicy::BalancedUsers;
  throw ConfigError("unknown allocation policy '" + s + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frequency-bin photonic qubit simulator and analysis toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "Random seed (overrides the configuration)");
  app.add_option("--out", out_dir, "Output directory (default: standard output)");

  auto* gate_cmd = app.add_subcommand("characterize-gate", "Fidelity and success probability versus alpha");
  std::vector<double> alphas;
  int steps = 32;
  gate_cmd->add_option("--alpha", alphas, "Explicit alpha values in radians");
  gate_cmd->add_option("--steps", steps, "Points of the [0, pi] sweep when --alpha is absent");

  auto* jsi_cmd = app.add_subcommand("simulate-jsi", "Joint spectral intensity diagonal");

  auto* tomo_cmd = app.add_subcommand("tomography", "Two-qubit state reconstruction");
  std::string tomo_input;
  std::optional<int> tomo_pair;
  bool tomo_batch = false;
  int resamples = 1000;
  auto* tomo_in = tomo_cmd->add_option("--input", tomo_input, "Coincidence record (.json or .csv)");
  auto* tomo_sim = tomo_cmd->add_option("--simulate", tomo_pair, "Simulate the 16 projections on pair n");
  auto* tomo_all = tomo_cmd->add_flag("--batch", tomo_batch, "Simulate every pair of the parallel layout");
  tomo_in->excludes(tomo_sim)->excludes(tomo_all);
  tomo_sim->excludes(tomo_all);
  tomo_cmd->add_option("--resamples", resamples, "Monte-Carlo resamples (0 disables)");

  auto* qkd_cmd = app.add_subcommand("qkd", "Key-rate metrics per pair");
  std::string qkd_input;
  std::string qkd_record;
  int record_pair = 0;
  std::optional<double> threshold;
  auto* qkd_in = qkd_cmd->add_option("--input", qkd_input, "Basis-counts CSV (default: simulate the layout)");
  auto* qkd_rec = qkd_cmd->add_option("--record", qkd_record, "Coincidence record of a single pair");
  qkd_in->excludes(qkd_rec);
  qkd_cmd->add_option("--pair", record_pair, "Pair index reported for --record");
  qkd_cmd->add_option("--threshold", threshold, "Security threshold on the error rate");

  auto* plan_cmd = app.add_subcommand("plan-network", "Assign secure pairs to network links");
  std::string plan_input;
  std::optional<int> users;
  std::string policy = "lexicographic";
  plan_cmd->add_option("--input", plan_input, "Metrics CSV from the qkd command (default: simulate)");
  plan_cmd->add_option("--users", users, "Number of users (default: the maximum supported)");
  plan_cmd->add_option("--policy", policy, "lexicographic or balanced");
  plan_cmd->add_option("--threshold", threshold, "Security threshold when simulating");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    RunConfig config = config_path.empty() ? RunConfig{} : load_config(config_path);
    if (seed) config.seed = *seed;
    if (threshold) config.qkd.key.threshold = *threshold;
    if (out_dir.empty()) out_dir = config.output_dir;

    if (*gate_cmd) {
      const std::vector<double> sweep = alphas.empty() ? alpha_grid(steps) : alphas;
      emit(out_dir, "gate_sweep.csv", cmd_characterize_gate(config, sweep));
    } else if (*jsi_cmd) {
      emit(out_dir, "jsi.csv", cmd_simulate_jsi(config));
    } else if (*tomo_cmd) {
      if (!tomo_input.empty()) {
        const CoincidenceRecord rec = load_record(tomo_input, config.tomography_tau_s);
        emit(out_dir, "tomography.json", dump(cmd_tomography_record(config, rec, resamples)));
      } else if (tomo_pair) {
        emit(out_dir, "tomography.json", dump(cmd_tomography_simulate(config, *tomo_pair, resamples)));
      } else if (tomo_batch) {
        emit(out_dir, "tomography_batch.json", dump(cmd_tomography_batch(config, resamples)));
      } else {
        throw ConfigError("tomography: one of --input, --simulate or --batch is required");
      }
    } else if (*qkd_cmd) {
      std::vector<PairCounts> rows;
      if (!qkd_input.empty()) {
        rows = basis_counts_from_csv(read_file(qkd_input));
      } else if (!qkd_record.empty()) {
        rows.push_back({record_pair, basis_counts_from_record(load_record(qkd_record, config.tomography_tau_s))});
      } else {
        rows = simulate_layout_counts(config);
        if (!out_dir.empty()) emit(out_dir, "basis_counts.csv", basis_counts_csv(rows, provenance_line(config)));
      }
      emit(out_dir, "qkd_metrics.csv", cmd_qkd(config, rows));
    } else if (*plan_cmd) {
      const std::vector<LinkMetrics> metrics = plan_input.empty()
                                                   ? evaluate_links(simulate_layout_counts(config), config.qkd.key)
                                                   : metrics_from_csv(read_file(plan_input));
      emit(out_dir, "network_plan.json", dump(plan_to_json(cmd_plan_network(metrics, users, parse_policy(policy)))));
    }
  } catch (const ConfigError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const LayoutError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return kCapacity;
  } catch (const ValidationError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kData;
  } catch (const RangeError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kData;
  } catch (const Error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  return kOk;
}
