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

// Batch commands behind the command-line tool. Each returns the document it
// would write, so results can be checked without touching the file system.

#ifndef FREQBIN_COMMANDS_HPP
#define FREQBIN_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "freqbin/config.hpp"
#include "freqbin/eo_gates.hpp"
#include "freqbin/io.hpp"
#include "freqbin/network.hpp"
#include "freqbin/qkd.hpp"
#include "freqbin/simulation.hpp"
#include "freqbin/tomography.hpp"

namespace freqbin {

/// `steps` evenly spaced points on [0, pi], endpoints included.
inline std::vector<double> alpha_grid(int steps) {
  if (steps < 0) throw ConfigError("alpha sweep: negative step count");
  std::vector<double> out;
  for (int k = 0; k < steps; ++k) out.push_back(steps == 1 ? 0.0 : kPi * k / (steps - 1));
  return out;
}

struct GatePoint {
  double alpha = 0.0;
  double f_identity = 0.0;
  double f_hadamard = 0.0;
  double p_success = 0.0;
};

inline GatePoint characterize_gate(const GateParameters& p, double alpha) {
  const GateConfig gate = qubit_gate(p, 0, alpha);
  const Matrix2c w = extract_qubit_block(compose_gate(gate, {0, 1}), 0, 1);
  return {alpha, gate_fidelity(w, identity2()), gate_fidelity(w, hadamard_matrix()),
          success_probability(w, hadamard_matrix())};
}

inline std::string cmd_characterize_gate(const RunConfig& config, const std::vector<double>& alphas) {
  std::string out = provenance_line(config) + "\n";
  out += "alpha_rad,f_identity,f_hadamard,p_success\n";
  for (double a : alphas) {
    const GatePoint g = characterize_gate(config.gate, a);
    out += fmt_double(g.alpha) + "," + fmt_double(g.f_identity) + "," + fmt_double(g.f_hadamard) + "," +
           fmt_double(g.p_success) + "\n";
  }
  return out;
}

/// Coincidences between signal and idler of the same resonance, every n on the
/// grid, no gates in the path. The integration time is the detector's.
inline std::string cmd_simulate_jsi(const RunConfig& config) {
  const Simulator sim(config);
  const DetectorModel& det = config.detector;
  const double tau = config.tomography_tau_s;
  std::string out = provenance_line(config) + "\n";
  out += "n,expected_rate,sampled_counts\n";
  const auto& grid = sim.model().grid;
  for (int n = grid.n_min; n <= grid.n_max; ++n) {
    const double r = sim.mode_rate(n);
    const double rate = expected_coincidences(1.0, r, det, 1.0, singles_rates(r, det, 1.0));
    std::mt19937_64 rng(sim.pair_seed(n));
    const double mean = rate * tau;
    const std::int64_t counts = mean > 0.0 ? std::poisson_distribution<std::int64_t>(mean)(rng) : 0;
    out += std::to_string(n) + "," + fmt_double(rate) + "," + std::to_string(counts) + "\n";
  }
  return out;
}

inline nlohmann::json tomography_report(const TomographySet& set, int resamples, std::uint64_t seed) {
  const DensityMatrix rho = reconstruct(set);
  nlohmann::json j;
  j["method"] = rho.method;
  j["rho"] = matrix_to_json(rho.rho);
  j["fidelity"] = state_fidelity(rho, phi_plus());
  if (resamples > 0) {
    const MonteCarloSummary mc = monte_carlo_errors(set, resamples, seed);
    j["error_bar"] = mc.stddev;
    j["monte_carlo"] = {{"resamples", mc.resamples}, {"failures", mc.failures}, {"mean", mc.mean}};
  } else {
    j["error_bar"] = nullptr;
  }
  j["eigenvalues"] = std::vector<double>(rho.eigenvalues.data(), rho.eigenvalues.data() + 4);
  j["trace_residual"] = rho.trace_residual;
  j["tau_s"] = set.tau_s;
  return j;
}

inline nlohmann::json cmd_tomography_record(const RunConfig& config, const CoincidenceRecord& rec, int resamples) {
  nlohmann::json j = tomography_report(TomographySet::from_record(rec), resamples, config.seed);
  j["source"] = "record";
  return j;
}

/// Simulated 16-projection record on pair n, then reconstruction.
inline nlohmann::json cmd_tomography_simulate(const RunConfig& config, int n, int resamples) {
  const Simulator sim(config);
  const CoincidenceRecord rec = sim.simulate_tomography(n);
  nlohmann::json j = tomography_report(TomographySet::from_record(rec), resamples, sim.pair_seed(n));
  j["source"] = "simulated";
  j["n"] = n;
  j["record"] = record_to_json(rec);
  return j;
}

/// One report per pair of the parallel layout, integrated over the key-exchange time.
inline nlohmann::json cmd_tomography_batch(const RunConfig& config, int resamples) {
  const Simulator sim(config);
  nlohmann::json reports = nlohmann::json::array();
  int above = 0;
  for (int n : sim.layout()) {
    const CoincidenceRecord rec =
        sample_coincidences(sim.expectations(n, tomography_labels(), config.qkd.tau_s), config.qkd.tau_s,
                            sim.pair_seed(n));
    nlohmann::json r = tomography_report(TomographySet::from_record(rec), resamples, sim.pair_seed(n));
    r["n"] = n;
    if (r["fidelity"].get<double>() > 0.8) ++above;
    reports.push_back(std::move(r));
  }
  return {{"source", "simulated-batch"}, {"reports", reports}, {"pairs_above_0_8", above}};
}

/// Sampled Z and X coincidences for every pair of the layout.
inline std::vector<PairCounts> simulate_layout_counts(const RunConfig& config) {
  const Simulator sim(config);
  std::vector<PairCounts> out;
  for (int n : sim.layout()) out.push_back({n, sim.simulate_key_counts(n)});
  return out;
}

inline std::vector<LinkMetrics> evaluate_links(const std::vector<PairCounts>& rows, const KeyRateParameters& key) {
  std::vector<LinkMetrics> out;
  for (const auto& r : rows) out.push_back(evaluate_link(r.counts, r.n, key));
  return out;
}

inline std::string cmd_qkd(const RunConfig& config, const std::vector<PairCounts>& rows) {
  std::string prov = provenance_line(config);
  std::string synthesized;
  for (const auto& r : rows) {
    if (r.counts.synthesized_minus) synthesized += (synthesized.empty() ? "" : ",") + std::to_string(r.n);
  }
  if (!synthesized.empty()) prov += "\n# synthesized_minus_counts=" + synthesized;
  return metrics_csv(evaluate_links(rows, config.qkd.key), prov);
}

/// `users` absent: the largest network the usable pairs support.
inline NetworkPlan cmd_plan_network(const std::vector<LinkMetrics>& metrics, std::optional<int> users,
                                    AllocationPolicy policy = AllocationPolicy::Lexicographic) {
  const std::vector<LinkMetrics> usable = usable_links(metrics);
  const int n = users ? *users : max_users(static_cast<int>(usable.size()));
  return allocate(usable, n, policy);
}

}  // namespace freqbin

#endif  // FREQBIN_COMMANDS_HPP
