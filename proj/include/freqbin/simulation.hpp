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

// End-to-end experiment simulation: comb source, per-photon gate projections and
// the detection chain, for one qubit pair or a parallel layout of pairs.

#ifndef FREQBIN_SIMULATION_HPP
#define FREQBIN_SIMULATION_HPP

#include <array>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "freqbin/config.hpp"
#include "freqbin/core_model.hpp"
#include "freqbin/eo_gates.hpp"
#include "freqbin/measurement.hpp"
#include "freqbin/network.hpp"
#include "freqbin/qkd.hpp"
#include "freqbin/tomography.hpp"

namespace freqbin {

inline const std::array<LabelPair, 8>& key_labels() {
  using L = ProjectorLabel;
  static const std::array<LabelPair, 8> labels = {{{L::Zero, L::Zero},
                                                   {L::Zero, L::One},
                                                   {L::One, L::Zero},
                                                   {L::One, L::One},
                                                   {L::Plus, L::Plus},
                                                   {L::Plus, L::Minus},
                                                   {L::Minus, L::Plus},
                                                   {L::Minus, L::Minus}}};
  return labels;
}

class Simulator {
 public:
  explicit Simulator(RunConfig config)
      : config_(std::move(config)),
        model_(config_.resonator.model()),
        state_(biphoton_state(model_, config_.resonator.phase())) {
    config_.detector.validate();
    for (const auto& r : jsi_diagonal(model_, config_.resonator.pump_mw)) rates_[r.n] = r.pairs_per_s;
  }

  const RunConfig& config() const { return config_; }
  const ResonatorModel& model() const { return model_; }
  const BiphotonState& state() const { return state_; }

  /// Generated pairs/s on resonance pair n.
  double mode_rate(int n) const {
    auto it = rates_.find(n);
    if (it == rates_.end()) throw RangeError("simulator: mode " + std::to_string(n) + " outside grid");
    return it->second;
  }

  /// Pair flux into the qubit subspace of pair n (modes n and n+1).
  double pair_rate(int n) const { return mode_rate(n) + mode_rate(n + 1); }

  TwoQubitState qubit_state(int n) const { return select_qubit_pair(state_, n).state; }

  /// Joint detection probability of a projection, including gate losses.
  double probability(int n, const LabelPair& labels) const {
    return gate_projection_probability(qubit_state(n), arm(labels.idler, idler_modes(n)),
                                       arm(labels.signal, signal_modes(n)));
  }

  template <typename Labels>
  Expectations expectations(int n, const Labels& labels, double tau_s) const {
    const TwoQubitState psi = qubit_state(n);
    const double rate = pair_rate(n);
    const ArmSingles singles = singles_rates(rate, config_.detector);
    std::map<ProjectorLabel, ArmProjection> idler_arms;
    std::map<ProjectorLabel, ArmProjection> signal_arms;
    Expectations out;
    for (const LabelPair& l : labels) {
      if (!idler_arms.count(l.idler)) idler_arms.emplace(l.idler, arm(l.idler, idler_modes(n)));
      if (!signal_arms.count(l.signal)) signal_arms.emplace(l.signal, arm(l.signal, signal_modes(n)));
      const double p = gate_projection_probability(psi, idler_arms.at(l.idler), signal_arms.at(l.signal));
      out[l] = expected_coincidences(p, rate, config_.detector, tau_s, singles);
    }
    return out;
  }

  Expectations tomography_expectations(int n) const {
    return expectations(n, tomography_labels(), config_.tomography_tau_s);
  }

  Expectations key_expectations(int n) const { return expectations(n, key_labels(), config_.qkd.tau_s); }

  /// Seed for pair n, derived from the run seed.
  std::uint64_t pair_seed(int n) const { return derive_seed(config_.seed, static_cast<std::uint64_t>(n)); }

  CoincidenceRecord simulate_tomography(int n) const {
    return sample_coincidences(tomography_expectations(n), config_.tomography_tau_s, pair_seed(n));
  }

  BasisCounts simulate_key_counts(int n) const {
    return basis_counts_from_record(sample_coincidences(key_expectations(n), config_.qkd.tau_s, pair_seed(n)));
  }

  /// Qubit-pair bases of the parallel layout, checked against the grid, the guard
  /// spacing and the rf drive.
  std::vector<int> layout() const {
    const auto& q = config_.qkd;
    const auto& g = config_.gate;
    const std::vector<int> bases = pair_layout(q.first_pair, q.n_pairs, g.guard_modes);
    check_guard_feasibility(model_.grid, bases, g.guard_modes);
    make_gate(g, flat_mask(g.rf_ghz)).require_rf_matches(model_.grid.fsr);
    return bases;
  }

 private:
  ArmProjection arm(ProjectorLabel label, QubitModes modes) const {
    return label_projection(label, modes, config_.gate);
  }

  RunConfig config_;
  ResonatorModel model_;
  BiphotonState state_;
  std::map<int, double> rates_;
};

}  // namespace freqbin

#endif  // FREQBIN_SIMULATION_HPP
