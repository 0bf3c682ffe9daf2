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

// Microring comb model: the mode lattice, the resonator's spectral envelope and
// the frequency-bin entangled biphoton state it emits.

#ifndef FREQBIN_CORE_MODEL_HPP
#define FREQBIN_CORE_MODEL_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "freqbin/errors.hpp"
#include "freqbin/frequency.hpp"
#include "freqbin/linalg.hpp"

namespace freqbin {

/// Lattice of comb modes. Signal n sits at pump + n*fsr, idler n at pump - n*fsr.
struct FrequencyGrid {
  Frequency pump = Frequency::from_thz(194.0);
  Frequency fsr = Frequency::from_ghz(21.18);
  int n_min = 3;
  int n_max = 83;

  int size() const { return n_max - n_min + 1; }
  bool contains(int n) const { return n >= n_min && n <= n_max; }

  void validate() const {
    if (fsr.hz() <= 0) throw ValidationError("frequency grid: fsr must be positive");
    if (n_min < 1) throw ValidationError("frequency grid: n_min must be >= 1");
    if (n_max < n_min) throw ValidationError("frequency grid: n_max must be >= n_min");
  }
};

struct ModeFrequencies {
  Frequency idler;
  Frequency signal;
};

inline ModeFrequencies mode_frequencies(const FrequencyGrid& grid, int n) {
  if (!grid.contains(n)) {
    throw RangeError("mode index " + std::to_string(n) + " outside [" + std::to_string(grid.n_min) +
                     ", " + std::to_string(grid.n_max) + "]");
  }
  return {grid.pump - grid.fsr * n, grid.pump + grid.fsr * n};
}

/// A Gaussian notch in the spectral envelope (coupler ripple, filter dips).
struct EnvelopeDip {
  double center = 0.0;
  double depth = 0.0;  // fractional suppression at the center, in [0, 1]
  double width = 1.0;  // standard deviation in mode units
};

/// Stand-in for the grating-coupler roll-off: a Gaussian in n with optional dips.
struct EnvelopeShape {
  double center = 0.0;
  double width = 50.0;
  std::vector<EnvelopeDip> dips;
};

/// Envelope used when a configuration supplies no transmission table. The dips
/// near n = 50 and n = 70 reproduce the features seen in the coincidence spectrum.
inline EnvelopeShape default_envelope_shape() {
  return {19.0, 21.1, {{52.25, 0.987, 3.9}, {69.75, 0.74, 3.8}}};
}

inline std::vector<double> envelope_table(const FrequencyGrid& grid, const EnvelopeShape& shape) {
  std::vector<double> t;
  t.reserve(grid.size());
  for (int n = grid.n_min; n <= grid.n_max; ++n) {
    const double x = (n - shape.center) / shape.width;
    double v = std::exp(-0.5 * x * x);
    for (const auto& dip : shape.dips) {
      const double y = (n - dip.center) / dip.width;
      v *= 1.0 - dip.depth * std::exp(-0.5 * y * y);
    }
    t.push_back(v);
  }
  return t;
}

/// Spectral properties of the resonator.
struct ResonatorModel {
  FrequencyGrid grid;
  double linewidth_fwhm_ghz = 0.6;
  double quality_factor = 3.0e5;
  /// Joint signal/idler transmission factor for pair n, stored at index n - n_min.
  std::vector<double> transmission;
  /// Total generated pairs/s over the grid at the reference pump power.
  double internal_pair_rate = 15.87e6;
  double reference_pump_mw = 0.75;

  double transmission_at(int n) const {
    if (!grid.contains(n)) throw RangeError("transmission: mode " + std::to_string(n) + " outside grid");
    return transmission[static_cast<std::size_t>(n - grid.n_min)];
  }

  /// Q against f/FWHM at the pump resonance, within 10%.
  bool quality_factor_consistent() const {
    const double expected = grid.pump.ghz() / linewidth_fwhm_ghz;
    return std::abs(quality_factor - expected) <= 0.1 * expected;
  }

  void validate() const {
    grid.validate();
    if (!(linewidth_fwhm_ghz > 0.0)) throw ValidationError("resonator: linewidth must be positive");
    if (transmission.size() != static_cast<std::size_t>(grid.size())) {
      throw ValidationError("resonator: transmission table does not cover the grid");
    }
    for (double t : transmission) {
      if (!(t >= 0.0 && t <= 1.0)) throw ValidationError("resonator: transmission factor outside [0, 1]");
    }
    if (!(internal_pair_rate >= 0.0) || !(reference_pump_mw > 0.0)) {
      throw ValidationError("resonator: brightness and reference power must be positive");
    }
  }
};

inline ResonatorModel make_resonator(const FrequencyGrid& grid, std::vector<double> transmission) {
  ResonatorModel m;
  m.grid = grid;
  m.transmission = std::move(transmission);
  m.validate();
  return m;
}

/// Frequency-bin entangled state sum_n c_n |I_n>|S_n>.
struct BiphotonState {
  FrequencyGrid grid;
  std::vector<cplx> amplitudes;
  std::vector<double> residual_phases;

  cplx amplitude(int n) const {
    if (!grid.contains(n)) throw RangeError("biphoton amplitude: mode " + std::to_string(n) + " outside grid");
    return amplitudes[static_cast<std::size_t>(n - grid.n_min)];
  }
  double residual_phase(int n) const {
    if (!grid.contains(n)) throw RangeError("biphoton phase: mode " + std::to_string(n) + " outside grid");
    return residual_phases[static_cast<std::size_t>(n - grid.n_min)];
  }
  double norm_squared() const {
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a);
    return s;
  }
};

using PhaseProfile = std::function<double(int)>;

inline PhaseProfile zero_phase() {
  return [](int) { return 0.0; };
}

/// Dispersion-like residual phase coeff * n^2.
inline PhaseProfile quadratic_phase(double coeff) {
  return [coeff](int n) { return coeff * static_cast<double>(n) * static_cast<double>(n); };
}

inline BiphotonState biphoton_state(const ResonatorModel& model, const PhaseProfile& phase) {
  model.validate();
  double total = 0.0;
  for (double t : model.transmission) total += t;
  if (!(total > 0.0)) throw DegenerateStateError("biphoton state: transmission table is all zero");

  BiphotonState s;
  s.grid = model.grid;
  s.amplitudes.reserve(model.grid.size());
  s.residual_phases.reserve(model.grid.size());
  for (int n = model.grid.n_min; n <= model.grid.n_max; ++n) {
    const double alpha = phase(n);
    const double mag = std::sqrt(model.transmission_at(n) / total);
    s.residual_phases.push_back(alpha);
    s.amplitudes.push_back(std::polar(mag, alpha));
  }
  return s;
}

struct ModeRate {
  int n = 0;
  double pairs_per_s = 0.0;
};

/// Generated pair rate per comb index: quadratic in pump power, shaped by the
/// transmission table, summing to the internal brightness at the reference power.
inline std::vector<ModeRate> jsi_diagonal(const ResonatorModel& model, double pump_power_mw) {
  if (!(pump_power_mw > 0.0)) throw ValidationError("jsi: pump power must be positive");
  model.validate();
  double total = 0.0;
  for (double t : model.transmission) total += t;
  const double scale = pump_power_mw / model.reference_pump_mw;
  const double norm = total > 0.0 ? model.internal_pair_rate * scale * scale / total : 0.0;
  std::vector<ModeRate> out;
  out.reserve(model.grid.size());
  for (int n = model.grid.n_min; n <= model.grid.n_max; ++n) {
    out.push_back({n, norm * model.transmission_at(n)});
  }
  return out;
}

/// Logical encoding |0> <-> mode n, |1> <-> mode n+1 on both photons.
struct QubitPairSelection {
  int base_index = 0;
  double compensation_phase = 0.0;
};

struct SelectedPair {
  TwoQubitState state;
  QubitPairSelection selection;
};

/// Phase that cancels the residual biphoton phase difference of pair (n, n+1).
inline double full_compensation(const BiphotonState& state, int n) {
  return state.residual_phase(n + 1) - state.residual_phase(n);
}

/// a|00> + b e^{i(alpha_{n+1} - alpha_n - compensation)}|11>, normalized.
inline SelectedPair select_qubit_pair(const BiphotonState& state, int n, double compensation_phase) {
  if (!state.grid.contains(n) || !state.grid.contains(n + 1)) {
    throw RangeError("qubit pair: modes " + std::to_string(n) + ", " + std::to_string(n + 1) +
                     " not both on the grid");
  }
  const double a = std::abs(state.amplitude(n));
  const double b = std::abs(state.amplitude(n + 1));
  const double norm = std::hypot(a, b);
  if (!(norm > 0.0)) throw DegenerateStateError("qubit pair: both modes are empty");
  const double rel = state.residual_phase(n + 1) - state.residual_phase(n) - compensation_phase;
  SelectedPair out;
  out.state = TwoQubitState::Zero();
  out.state(0) = a / norm;
  out.state(3) = std::polar(b / norm, rel);
  out.selection = {n, compensation_phase};
  return out;
}

inline SelectedPair select_qubit_pair(const BiphotonState& state, int n) {
  if (!state.grid.contains(n) || !state.grid.contains(n + 1)) {
    throw RangeError("qubit pair: modes " + std::to_string(n) + ", " + std::to_string(n + 1) +
                     " not both on the grid");
  }
  return select_qubit_pair(state, n, full_compensation(state, n));
}

}  // namespace freqbin

#endif  // FREQBIN_CORE_MODEL_HPP
