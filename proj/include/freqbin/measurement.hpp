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

// Projective measurements on frequency-bin qubit pairs and the coincidence
// detection chain (efficiencies, accidentals, dead time, Poisson sampling).

#ifndef FREQBIN_MEASUREMENT_HPP
#define FREQBIN_MEASUREMENT_HPP

#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>

#include "freqbin/eo_gates.hpp"
#include "freqbin/errors.hpp"
#include "freqbin/linalg.hpp"

namespace freqbin {

enum class ProjectorLabel { Zero, One, Plus, Minus, PlusI, MinusI };

inline std::string_view to_string(ProjectorLabel l) {
  switch (l) {
    case ProjectorLabel::Zero: return "0";
    case ProjectorLabel::One: return "1";
    case ProjectorLabel::Plus: return "+";
    case ProjectorLabel::Minus: return "-";
    case ProjectorLabel::PlusI: return "+i";
    case ProjectorLabel::MinusI: return "-i";
  }
  return "?";
}

inline ProjectorLabel parse_label(std::string_view s) {
  if (s == "0") return ProjectorLabel::Zero;
  if (s == "1") return ProjectorLabel::One;
  if (s == "+") return ProjectorLabel::Plus;
  if (s == "-") return ProjectorLabel::Minus;
  if (s == "+i") return ProjectorLabel::PlusI;
  if (s == "-i") return ProjectorLabel::MinusI;
  throw ValidationError("unknown projector label '" + std::string(s) + "'");
}

/// Unit vector of a single-qubit label: |+-> = (|0> +- |1>)/sqrt2, |+-i> = (|0> +- i|1>)/sqrt2.
inline Vector2c label_vector(ProjectorLabel l) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (l) {
    case ProjectorLabel::Zero: return {1.0, 0.0};
    case ProjectorLabel::One: return {0.0, 1.0};
    case ProjectorLabel::Plus: return {r, r};
    case ProjectorLabel::Minus: return {r, -r};
    case ProjectorLabel::PlusI: return {r, cplx(0.0, r)};
    case ProjectorLabel::MinusI: return {r, cplx(0.0, -r)};
  }
  return {0.0, 0.0};
}

inline bool is_computational(ProjectorLabel l) { return l == ProjectorLabel::Zero || l == ProjectorLabel::One; }

/// (idler, signal) projector labels.
struct LabelPair {
  ProjectorLabel idler = ProjectorLabel::Zero;
  ProjectorLabel signal = ProjectorLabel::Zero;
  auto operator<=>(const LabelPair&) const = default;
};

inline TwoQubitState product_vector(const LabelPair& labels) {
  const Vector2c a = label_vector(labels.idler);
  const Vector2c b = label_vector(labels.signal);
  TwoQubitState v;
  v << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
  return v;
}

/// |<a,b|psi>|^2.
inline double projection_probability(const TwoQubitState& psi, const LabelPair& labels) {
  if (std::abs(psi.squaredNorm() - 1.0) > 1e-9) throw ValidationError("projection: state is not normalized");
  return std::norm(product_vector(labels).dot(psi));
}

/// Lattice modes carrying |0> and |1> of one photon.
struct QubitModes {
  int zero = 0;
  int one = 1;
  ModeWindow span() const { return {std::min(zero, one), std::max(zero, one)}; }
};

/// Signal qubit of pair n sits on lattice modes (n, n+1), idler on (-n, -n-1).
inline QubitModes signal_modes(int n) { return {n, n + 1}; }
inline QubitModes idler_modes(int n) { return {-n, -n - 1}; }

/// One photon's measurement path: a phase on |1> (applied upstream of the gate by
/// the selection filter), the gate itself, and the detected output mode.
struct ArmProjection {
  ModeUnitary unitary;
  QubitModes modes;
  double pre_phase = 0.0;
  int output_mode = 0;
};

/// Joint detection probability after both photons cross their full mode unitaries.
/// Light scattered out of the computational modes is lost, so this carries the
/// gates' success probability.
inline double gate_projection_probability(const TwoQubitState& psi, const ArmProjection& idler,
                                          const ArmProjection& signal) {
  if (std::abs(psi.squaredNorm() - 1.0) > 1e-9) throw ValidationError("gate projection: state is not normalized");
  auto arm_row = [](const ArmProjection& a) {
    const int in[2] = {a.modes.zero, a.modes.one};
    Vector2c r;
    for (int j = 0; j < 2; ++j) r(j) = a.unitary.at(a.output_mode, in[j]);
    r(1) *= std::polar(1.0, a.pre_phase);
    return r;
  };
  const Vector2c ri = arm_row(idler);
  const Vector2c rs = arm_row(signal);
  cplx amp = 0.0;
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) amp += ri(j) * rs(k) * psi(2 * j + k);
  }
  return std::norm(amp);
}

inline ArmProjection make_arm_projection(const GateConfig& gate, QubitModes modes, double pre_phase, int output_mode) {
  ModeWindow w = modes.span();
  w = {std::min(w.lo, output_mode), std::max(w.hi, output_mode)};
  return {compose_gate(gate, w), modes, pre_phase, output_mode};
}

/// Measurement path realizing `label` on one photon with an identity (alpha = 0)
/// or Hadamard (alpha = p.alpha) gate. The upstream phase is calibrated from the
/// simulated gate block so that the detected output projects on the label vector.
inline ArmProjection label_projection(ProjectorLabel label, QubitModes modes, const GateParameters& p) {
  const int lower = std::min(modes.zero, modes.one);
  if (is_computational(label)) {
    const GateConfig gate = qubit_gate(p, lower, 0.0);
    return make_arm_projection(gate, modes, 0.0, label == ProjectorLabel::Zero ? modes.zero : modes.one);
  }
  const GateConfig gate = qubit_gate(p, lower, p.alpha);
  const ModeUnitary u = compose_gate(gate, modes.span());
  const Matrix2c w = extract_qubit_block(u, modes.zero, modes.one);
  // Row 0 of W diag(1, e^{i phi}) must be proportional to <+|.
  double phi = std::arg(w(0, 0)) - std::arg(w(0, 1));
  if (label == ProjectorLabel::PlusI || label == ProjectorLabel::MinusI) phi -= kPi / 2.0;
  const bool first = label == ProjectorLabel::Plus || label == ProjectorLabel::PlusI;
  return {u, modes, phi, first ? modes.zero : modes.one};
}

/// Detection chain of the two arms.
struct DetectorModel {
  double efficiency_idler = 0.7;
  double efficiency_signal = 0.7;
  double window_ns = 1.0;
  double dead_time_ns = 20.0;
  /// Uncorrelated background per arm (detector dark counts plus leaked noise), counts/s.
  double dark_count_rate = 1.76e4;
  /// Lumped optical transmission per arm (couplers, filters, modulators).
  double transmission_idler = 0.0166;
  double transmission_signal = 0.0166;
  /// Include uncorrelated (accidental) coincidences.
  bool accidentals = true;

  void validate() const {
    auto unit = [](double x) { return x >= 0.0 && x <= 1.0; };
    if (!unit(efficiency_idler) || !unit(efficiency_signal) || !unit(transmission_idler) ||
        !unit(transmission_signal)) {
      throw ValidationError("detector: efficiencies and transmissions must lie in [0, 1]");
    }
    if (!(window_ns > 0.0)) throw ValidationError("detector: coincidence window must be positive");
    if (!(dead_time_ns >= 0.0) || !(dark_count_rate >= 0.0)) {
      throw ValidationError("detector: dead time and dark count rate must be >= 0");
    }
  }
};

inline double db_to_transmission(double loss_db) { return std::pow(10.0, -loss_db / 10.0); }

/// Non-paralyzable rate factor 1 / (1 + rate * dead_time).
inline double dead_time_factor(double rate_per_s, double dead_time_ns) {
  return 1.0 / (1.0 + rate_per_s * dead_time_ns * 1e-9);
}

struct ArmSingles {
  double idler = 0.0;
  double signal = 0.0;
};

/// Singles per arm: the fraction of the pair flux reaching the detected mode
/// (one output mode of a qubit: 1/2), plus the background.
inline ArmSingles singles_rates(double pair_rate, const DetectorModel& det, double fraction = 0.5) {
  return {fraction * pair_rate * det.efficiency_idler * det.transmission_idler + det.dark_count_rate,
          fraction * pair_rate * det.efficiency_signal * det.transmission_signal + det.dark_count_rate};
}

/// Mean coincidences in tau seconds: true pairs plus accidentals singles_i * singles_s * window.
inline double expected_coincidences(double prob, double pair_rate, const DetectorModel& det, double tau_s,
                                    const ArmSingles& singles) {
  det.validate();
  if (!(tau_s > 0.0)) throw ValidationError("coincidences: integration time must be positive");
  if (!(prob >= 0.0) || !(pair_rate >= 0.0)) throw ValidationError("coincidences: negative probability or rate");
  const double di = dead_time_factor(singles.idler, det.dead_time_ns);
  const double ds = dead_time_factor(singles.signal, det.dead_time_ns);
  const double true_rate = prob * pair_rate * det.efficiency_idler * det.efficiency_signal *
                           det.transmission_idler * det.transmission_signal * di * ds;
  const double accidental_rate =
      det.accidentals ? singles.idler * di * singles.signal * ds * det.window_ns * 1e-9 : 0.0;
  return (true_rate + accidental_rate) * tau_s;
}

inline double expected_coincidences(double prob, double pair_rate, const DetectorModel& det, double tau_s) {
  return expected_coincidences(prob, pair_rate, det, tau_s, singles_rates(pair_rate, det));
}

/// Pair rate reproducing `counts` coincidences for a projection of probability `prob`.
inline double pair_rate_for_counts(double counts, double prob, const DetectorModel& det, double tau_s) {
  if (!(counts >= 0.0) || !(prob > 0.0)) throw ValidationError("pair rate solve: need counts >= 0 and prob > 0");
  const double floor = expected_coincidences(prob, 0.0, det, tau_s);
  if (counts < floor) throw ValidationError("pair rate solve: counts below the accidental floor");
  double lo = 0.0;
  double hi = 1.0;
  while (expected_coincidences(prob, hi, det, tau_s) < counts) {
    hi *= 2.0;
    if (hi > 1e18) throw ValidationError("pair rate solve: no finite rate reaches the target counts");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (expected_coincidences(prob, mid, det, tau_s) < counts ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Counts per (idler, signal) projection.
struct CoincidenceRecord {
  std::map<LabelPair, std::int64_t> counts;
  double tau_s = 1.0;
  std::uint64_t seed = 0;

  bool has(const LabelPair& l) const { return counts.count(l) != 0; }
  std::int64_t at(const LabelPair& l) const {
    auto it = counts.find(l);
    if (it == counts.end()) {
      throw RangeError("coincidence record: no entry for (" + std::string(to_string(l.idler)) + ", " +
                       std::string(to_string(l.signal)) + ")");
    }
    return it->second;
  }

  void validate() const {
    if (!(tau_s > 0.0)) throw ValidationError("coincidence record: integration time must be positive");
    for (const auto& [label, c] : counts) {
      if (c < 0) throw ValidationError("coincidence record: negative count");
    }
  }
};

using Expectations = std::map<LabelPair, double>;

/// Independent Poisson draws, one per projection, in label order.
inline CoincidenceRecord sample_coincidences(const Expectations& expectations, double tau_s, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CoincidenceRecord rec;
  rec.tau_s = tau_s;
  rec.seed = seed;
  for (const auto& [label, mean] : expectations) {
    if (!(mean >= 0.0)) throw ValidationError("sampling: negative expectation");
    std::int64_t draw = 0;
    if (mean > 0.0) draw = std::poisson_distribution<std::int64_t>(mean)(rng);
    rec.counts[label] = draw;
  }
  rec.validate();
  return rec;
}

}  // namespace freqbin

#endif  // FREQBIN_MEASUREMENT_HPP
