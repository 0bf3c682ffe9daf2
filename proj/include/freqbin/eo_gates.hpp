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

// Electro-optic frequency-bin gates: phase modulator -> programmable filter ->
// phase modulator, represented as truncated unitaries on the comb lattice.
//
// Mode indices here are absolute lattice positions m, i.e. the optical
// frequency is pump + m * spacing. Signal mode n is m = n, idler mode n is m = -n.

#ifndef FREQBIN_EO_GATES_HPP
#define FREQBIN_EO_GATES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "freqbin/errors.hpp"
#include "freqbin/frequency.hpp"
#include "freqbin/linalg.hpp"

namespace freqbin {

/// Inclusive range of lattice modes [lo, hi].
struct ModeWindow {
  int lo = 0;
  int hi = 0;

  int size() const { return hi - lo + 1; }
  bool contains(int m) const { return m >= lo && m <= hi; }
  bool contains(const ModeWindow& w) const { return w.lo >= lo && w.hi <= hi; }
  ModeWindow padded(int margin) const { return {lo - margin, hi + margin}; }
  int offset(int m) const { return m - lo; }

  bool operator==(const ModeWindow&) const = default;
};

/// Bessel function of the first kind for any integer order: J_{-k} = (-1)^k J_k.
inline double bessel_j(int k, double x) {
  const int a = std::abs(k);
  const double v = std::cyl_bessel_j(static_cast<double>(a), x);
  return (k < 0 && (a % 2 == 1)) ? -v : v;
}

/// Weight sum_{k > order} J_k(mu)^2 carried by sidebands beyond `order` on one side.
inline double sideband_tail(double mu, int order) {
  double tail = 0.0;
  for (int k = order + 1; k <= order + 80; ++k) {
    const double j = bessel_j(k, mu);
    tail += j * j;
    if (j * j < 1e-300) break;
  }
  return tail;
}

/// Smallest order r such that both sideband tails beyond r carry less than `tolerance`.
inline int sideband_reach(double mu, double tolerance = 1e-12) {
  int r = 0;
  while (2.0 * sideband_tail(mu, r) >= tolerance) ++r;
  return r;
}

/// Sinusoidal phase modulator drive phi(t) = mu cos(Omega t + theta).
struct EomSettings {
  double modulation_index = 0.0;  // mu = pi V / V_pi
  double rf_ghz = 21.18;
  double rf_phase = 0.0;

  void validate() const {
    if (!(modulation_index >= 0.0)) throw ValidationError("eom: modulation index must be >= 0");
    if (!(rf_ghz > 0.0)) throw ValidationError("eom: rf frequency must be positive");
  }
};

/// Dense operator on a contiguous mode window; element (out, in).
struct ModeUnitary {
  ModeWindow window;
  MatrixXc matrix;
  /// 1 - min column norm over the requested columns, measured before restriction.
  double truncation_error = 0.0;

  cplx at(int out, int in) const {
    if (!window.contains(out) || !window.contains(in)) {
      throw RangeError("mode unitary: element (" + std::to_string(out) + ", " + std::to_string(in) +
                       ") outside window");
    }
    return matrix(window.offset(out), window.offset(in));
  }

  ModeUnitary restricted(const ModeWindow& w) const {
    if (!window.contains(w)) throw RangeError("mode unitary: restriction window not contained");
    ModeUnitary r;
    r.window = w;
    r.matrix = matrix.block(window.offset(w.lo), window.offset(w.lo), w.size(), w.size());
    r.truncation_error = truncation_error;
    return r;
  }

  /// max |1 - ||column||| over the input modes of `interior`.
  double column_norm_deviation(const ModeWindow& interior) const {
    double dev = 0.0;
    for (int m = interior.lo; m <= interior.hi; ++m) {
      dev = std::max(dev, std::abs(1.0 - matrix.col(window.offset(m)).norm()));
    }
    return dev;
  }

  double row_norm_deviation(const ModeWindow& interior) const {
    double dev = 0.0;
    for (int m = interior.lo; m <= interior.hi; ++m) {
      dev = std::max(dev, std::abs(1.0 - matrix.row(window.offset(m)).norm()));
    }
    return dev;
  }
};

/// Phase modulator as a banded matrix: input n couples to n + k with
/// amplitude i^k J_k(mu) e^{i k theta} (Jacobi-Anger expansion of e^{i mu cos}).
inline ModeUnitary eom_unitary(const EomSettings& settings, const ModeWindow& window) {
  settings.validate();
  if (window.size() < 1) throw RangeError("eom: empty window");
  const double mu = settings.modulation_index;
  const int reach = sideband_reach(mu);
  if (window.size() < 2 * reach + 1) {
    throw TruncationError("eom: window of " + std::to_string(window.size()) + " modes cannot hold the " +
                          std::to_string(2 * reach + 1) + " sidebands of mu = " + std::to_string(mu));
  }
  const int n = window.size();
  std::vector<cplx> coupling(static_cast<std::size_t>(2 * n - 1));
  for (int k = -(n - 1); k <= n - 1; ++k) {
    // i^k e^{ik theta} = e^{ik(theta + pi/2)}
    coupling[static_cast<std::size_t>(k + n - 1)] =
        std::polar(bessel_j(k, mu), static_cast<double>(k) * (settings.rf_phase + kPi / 2.0));
  }
  ModeUnitary u;
  u.window = window;
  u.matrix.resize(n, n);
  for (int in = 0; in < n; ++in) {
    for (int out = 0; out < n; ++out) u.matrix(out, in) = coupling[static_cast<std::size_t>(out - in + n - 1)];
  }
  return u;
}

/// Diagonal spectral mask. Outside `span` the mask holds its edge values.
struct PfMask {
  ModeWindow span{0, 0};
  std::vector<double> phase{0.0};
  std::vector<double> amplitude{1.0};
  double dispersion_ps_per_nm = 0.0;
  int reference_mode = 0;  // dispersion phase vanishes here
  double spacing_ghz = 21.18;
  double center_wavelength_nm = 1540.0;
  double resolution_ghz = 10.0;

  double phase_at(int m) const { return phase[clamp_index(m)]; }
  double amplitude_at(int m) const { return amplitude[clamp_index(m)]; }

  /// Quadratic spectral phase of a dispersive element of D ps/nm, relative to the
  /// reference mode: phi = -pi D lambda^2 / c * (f - f_ref)^2.
  double dispersion_phase(int m) const {
    if (dispersion_ps_per_nm == 0.0) return 0.0;
    const double d_s_per_m = dispersion_ps_per_nm * 1e-3;
    const double lambda = center_wavelength_nm * 1e-9;
    const double df = static_cast<double>(m - reference_mode) * spacing_ghz * 1e9;
    return -kPi * d_s_per_m * lambda * lambda / kSpeedOfLight * df * df;
  }

  void validate() const {
    if (phase.size() != static_cast<std::size_t>(span.size()) ||
        amplitude.size() != static_cast<std::size_t>(span.size())) {
      throw ValidationError("pf mask: entry count does not match span");
    }
    for (double a : amplitude) {
      if (!(a >= 0.0 && a <= 1.0)) throw ValidationError("pf mask: amplitude outside [0, 1]");
    }
    if (!(spacing_ghz > 0.0)) throw ValidationError("pf mask: spacing must be positive");
  }

 private:
  std::size_t clamp_index(int m) const {
    return static_cast<std::size_t>(std::clamp(m, span.lo, span.hi) - span.lo);
  }
};

/// Mask with every phase zero and amplitude one.
inline PfMask flat_mask(double spacing_ghz = 21.18) {
  PfMask m;
  m.spacing_ghz = spacing_ghz;
  return m;
}

inline ModeUnitary pf_unitary(const PfMask& mask, const ModeWindow& window) {
  mask.validate();
  ModeUnitary u;
  u.window = window;
  u.matrix = MatrixXc::Zero(window.size(), window.size());
  for (int m = window.lo; m <= window.hi; ++m) {
    const int i = window.offset(m);
    u.matrix(i, i) = std::polar(mask.amplitude_at(m), mask.phase_at(m) + mask.dispersion_phase(m));
  }
  return u;
}

/// [EOM - PF - EOM] gate.
struct GateConfig {
  EomSettings eom1;
  PfMask mask;
  EomSettings eom2;
  int truncation_margin = 16;

  void validate() const {
    eom1.validate();
    eom2.validate();
    mask.validate();
    if (truncation_margin < 8) throw ValidationError("gate: truncation margin must be >= 8");
    if (std::abs(eom1.rf_ghz - eom2.rf_ghz) > 1e-9) {
      throw ValidationError("gate: both modulators must share one rf frequency");
    }
  }

  /// Qubit gates need the rf drive to match the comb spacing.
  void require_rf_matches(Frequency fsr, double tolerance_ghz = 1e-3) const {
    if (std::abs(eom1.rf_ghz - fsr.ghz()) > tolerance_ghz) {
      throw ValidationError("gate: rf frequency " + std::to_string(eom1.rf_ghz) +
                            " GHz does not match the comb spacing " + std::to_string(fsr.ghz()) + " GHz");
    }
  }
};

/// eom2 * pf * eom1 on the window padded by the truncation margin, restricted
/// back to `window`.
inline ModeUnitary compose_gate(const GateConfig& config, const ModeWindow& window) {
  config.validate();
  const ModeWindow padded = window.padded(config.truncation_margin);
  const ModeUnitary first = eom_unitary(config.eom1, padded);
  const ModeUnitary second = eom_unitary(config.eom2, padded);

  MatrixXc masked = first.matrix;
  for (int m = padded.lo; m <= padded.hi; ++m) {
    const int i = padded.offset(m);
    masked.row(i) *= std::polar(config.mask.amplitude_at(m), config.mask.phase_at(m) + config.mask.dispersion_phase(m));
  }
  ModeUnitary full;
  full.window = padded;
  full.matrix = second.matrix * masked;

  double min_norm = 1.0;
  for (int m = window.lo; m <= window.hi; ++m) {
    min_norm = std::min(min_norm, full.matrix.col(padded.offset(m)).norm());
  }
  full.truncation_error = 1.0 - min_norm;
  return full.restricted(window);
}

/// The 2x2 block of `u` on (mode0, mode1); row/column 0 is |0>.
inline Matrix2c extract_qubit_block(const ModeUnitary& u, int mode0, int mode1) {
  if (!u.window.contains(mode0) || !u.window.contains(mode1)) {
    throw RangeError("qubit block: modes " + std::to_string(mode0) + ", " + std::to_string(mode1) +
                     " outside the unitary window");
  }
  Matrix2c w;
  w << u.at(mode0, mode0), u.at(mode0, mode1), u.at(mode1, mode0), u.at(mode1, mode1);
  return w;
}

/// F = Tr(W^+ T) Tr(T^+ W) / (Tr(W^+ W) Tr(T^+ T)); insensitive to the scale and
/// global phase of W.
inline double gate_fidelity(const Matrix2c& w, const Matrix2c& t) {
  const double tt = (t.adjoint() * t).trace().real();
  if (!(tt > 0.0)) throw ValidationError("gate fidelity: target operation is zero");
  const double ww = (w.adjoint() * w).trace().real();
  if (!(ww > 0.0)) throw UndefinedQuantityError("gate fidelity: realized operation is zero");
  const cplx overlap = (w.adjoint() * t).trace();
  return std::norm(overlap) / (ww * tt);
}

/// P = Tr(W^+ W) / Tr(T^+ T): intensity kept in the computational modes.
inline double success_probability(const Matrix2c& w, const Matrix2c& t) {
  const double tt = (t.adjoint() * t).trace().real();
  if (!(tt > 0.0)) throw ValidationError("success probability: target operation is zero");
  return (w.adjoint() * w).trace().real() / tt;
}

/// Programmable-filter layout for several qubits driven through one gate.
///
/// Each block (b, b+1) receives a phase step of its own alpha between its two
/// modes. Steps accumulate (a staircase), so guard modes carry no phase
/// discontinuity of their own and neighboring gates stay independent.
inline PfMask parallel_mask(std::vector<int> lower_modes, std::vector<double> alphas, int guard_modes,
                            double spacing_ghz = 21.18, double resolution_ghz = 10.0) {
  if (lower_modes.empty()) throw LayoutError("parallel mask: no qubit blocks");
  if (alphas.size() == 1 && lower_modes.size() > 1) alphas.assign(lower_modes.size(), alphas.front());
  if (alphas.size() != lower_modes.size()) throw LayoutError("parallel mask: one alpha per qubit block required");
  if (guard_modes < 0) throw LayoutError("parallel mask: negative guard count");
  if (spacing_ghz < resolution_ghz) {
    throw LayoutError("parallel mask: mode spacing " + std::to_string(spacing_ghz) +
                      " GHz is below the filter resolution " + std::to_string(resolution_ghz) + " GHz");
  }

  std::vector<std::size_t> order(lower_modes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lower_modes[a] < lower_modes[b]; });

  for (std::size_t j = 1; j < order.size(); ++j) {
    const int gap = lower_modes[order[j]] - lower_modes[order[j - 1]] - 2;
    if (gap < 0) {
      throw LayoutError("parallel mask: blocks at " + std::to_string(lower_modes[order[j - 1]]) + " and " +
                        std::to_string(lower_modes[order[j]]) + " overlap");
    }
    if (gap < guard_modes) {
      throw LayoutError("parallel mask: only " + std::to_string(gap) + " guard modes between blocks at " +
                        std::to_string(lower_modes[order[j - 1]]) + " and " +
                        std::to_string(lower_modes[order[j]]) + ", need " + std::to_string(guard_modes));
    }
  }

  PfMask mask;
  mask.spacing_ghz = spacing_ghz;
  mask.resolution_ghz = resolution_ghz;
  mask.span = {lower_modes[order.front()], lower_modes[order.back()] + 1};
  mask.phase.assign(static_cast<std::size_t>(mask.span.size()), 0.0);
  mask.amplitude.assign(static_cast<std::size_t>(mask.span.size()), 1.0);
  for (int m = mask.span.lo; m <= mask.span.hi; ++m) {
    double level = 0.0;
    for (std::size_t j : order) {
      if (m >= lower_modes[j] + 1) level += alphas[j];
    }
    mask.phase[static_cast<std::size_t>(mask.span.offset(m))] = std::remainder(level, 2.0 * kPi);
  }
  return mask;
}

/// Step of height alpha between lower_mode and lower_mode + 1.
inline PfMask single_qubit_mask(int lower_mode, double alpha, double spacing_ghz = 21.18) {
  return parallel_mask({lower_mode}, {alpha}, 0, spacing_ghz);
}

/// Output intensity landing in `target` (both modes) for unit input at `source_mode`.
inline double crosstalk(const GateConfig& config, int source_mode, const ModeWindow& target) {
  if (target.contains(source_mode)) throw ValidationError("crosstalk: source mode lies inside the target block");
  const ModeWindow window{std::min(source_mode, target.lo), std::max(source_mode, target.hi)};
  const ModeUnitary u = compose_gate(config, window);
  double total = 0.0;
  for (int m = target.lo; m <= target.hi; ++m) total += std::norm(u.at(m, source_mode));
  return total;
}

/// Drive and mask parameters of one gate, as they appear in run configurations.
struct GateParameters {
  double mu1 = 0.81;
  double theta1 = kPi / 2.0;
  double mu2 = 0.81;
  double theta2 = 3.0 * kPi / 2.0;
  double rf_ghz = 21.18;
  double alpha = kPi;
  int guard_modes = 2;
  int truncation_margin = 16;
  double dispersion_ps_nm = 0.0;
};

inline GateConfig make_gate(const GateParameters& p, PfMask mask) {
  GateConfig g;
  g.eom1 = {p.mu1, p.rf_ghz, p.theta1};
  g.eom2 = {p.mu2, p.rf_ghz, p.theta2};
  mask.spacing_ghz = p.rf_ghz;
  mask.dispersion_ps_per_nm = p.dispersion_ps_nm;
  g.mask = std::move(mask);
  g.truncation_margin = p.truncation_margin;
  g.validate();
  return g;
}

/// Single-qubit gate on (lower_mode, lower_mode + 1) with step height alpha.
inline GateConfig qubit_gate(const GateParameters& p, int lower_mode, double alpha) {
  PfMask mask = single_qubit_mask(lower_mode, alpha, p.rf_ghz);
  mask.reference_mode = lower_mode;
  return make_gate(p, std::move(mask));
}

}  // namespace freqbin

#endif  // FREQBIN_EO_GATES_HPP
