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

// Entanglement-based key distribution figures of merit from Z- and X-basis
// coincidences.

#ifndef FREQBIN_QKD_HPP
#define FREQBIN_QKD_HPP

#include <algorithm>
#include <cmath>
#include <utility>

#include "freqbin/errors.hpp"
#include "freqbin/measurement.hpp"

namespace freqbin {

struct BasisCounts {
  double c00 = 0, c01 = 0, c10 = 0, c11 = 0;  // Z basis
  double cpp = 0, cpm = 0, cmp = 0, cmm = 0;  // X basis
  double tau_s = 1.0;
  /// True when the minus-outcome X counts were inferred rather than measured.
  bool synthesized_minus = false;

  void validate() const {
    for (double c : {c00, c01, c10, c11, cpp, cpm, cmp, cmm}) {
      if (!(c >= 0.0)) throw ValidationError("basis counts: negative count");
    }
    if (!(tau_s > 0.0)) throw ValidationError("basis counts: integration time must be positive");
  }

  BasisCounts scaled(double k) const {
    BasisCounts s = *this;
    for (double* c : {&s.c00, &s.c01, &s.c10, &s.c11, &s.cpp, &s.cpm, &s.cmp, &s.cmm}) *c *= k;
    return s;
  }
};

/// C_Z = (C00 + C01 + C10 + C11)/2, C_X = (C++ + C+- + C-+ + C--)/2.
inline std::pair<double, double> basis_totals(const BasisCounts& c) {
  return {0.5 * (c.c00 + c.c01 + c.c10 + c.c11), 0.5 * (c.cpp + c.cpm + c.cmp + c.cmm)};
}

/// R_raw = (C_Z + C_X) / (2 tau).
inline double raw_rate(const BasisCounts& c) {
  c.validate();
  const auto [cz, cx] = basis_totals(c);
  return 0.5 * (cz + cx) / c.tau_s;
}

/// Fraction of anti-correlated outcomes among all recorded coincidences of both bases.
inline double qber(const BasisCounts& c) {
  c.validate();
  const double total = c.c00 + c.c01 + c.c10 + c.c11 + c.cpp + c.cpm + c.cmp + c.cmm;
  if (!(total > 0.0)) throw UndefinedQuantityError("qber: no coincidences recorded");
  return (c.c01 + c.c10 + c.cpm + c.cmp) / total;
}

inline double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

struct KeyRateParameters {
  double sifting_factor = 0.5;  // passive 50/50 basis choice
  double ec_efficiency = 1.1;   // error-correction inefficiency f
  double threshold = 0.11;
};

/// 1 - (1 + f) h2(e), floored at zero.
inline double secure_fraction(double e, double ec_efficiency) {
  return std::max(0.0, 1.0 - (1.0 + ec_efficiency) * binary_entropy(e));
}

struct SiftedKey {
  double sifted_bps = 0.0;
  double secure_fraction = 0.0;
  double secure_bps = 0.0;
};

inline SiftedKey sifted_key_rate(double raw, double e, const KeyRateParameters& p = {}) {
  if (!(e >= 0.0)) throw ValidationError("sifted key: negative error rate");
  if (e >= 0.5) throw NoKeyError("sifted key: error rate >= 1/2 leaves no key");
  SiftedKey k;
  k.sifted_bps = p.sifting_factor * raw;
  k.secure_fraction = secure_fraction(e, p.ec_efficiency);
  k.secure_bps = k.sifted_bps * k.secure_fraction;
  return k;
}

struct LinkMetrics {
  int n = 0;
  double raw_rate = 0.0;
  double qber = 0.0;
  double sifted_rate = 0.0;
  double secure_fraction = 0.0;
  bool secure = false;
};

/// Secure iff qber < threshold (strict).
inline LinkMetrics evaluate_link(const BasisCounts& c, int n, const KeyRateParameters& p = {}) {
  LinkMetrics m;
  m.n = n;
  m.raw_rate = raw_rate(c);
  m.qber = qber(c);
  m.secure = m.qber < p.threshold;
  if (m.qber < 0.5) {
    const SiftedKey k = sifted_key_rate(m.raw_rate, m.qber, p);
    m.sifted_rate = k.sifted_bps;
    m.secure_fraction = k.secure_fraction;
  }
  return m;
}

/// Z and X counts from a coincidence record. When the record carries no minus
/// outcomes (a 16-projection tomography record), they are filled in as
/// complements of the superposition row sums and flagged.
inline BasisCounts basis_counts_from_record(const CoincidenceRecord& rec) {
  using L = ProjectorLabel;
  rec.validate();
  auto get = [&](L a, L b) { return static_cast<double>(rec.at({a, b})); };
  BasisCounts c;
  c.tau_s = rec.tau_s;
  c.c00 = get(L::Zero, L::Zero);
  c.c01 = get(L::Zero, L::One);
  c.c10 = get(L::One, L::Zero);
  c.c11 = get(L::One, L::One);
  c.cpp = get(L::Plus, L::Plus);
  if (rec.has({L::Plus, L::Minus}) && rec.has({L::Minus, L::Plus}) && rec.has({L::Minus, L::Minus})) {
    c.cpm = get(L::Plus, L::Minus);
    c.cmp = get(L::Minus, L::Plus);
    c.cmm = get(L::Minus, L::Minus);
    return c;
  }
  // Idler '+' against the signal's Z outcomes covers the idler-'+' half of the X context.
  const double idler_plus = get(L::Plus, L::Zero) + get(L::Plus, L::One);
  const double signal_plus = get(L::Zero, L::Plus) + get(L::One, L::Plus);
  c.cpm = std::max(0.0, idler_plus - c.cpp);
  c.cmp = std::max(0.0, signal_plus - c.cpp);
  c.cmm = std::max(0.0, idler_plus - c.cmp);
  c.synthesized_minus = true;
  return c;
}

}  // namespace freqbin

#endif  // FREQBIN_QKD_HPP
