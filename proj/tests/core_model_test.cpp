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

#include <cmath>

#include "gtest/gtest.h"

#include "freqbin/config.hpp"
#include "freqbin/core_model.hpp"

using namespace freqbin;

namespace {

ResonatorModel flat_model(int n_min = 3, int n_max = 83) {
  FrequencyGrid g;
  g.n_min = n_min;
  g.n_max = n_max;
  return make_resonator(g, std::vector<double>(static_cast<std::size_t>(g.size()), 1.0));
}

}  // namespace

TEST(frequency, exact_integer_arithmetic) {
  const Frequency f = Frequency::from_ghz(21.18);
  ASSERT_EQ(f.hz(), 21180000000LL);
  ASSERT_EQ((f * 3).hz(), 63540000000LL);
  ASSERT_TRUE(Frequency::from_thz(194.0) > Frequency::from_thz(193.9));
}

TEST(core_model, mode_frequencies_first_pair) {
  FrequencyGrid g;
  g.n_min = 1;
  const auto m = mode_frequencies(g, 1);
  ASSERT_NEAR(m.idler.thz(), 193.97882, 1e-9);
  ASSERT_NEAR(m.signal.thz(), 194.02118, 1e-9);
}

TEST(core_model, mode_frequencies_symmetric_about_pump) {
  FrequencyGrid g;
  for (int n = g.n_min; n <= g.n_max; ++n) {
    const auto m = mode_frequencies(g, n);
    ASSERT_EQ((m.idler + m.signal).hz(), (g.pump * 2).hz());
  }
}

TEST(core_model, mode_frequencies_out_of_range) {
  FrequencyGrid g;
  ASSERT_THROW(mode_frequencies(g, g.n_max + 1), RangeError);
  ASSERT_THROW(mode_frequencies(g, g.n_min - 1), RangeError);
}

TEST(core_model, grid_validation) {
  FrequencyGrid g;
  g.n_min = 0;
  ASSERT_THROW(g.validate(), ValidationError);
  g.n_min = 10;
  g.n_max = 5;
  ASSERT_THROW(g.validate(), ValidationError);
}

TEST(core_model, quality_factor_matches_linewidth) {
  const ResonatorModel m = flat_model();
  ASSERT_TRUE(m.quality_factor_consistent());
  ResonatorModel off = m;
  off.quality_factor = 1e6;
  ASSERT_FALSE(off.quality_factor_consistent());
}

TEST(core_model, flat_biphoton_uniform_amplitudes) {
  const ResonatorModel m = flat_model(1, 16);
  const BiphotonState s = biphoton_state(m, zero_phase());
  for (const auto& a : s.amplitudes) ASSERT_NEAR(std::abs(a), 0.25, 1e-15);
  ASSERT_NEAR(s.norm_squared(), 1.0, 1e-14);
}

TEST(core_model, dip_reduces_amplitude) {
  ResonatorModel m = flat_model();
  m.transmission[static_cast<std::size_t>(50 - m.grid.n_min)] = 0.2;
  const BiphotonState s = biphoton_state(m, zero_phase());
  ASSERT_LT(std::abs(s.amplitude(50)), std::abs(s.amplitude(49)));
  ASSERT_NEAR(std::norm(s.amplitude(50)) / std::norm(s.amplitude(49)), 0.2, 1e-12);
  ASSERT_NEAR(s.norm_squared(), 1.0, 1e-12);
}

TEST(core_model, quadratic_phase_stored_verbatim) {
  const BiphotonState s = biphoton_state(flat_model(), quadratic_phase(0.013));
  ASSERT_DOUBLE_EQ(s.residual_phase(7), 0.013 * 49);
  ASSERT_NEAR(std::arg(s.amplitude(7)), std::remainder(0.013 * 49, 2 * kPi), 1e-12);
}

TEST(core_model, zero_transmission_is_degenerate) {
  FrequencyGrid g;
  const ResonatorModel m = make_resonator(g, std::vector<double>(static_cast<std::size_t>(g.size()), 0.0));
  ASSERT_THROW(biphoton_state(m, zero_phase()), DegenerateStateError);
}

TEST(core_model, transmission_table_validated) {
  FrequencyGrid g;
  ASSERT_THROW(make_resonator(g, {1.0, 1.0}), ValidationError);
  ASSERT_THROW(make_resonator(g, std::vector<double>(static_cast<std::size_t>(g.size()), 1.5)), ValidationError);
}

TEST(core_model, jsi_flat_is_constant) {
  const auto rates = jsi_diagonal(flat_model(), 0.75);
  for (const auto& r : rates) ASSERT_NEAR(r.pairs_per_s, rates.front().pairs_per_s, 1e-9);
  double total = 0.0;
  for (const auto& r : rates) total += r.pairs_per_s;
  ASSERT_NEAR(total, 15.87e6, 1e-3);
}

TEST(core_model, jsi_quadratic_in_pump) {
  const ResonatorModel m = flat_model();
  const auto a = jsi_diagonal(m, 0.5);
  const auto b = jsi_diagonal(m, 1.0);
  for (std::size_t i = 0; i < a.size(); ++i) ASSERT_NEAR(b[i].pairs_per_s / a[i].pairs_per_s, 4.0, 1e-12);
  ASSERT_THROW(jsi_diagonal(m, 0.0), ValidationError);
}

TEST(core_model, default_envelope_declines_with_dips) {
  FrequencyGrid g;
  const auto t = envelope_table(g, default_envelope_shape());
  auto at = [&](int n) { return t[static_cast<std::size_t>(n - g.n_min)]; };
  ASSERT_GT(at(20), at(40));
  ASSERT_LT(at(52), at(48));
  ASSERT_LT(at(52), at(56));
  ASSERT_LT(at(70), at(66));
  for (double v : t) {
    ASSERT_GE(v, 0.0);
    ASSERT_LE(v, 1.0);
  }
}

TEST(core_model, select_pair_phi_plus) {
  const BiphotonState s = biphoton_state(flat_model(), quadratic_phase(0.3));
  const auto sel = select_qubit_pair(s, 10);
  ASSERT_NEAR(std::abs(sel.state.dot(phi_plus())), 1.0, 1e-12);
  ASSERT_NEAR(sel.selection.compensation_phase, 0.3 * (121 - 100), 1e-12);
}

TEST(core_model, select_pair_unequal_amplitudes) {
  ResonatorModel m = flat_model();
  m.transmission[static_cast<std::size_t>(21 - m.grid.n_min)] = 0.5;
  const auto sel = select_qubit_pair(biphoton_state(m, zero_phase()), 20);
  ASSERT_NEAR(std::abs(sel.state(0)) / std::abs(sel.state(3)), std::sqrt(2.0), 1e-12);
  ASSERT_NEAR(sel.state.squaredNorm(), 1.0, 1e-12);
}

TEST(core_model, select_pair_uncompensated_phase) {
  const BiphotonState s = biphoton_state(flat_model(), [](int n) { return n == 11 ? kPi : 0.0; });
  const auto sel = select_qubit_pair(s, 10, 0.0);
  ASSERT_NEAR(sel.state(0).real(), 1.0 / std::sqrt(2.0), 1e-12);
  ASSERT_NEAR(sel.state(3).real(), -1.0 / std::sqrt(2.0), 1e-12);
}

TEST(core_model, select_pair_out_of_range) {
  const BiphotonState s = biphoton_state(flat_model(), zero_phase());
  ASSERT_THROW(select_qubit_pair(s, 83), RangeError);
  ASSERT_THROW(select_qubit_pair(s, 2), RangeError);
}
