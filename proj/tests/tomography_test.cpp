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
#include <random>

#include "gtest/gtest.h"

#include "freqbin/io.hpp"
#include "freqbin/tomography.hpp"
#include "oracles.hpp"

using namespace freqbin;

namespace {

/// Noise-free counts of a density matrix, scaled to `total` pairs per context.
TomographySet exact_set(const Matrix4c& rho, double total) {
  TomographySet s;
  const auto& labels = tomography_labels();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const TwoQubitState v = product_vector(labels[i]);
    s.counts[i] = total * (v.adjoint() * rho * v)(0, 0).real();
  }
  return s;
}

ProbabilitySet exact_probabilities(const Matrix4c& rho) {
  ProbabilitySet out;
  for (const auto& l : tomography_labels()) {
    const TwoQubitState v = product_vector(l);
    out.emplace_back(l, (v.adjoint() * rho * v)(0, 0).real());
  }
  return out;
}

Matrix4c pure(const TwoQubitState& s) { return s * s.adjoint(); }

TomographySet reference_set() {
  return TomographySet::from_record(load_record(std::string(FREQBIN_DATA_DIR) + "/reference_counts.json", 125.0));
}

}  // namespace

TEST(projector_matrix, analytic_entries) {
  using L = ProjectorLabel;
  Matrix4c zz = Matrix4c::Zero();
  zz(0, 0) = 1.0;
  ASSERT_TRUE(projector_matrix({L::Zero, L::Zero}).isApprox(zz, 1e-15));
  ASSERT_TRUE(projector_matrix({L::Plus, L::Plus}).isApprox(Matrix4c::Constant(0.25), 1e-15));
  const Matrix4c yy = projector_matrix({L::PlusI, L::PlusI});
  const auto a = oracle::label_ket('i');
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const cplx v = a[r / 2] * a[r % 2] * std::conj(a[c / 2] * a[c % 2]);
      ASSERT_LT(std::abs(yy(r, c) - v), 1e-15);
      ASSERT_NEAR(std::abs(yy(r, c)), 0.25, 1e-15);
    }
  }
}

TEST(linear_inversion, phi_plus_round_trip) {
  const Matrix4c rho = pure(phi_plus());
  ASSERT_LT((linear_inversion(exact_probabilities(rho)).rho - rho).norm(), 1e-10);
}

TEST(linear_inversion, maximally_mixed) {
  const Matrix4c rho = Matrix4c::Identity() / 4.0;
  ASSERT_LT((linear_inversion(exact_probabilities(rho)).rho - rho).norm(), 1e-10);
}

TEST(linear_inversion, errors) {
  const ProbabilitySet all = exact_probabilities(pure(phi_plus()));
  const ProbabilitySet few(all.begin(), all.begin() + 8);
  ASSERT_THROW(linear_inversion(few), ReconstructionError);
  ProbabilitySet neg = exact_probabilities(pure(phi_plus()));
  neg[3].second = -0.1;
  ASSERT_THROW(linear_inversion(neg), ValidationError);
  ProbabilitySet dup;
  for (int k = 0; k < 16; ++k) dup.emplace_back(LabelPair{ProjectorLabel::Zero, ProjectorLabel::Zero}, 0.5);
  ASSERT_THROW(linear_inversion(dup), ReconstructionError);
}

TEST(reconstruct, random_pure_states_round_trip) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int t = 0; t < 100; ++t) {
    TwoQubitState s;
    for (int k = 0; k < 4; ++k) s(k) = cplx(g(rng), g(rng));
    s.normalize();
    const Matrix4c rho = pure(s);
    ASSERT_LT(trace_distance(reconstruct(exact_set(rho, 1e4), NormalizationAnchor::ZBasisTotal).rho, rho), 1e-8);
  }
}

TEST(reconstruct, empty_z_context) {
  TomographySet s;
  s.counts.fill(10.0);
  s.counts[0] = s.counts[1] = s.counts[4] = s.counts[5] = 0.0;
  ASSERT_THROW(reconstruct(s), ReconstructionError);
}

TEST(project_to_physical, physical_unchanged) {
  const Matrix4c rho = 0.7 * pure(phi_plus()) + 0.3 * Matrix4c::Identity() / 4.0;
  ASSERT_LT((project_to_physical(rho).rho - rho).norm(), 1e-12);
}

TEST(project_to_physical, clips_negative_eigenvalue) {
  Matrix4c raw = Matrix4c::Zero();
  raw(0, 0) = 1.1;
  raw(1, 1) = -0.1;
  Matrix4c expect = Matrix4c::Zero();
  expect(0, 0) = 1.0;
  const DensityMatrix d = project_to_physical(raw);
  ASSERT_LT((d.rho - expect).norm(), 1e-12);
  ASSERT_GE(d.eigenvalues.minCoeff(), -1e-15);
  ASSERT_LT(d.trace_residual, 1e-12);
}

TEST(state_fidelity, reference_values) {
  ASSERT_NEAR(state_fidelity(make_density(pure(phi_plus()), "x"), phi_plus()), 1.0, 1e-15);
  TwoQubitState t = TwoQubitState::Zero();
  t(1) = 1.0;
  ASSERT_NEAR(state_fidelity(make_density(Matrix4c::Identity() / 4.0, "x"), t), 0.25, 1e-15);
}

TEST(trace_distance, orthogonal_states) {
  TwoQubitState a = TwoQubitState::Zero();
  TwoQubitState b = TwoQubitState::Zero();
  a(0) = 1.0;
  b(3) = 1.0;
  ASSERT_NEAR(trace_distance(pure(a), pure(b)), 1.0, 1e-14);
  ASSERT_NEAR(trace_distance(pure(a), pure(a)), 0.0, 1e-14);
}

TEST(tomography_set, missing_projection) {
  CoincidenceRecord r;
  r.counts[{ProjectorLabel::Zero, ProjectorLabel::Zero}] = 5;
  ASSERT_THROW(TomographySet::from_record(r), ValidationError);
}

TEST(tomography_reference, fidelity) {
  const DensityMatrix d = reconstruct(reference_set());
  ASSERT_NEAR(state_fidelity(d, phi_plus()), 0.961, 0.02);
  ASSERT_GE(d.eigenvalues.minCoeff(), -1e-12);
  ASSERT_LT(d.trace_residual, 1e-12);
}

TEST(tomography_reference, z_total_anchor_is_lower) {
  const double row = state_fidelity(reconstruct(reference_set(), NormalizationAnchor::ContextRowSums), phi_plus());
  const double z = state_fidelity(reconstruct(reference_set(), NormalizationAnchor::ZBasisTotal), phi_plus());
  ASSERT_LT(z, row);
}

TEST(monte_carlo, reference_spread) {
  const auto s = monte_carlo_errors(reference_set(), 1000, 11);
  ASSERT_GE(s.stddev, 0.003);
  ASSERT_LE(s.stddev, 0.015);
  ASSERT_EQ(s.failures, 0);
}

TEST(monte_carlo, large_counts_small_spread) {
  const auto s = monte_carlo_errors(exact_set(pure(phi_plus()), 1e6), 100, 1);
  ASSERT_LT(s.stddev, 1e-3);
  ASSERT_GT(s.mean, 0.99);
}

TEST(monte_carlo, deterministic_and_validated) {
  const auto a = monte_carlo_errors(reference_set(), 100, 4);
  const auto b = monte_carlo_errors(reference_set(), 100, 4);
  ASSERT_EQ(a.mean, b.mean);
  ASSERT_EQ(a.stddev, b.stddev);
  ASSERT_THROW(monte_carlo_errors(reference_set(), 99, 4), ValidationError);
}

TEST(derive_seed, distinct_streams) {
  ASSERT_NE(derive_seed(1, 0), derive_seed(1, 1));
  ASSERT_NE(derive_seed(1, 0), derive_seed(2, 0));
  ASSERT_EQ(derive_seed(9, 3), derive_seed(9, 3));
}
