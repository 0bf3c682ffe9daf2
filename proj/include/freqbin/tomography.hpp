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

// Two-qubit state tomography from the 16 projections {0,1,+,+i} x {0,1,+,+i}:
// count normalization, linear inversion, physicality projection, fidelity and
// Monte-Carlo error bars.

#ifndef FREQBIN_TOMOGRAPHY_HPP
#define FREQBIN_TOMOGRAPHY_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "freqbin/errors.hpp"
#include "freqbin/linalg.hpp"
#include "freqbin/measurement.hpp"

namespace freqbin {

/// The 16 measured projections, idler label major.
inline const std::array<LabelPair, 16>& tomography_labels() {
  static const std::array<LabelPair, 16> labels = [] {
    const ProjectorLabel basis[4] = {ProjectorLabel::Zero, ProjectorLabel::One, ProjectorLabel::Plus,
                                     ProjectorLabel::PlusI};
    std::array<LabelPair, 16> out{};
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) out[static_cast<std::size_t>(4 * a + b)] = {basis[a], basis[b]};
    }
    return out;
  }();
  return labels;
}

struct TomographySet {
  std::array<double, 16> counts{};  // in tomography_labels() order
  double tau_s = 1.0;

  double count(const LabelPair& l) const {
    const auto& labels = tomography_labels();
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == l) return counts[i];
    }
    throw RangeError("tomography set: label pair is not one of the 16 projections");
  }

  static TomographySet from_record(const CoincidenceRecord& rec) {
    rec.validate();
    TomographySet s;
    s.tau_s = rec.tau_s;
    const auto& labels = tomography_labels();
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (!rec.has(labels[i])) {
        throw ValidationError("tomography set: missing projection (" + std::string(to_string(labels[i].idler)) +
                              ", " + std::string(to_string(labels[i].signal)) + ")");
      }
      s.counts[i] = static_cast<double>(rec.at(labels[i]));
    }
    return s;
  }
};

/// |v><v| for the product vector of the labels.
inline Matrix4c projector_matrix(const LabelPair& labels) {
  const TwoQubitState v = product_vector(labels);
  return v * v.adjoint();
}

struct DensityMatrix {
  Matrix4c rho = Matrix4c::Identity() / 4.0;
  std::string method;
  Eigen::Vector4d eigenvalues = Eigen::Vector4d::Constant(0.25);  // ascending
  double trace_residual = 0.0;
};

inline DensityMatrix make_density(const Matrix4c& rho, std::string method) {
  DensityMatrix d;
  d.rho = rho;
  d.method = std::move(method);
  const Matrix4c h = 0.5 * (rho + rho.adjoint());
  d.eigenvalues = Eigen::SelfAdjointEigenSolver<Matrix4c>(h, Eigen::EigenvaluesOnly).eigenvalues();
  d.trace_residual = std::abs(rho.trace() - 1.0);
  return d;
}

using ProbabilitySet = std::vector<std::pair<LabelPair, double>>;

/// How measured counts become probabilities.
enum class NormalizationAnchor {
  /// Every projection divided by the total of the four Z x Z counts.
  ZBasisTotal,
  /// Each measurement context divided by its own flux: the Z x Z total times a
  /// per-arm efficiency for the superposition bases. An arm's efficiency comes
  /// from the row sum of its superposition outcome against the other photon's Z
  /// outcomes, which covers half the context flux once the unrecorded minus
  /// outcome is taken as the complement.
  ContextRowSums,
};

inline std::string_view to_string(NormalizationAnchor a) {
  return a == NormalizationAnchor::ZBasisTotal ? "z-basis-total" : "context-row-sums";
}

inline ProbabilitySet normalize_counts(const TomographySet& set, NormalizationAnchor anchor) {
  using L = ProjectorLabel;
  for (double c : set.counts) {
    if (!(c >= 0.0)) throw ValidationError("tomography: negative count");
  }
  const double z_total = set.count({L::Zero, L::Zero}) + set.count({L::Zero, L::One}) +
                         set.count({L::One, L::Zero}) + set.count({L::One, L::One});
  if (!(z_total > 0.0)) throw ReconstructionError("tomography: Z x Z normalization group is empty");

  auto idler_eff = [&](L a) {
    if (anchor == NormalizationAnchor::ZBasisTotal || is_computational(a)) return 1.0;
    return 2.0 * (set.count({a, L::Zero}) + set.count({a, L::One})) / z_total;
  };
  auto signal_eff = [&](L b) {
    if (anchor == NormalizationAnchor::ZBasisTotal || is_computational(b)) return 1.0;
    return 2.0 * (set.count({L::Zero, b}) + set.count({L::One, b})) / z_total;
  };

  ProbabilitySet out;
  out.reserve(16);
  const auto& labels = tomography_labels();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const double flux = z_total * idler_eff(labels[i].idler) * signal_eff(labels[i].signal);
    if (!(flux > 0.0)) throw ReconstructionError("tomography: empty normalization group for a measurement context");
    out.emplace_back(labels[i], set.counts[i] / flux);
  }
  return out;
}

namespace detail {

inline Matrix2c pauli(int k) {
  Matrix2c s;
  switch (k) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, cplx(0, -1), cplx(0, 1), 0; break;
    default: s << 1, 0, 0, -1; break;
  }
  return s;
}

inline Matrix4c pauli_product(int a, int b) {
  const Matrix2c pa = pauli(a);
  const Matrix2c pb = pauli(b);
  Matrix4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = pa(i, j) * pb(k, l);
  return out;
}

}  // namespace detail

/// Least-squares solution of Tr(P_k rho) = p_k with rho expanded on the 16
/// Pauli products, which keeps the estimate Hermitian.
inline DensityMatrix linear_inversion(const ProbabilitySet& probabilities) {
  const auto rows = static_cast<Eigen::Index>(probabilities.size());
  if (rows < 16) throw ReconstructionError("linear inversion: fewer than 16 projections");
  Eigen::MatrixXd design(rows, 16);
  Eigen::VectorXd p(rows);
  std::array<Matrix4c, 16> basis;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) basis[static_cast<std::size_t>(4 * a + b)] = detail::pauli_product(a, b);

  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& [labels, prob] = probabilities[static_cast<std::size_t>(r)];
    if (prob < 0.0) throw ValidationError("linear inversion: negative probability");
    const TwoQubitState v = product_vector(labels);
    for (std::size_t c = 0; c < 16; ++c) {
      design(r, static_cast<Eigen::Index>(c)) = (v.adjoint() * basis[c] * v)(0, 0).real() / 4.0;
    }
    p(r) = prob;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < 16) throw ReconstructionError("linear inversion: projections are not informationally complete");
  const Eigen::VectorXd coeffs = qr.solve(p);

  Matrix4c rho = Matrix4c::Zero();
  for (std::size_t c = 0; c < 16; ++c) rho += coeffs(static_cast<Eigen::Index>(c)) * basis[c] / 4.0;
  return make_density(rho, "linear-inversion");
}

inline DensityMatrix linear_inversion(const TomographySet& set,
                                      NormalizationAnchor anchor = NormalizationAnchor::ContextRowSums) {
  return linear_inversion(normalize_counts(set, anchor));
}

/// Closest density matrix in 2-norm: clip negative eigenvalues to zero and spread
/// their deficit over the remaining ones, smallest first.
inline DensityMatrix project_to_physical(const Matrix4c& raw) {
  const Matrix4c h = 0.5 * (raw + raw.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(h);
  Eigen::Vector4d lam = es.eigenvalues();  // ascending
  const double trace = lam.sum();
  if (!(trace > 0.0)) throw ReconstructionError("physical projection: non-positive trace");

  if (lam.minCoeff() >= 0.0 && std::abs(trace - 1.0) < 1e-14) return make_density(h, "physical");

  lam /= trace;
  // Walk from the smallest eigenvalue upwards (descending order from the top).
  double deficit = 0.0;
  int i = 0;
  for (; i < 4; ++i) {
    const int remaining = 4 - i;
    if (lam(i) + deficit / remaining < 0.0) {
      deficit += lam(i);
      lam(i) = 0.0;
    } else {
      break;
    }
  }
  for (int j = i; j < 4; ++j) lam(j) += deficit / (4 - i);

  const Matrix4c v = es.eigenvectors();
  const Matrix4c rho = v * lam.cast<cplx>().asDiagonal() * v.adjoint();
  return make_density(0.5 * (rho + rho.adjoint()), "physical");
}

inline DensityMatrix project_to_physical(const DensityMatrix& raw) { return project_to_physical(raw.rho); }

/// <target|rho|target> for a normalized pure target.
inline double state_fidelity(const DensityMatrix& dm, const TwoQubitState& target) {
  return (target.adjoint() * dm.rho * target)(0, 0).real() / target.squaredNorm();
}

inline double trace_distance(const Matrix4c& a, const Matrix4c& b) {
  const Matrix4c d = 0.5 * ((a - b) + (a - b).adjoint());
  return 0.5 * Eigen::SelfAdjointEigenSolver<Matrix4c>(d, Eigen::EigenvaluesOnly).eigenvalues().cwiseAbs().sum();
}

/// Linear inversion followed by the physicality projection.
inline DensityMatrix reconstruct(const TomographySet& set,
                                 NormalizationAnchor anchor = NormalizationAnchor::ContextRowSums) {
  DensityMatrix d = project_to_physical(linear_inversion(set, anchor));
  d.method = "linear-inversion+physical/" + std::string(to_string(anchor));
  return d;
}

struct MonteCarloSummary {
  double mean = 0.0;
  double stddev = 0.0;
  int resamples = 0;
  int failures = 0;
};

/// Per-resample stream derived from the master seed (splitmix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Fidelity statistics over Poisson resamplings of every count.
inline MonteCarloSummary monte_carlo_errors(const TomographySet& set, int n_resamples, std::uint64_t seed,
                                            const TwoQubitState& target = phi_plus(),
                                            NormalizationAnchor anchor = NormalizationAnchor::ContextRowSums) {
  if (n_resamples < 100) throw ValidationError("monte carlo: need at least 100 resamples");
  std::vector<double> fidelities;
  fidelities.reserve(static_cast<std::size_t>(n_resamples));
  int failures = 0;
  for (int r = 0; r < n_resamples; ++r) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    TomographySet resampled = set;
    for (double& c : resampled.counts) {
      c = c > 0.0 ? static_cast<double>(std::poisson_distribution<std::int64_t>(c)(rng)) : 0.0;
    }
    try {
      fidelities.push_back(state_fidelity(reconstruct(resampled, anchor), target));
    } catch (const ReconstructionError&) {
      ++failures;
    }
  }
  if (failures > n_resamples / 20) {
    throw ReconstructionError("monte carlo: " + std::to_string(failures) + " of " + std::to_string(n_resamples) +
                              " resamples failed to reconstruct");
  }
  MonteCarloSummary s;
  s.resamples = n_resamples;
  s.failures = failures;
  const double n = static_cast<double>(fidelities.size());
  for (double f : fidelities) s.mean += f;
  s.mean /= n;
  double var = 0.0;
  for (double f : fidelities) var += (f - s.mean) * (f - s.mean);
  s.stddev = fidelities.size() > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;
  return s;
}

}  // namespace freqbin

#endif  // FREQBIN_TOMOGRAPHY_HPP
