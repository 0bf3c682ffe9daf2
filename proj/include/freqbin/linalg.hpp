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

#ifndef FREQBIN_LINALG_HPP
#define FREQBIN_LINALG_HPP

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace freqbin {

using cplx = std::complex<double>;

using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using MatrixXc = Eigen::MatrixXcd;
using Vector2c = Eigen::Vector2cd;

/// Two-qubit pure state in the (idler, signal) product basis: index = 2*idler + signal.
using TwoQubitState = Eigen::Vector4cd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

inline Matrix2c hadamard_matrix() {
  Matrix2c h;
  h << 1.0, 1.0, 1.0, -1.0;
  return h / std::sqrt(2.0);
}

inline Matrix2c identity2() { return Matrix2c::Identity(); }

/// (|00> + |11>)/sqrt(2).
inline TwoQubitState phi_plus() {
  TwoQubitState s = TwoQubitState::Zero();
  s(0) = s(3) = 1.0 / std::sqrt(2.0);
  return s;
}

}  // namespace freqbin

#endif  // FREQBIN_LINALG_HPP
