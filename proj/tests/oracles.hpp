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

// Reference implementations used only by the tests. They share no code with the
// library: Bessel functions come from their power series, modulator matrices
// from a quadrature of the time-domain phase, products from explicit loops.

#ifndef FREQBIN_TESTS_ORACLES_HPP
#define FREQBIN_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Mat = std::vector<std::vector<cplx>>;

constexpr double kPi = 3.14159265358979323846;

inline double bessel_series(int k, double x) {
  const int a = k < 0 ? -k : k;
  double term = 1.0;
  for (int i = 1; i <= a; ++i) term *= (x / 2.0) / i;
  double sum = 0.0;
  for (int m = 0; m < 200; ++m) {
    sum += term;
    term *= -(x / 2.0) * (x / 2.0) / ((m + 1.0) * (m + 1.0 + a));
    if (std::abs(term) < 1e-300) break;
  }
  return (k < 0 && a % 2 == 1) ? -sum : sum;
}

/// (1/2pi) integral of exp(i mu cos(x + theta)) exp(-i k x) dx by the trapezoid
/// rule, exact to rounding for smooth periodic integrands.
inline cplx eom_fourier(int k, double mu, double theta, int points = 512) {
  cplx s = 0.0;
  for (int j = 0; j < points; ++j) {
    const double x = 2.0 * kPi * j / points;
    s += std::exp(cplx(0.0, mu * std::cos(x + theta) - k * x));
  }
  return s / static_cast<double>(points);
}

/// Dense modulator matrix on modes [lo, hi]: element (out, in) from eom_fourier(out - in).
inline Mat eom_matrix(double mu, double theta, int lo, int hi) {
  const int n = hi - lo + 1;
  Mat m(n, std::vector<cplx>(n));
  for (int o = 0; o < n; ++o)
    for (int i = 0; i < n; ++i) m[o][i] = eom_fourier(o - i, mu, theta);
  return m;
}

inline Mat multiply(const Mat& a, const Mat& b) {
  const std::size_t n = a.size();
  Mat c(n, std::vector<cplx>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

/// E2 * diag(mask) * E1 on the padded window [lo - margin, hi + margin].
inline Mat gate_product(double mu1, double th1, double mu2, double th2, const std::vector<cplx>& mask, int lo,
                        int hi, int margin) {
  const int plo = lo - margin;
  const int phi = hi + margin;
  Mat e1 = eom_matrix(mu1, th1, plo, phi);
  Mat e2 = eom_matrix(mu2, th2, plo, phi);
  for (std::size_t r = 0; r < e1.size(); ++r)
    for (auto& v : e1[r]) v *= mask[r];
  return multiply(e2, e1);
}

/// Group delay of a dispersive element, tau(df) = D lambda^2 / c * df, integrated
/// numerically: phi(df) = -2 pi * integral_0^df tau.
inline double dispersion_phase(double d_ps_nm, double lambda_nm, double df_hz) {
  const double c = 299792458.0;
  const double d = d_ps_nm * 1e-12 / 1e-9;
  const double lam = lambda_nm * 1e-9;
  const int steps = 1000;
  const double h = df_hz / steps;
  double s = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double w = (i == 0 || i == steps) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    s += w * d * lam * lam / c * (i * h);
  }
  return -2.0 * kPi * s * h / 3.0;
}

/// Single-photon basis vectors written out by hand.
inline std::vector<cplx> label_ket(char l) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (l) {
    case '0': return {1.0, 0.0};
    case '1': return {0.0, 1.0};
    case '+': return {r, r};
    case '-': return {r, -r};
    case 'i': return {r, cplx(0.0, r)};
    default: return {r, cplx(0.0, -r)};
  }
}

/// |(<a| x <b|) psi|^2 for a two-qubit state in |00>,|01>,|10>,|11> order.
inline double born(const std::vector<cplx>& psi, char a, char b) {
  const auto va = label_ket(a);
  const auto vb = label_ket(b);
  cplx amp = 0.0;
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) amp += std::conj(va[j]) * std::conj(vb[k]) * psi[2 * j + k];
  return std::norm(amp);
}

inline double entropy2(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -(p * std::log(p) + (1.0 - p) * std::log(1.0 - p)) / std::log(2.0);
}

/// Users supported by m links: floor((1 + sqrt(1 + 8m)) / 2).
inline int users_for_links(int m) {
  return static_cast<int>(std::floor((1.0 + std::sqrt(1.0 + 8.0 * m)) / 2.0 + 1e-12));
}

}  // namespace oracle

#endif  // FREQBIN_TESTS_ORACLES_HPP
