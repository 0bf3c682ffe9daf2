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

#ifndef FREQBIN_FREQUENCY_HPP
#define FREQBIN_FREQUENCY_HPP

#include <cmath>
#include <compare>
#include <cstdint>

namespace freqbin {

/// Optical or RF frequency stored as an integer number of hertz.
///
/// Integer storage keeps comb arithmetic exact: pump - n*FSR and pump + n*FSR
/// always sum to exactly twice the pump.
class Frequency {
 public:
  constexpr Frequency() = default;

  static constexpr Frequency from_hz(std::int64_t hz) { return Frequency(hz); }
  static Frequency from_ghz(double ghz) { return Frequency(std::llround(ghz * 1e9)); }
  static Frequency from_thz(double thz) { return Frequency(std::llround(thz * 1e12)); }

  constexpr std::int64_t hz() const { return hz_; }
  constexpr double ghz() const { return static_cast<double>(hz_) * 1e-9; }
  constexpr double thz() const { return static_cast<double>(hz_) * 1e-12; }

  constexpr Frequency operator+(Frequency o) const { return Frequency(hz_ + o.hz_); }
  constexpr Frequency operator-(Frequency o) const { return Frequency(hz_ - o.hz_); }
  constexpr Frequency operator*(std::int64_t k) const { return Frequency(hz_ * k); }
  friend constexpr Frequency operator*(std::int64_t k, Frequency f) { return f * k; }

  constexpr auto operator<=>(const Frequency&) const = default;

 private:
  constexpr explicit Frequency(std::int64_t hz) : hz_(hz) {}
  std::int64_t hz_ = 0;
};

/// Speed of light in vacuum, m/s.
inline constexpr double kSpeedOfLight = 299792458.0;

}  // namespace freqbin

#endif  // FREQBIN_FREQUENCY_HPP
