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

#ifndef FREQBIN_ERRORS_HPP
#define FREQBIN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace freqbin {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mode index or label lies outside the represented range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Input data violates a documented invariant (negative counts, non-normalized state, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A configuration document is malformed or carries unknown keys.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The biphoton spectrum carries no weight.
class DegenerateStateError : public Error {
 public:
  using Error::Error;
};

/// A mode window is too narrow to hold the sidebands of a modulator.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// Parallel qubit blocks overlap or violate the guard-mode spacing.
class LayoutError : public Error {
 public:
  using Error::Error;
};

/// A figure of merit has a vanishing denominator (fidelity of W = 0, QBER with no counts).
class UndefinedQuantityError : public Error {
 public:
  using Error::Error;
};

/// Density-matrix reconstruction failed (singular design, too many Monte-Carlo failures).
class ReconstructionError : public Error {
 public:
  using Error::Error;
};

/// QBER at or above 1/2: no key can be distilled.
class NoKeyError : public Error {
 public:
  using Error::Error;
};

/// Not enough usable frequency pairs for the requested network.
class CapacityError : public Error {
 public:
  using Error::Error;
};

}  // namespace freqbin

#endif  // FREQBIN_ERRORS_HPP
