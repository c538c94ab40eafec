// Copyright 2026 The dqdcluster Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace dqdcluster {

/// Input outside the mathematical domain of an operation (non-finite values,
/// mismatched sizes, malformed axes).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// A time or index outside the valid range of the object it addresses.
class RangeError : public std::out_of_range {
  public:
    using std::out_of_range::out_of_range;
};

/// Qubit count outside what the dense representation supports.
class CapacityError : public std::length_error {
  public:
    using std::length_error::length_error;
};

/// Hold-time calibration cannot reach the requested phase.
class CalibrationError : public std::runtime_error {
  public:
    CalibrationError(const std::string &what, double ramp_phase_rad)
        : std::runtime_error(what), ramp_phase_rad_(ramp_phase_rad) {}

    /// Phase accumulated by the ramps alone (zero hold time).
    double ramp_phase_rad() const noexcept { return ramp_phase_rad_; }

  private:
    double ramp_phase_rad_;
};

/// Rejected configuration; raised before any computation runs.
class ValidationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace dqdcluster
