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

#include <string_view>

// Unit system used throughout: lengths in nm, energies in meV, times in ns,
// phases in radians.
namespace dqdcluster::constants {

/// e^2 / (4 pi eps0) = 1.43996 eV nm.
inline constexpr double kCoulombMeVNm = 1439.96;

/// Reduced Planck constant, 6.582119e-16 eV s.
inline constexpr double kHbarMeVNs = 6.582119e-4;

/// Static relative permittivity of GaAs.
inline constexpr double kGaAsRelativePermittivity = 12.9;

inline constexpr std::string_view kVersion = "0.1.0";

}  // namespace dqdcluster::constants
