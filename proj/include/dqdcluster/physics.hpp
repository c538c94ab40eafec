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

/**
 * @file
 * Closed-form device physics of a chain of double-dot (singlet/triplet)
 * molecules: the adiabatic mixing angle, the inter-molecule Coulomb energies
 * and the differential cross-capacitance energy that acts as the Ising
 * coupling.
 *
 * The two-molecule interaction Hamiltonians are diagonal in the
 * |TT>, |TS'>, |S'T>, |S'S'> basis and are represented here only by the two
 * distinct scalars they contain (coulomb_background and
 * coulomb_both_shifted); the Ising part depends on their difference only.
 */

#pragma once

#include <cmath>
#include <compare>
#include <numbers>
#include <string>

#include "dqdcluster/constants.hpp"
#include "dqdcluster/errors.hpp"

namespace dqdcluster {

/// An energy in meV.
struct EnergyMeV {
    double value = 0.0;

    constexpr EnergyMeV() = default;
    constexpr explicit EnergyMeV(double v) : value(v) {}

    friend constexpr auto operator<=>(const EnergyMeV &, const EnergyMeV &) = default;
};

/// Geometry and energy scales of the molecule chain.
///
/// Molecules sit on a line, `intermolecule_spacing_nm` apart; the two dots
/// of one molecule are `intradot_spacing_nm` apart, perpendicular to the
/// chain.
struct DeviceParams {
    double dot_radius_nm = 100.0;
    double intradot_spacing_nm = 200.0;
    double intermolecule_spacing_nm = 2000.0;
    double relative_permittivity = constants::kGaAsRelativePermittivity;
    double tunnel_coupling_meV = 0.01;
    double charging_energy_meV = 5.0;

    /// Throws ValidationError naming the first violated constraint.
    void validate() const {
        auto require = [](bool ok, const char *msg) {
            if (!ok) {
                throw ValidationError(msg);
            }
        };
        auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
        require(positive(dot_radius_nm), "dot_radius_nm must be finite and > 0");
        require(positive(intradot_spacing_nm), "intradot_spacing_nm must be finite and > 0");
        require(positive(intermolecule_spacing_nm),
                "intermolecule_spacing_nm must be finite and > 0");
        require(intermolecule_spacing_nm > intradot_spacing_nm,
                "intermolecule_spacing_nm must exceed intradot_spacing_nm");
        require(positive(relative_permittivity), "relative_permittivity must be finite and > 0");
        require(positive(tunnel_coupling_meV), "tc_mev must be finite and > 0");
        require(positive(charging_energy_meV), "ec_mev must be finite and > 0");
    }

    /// Coulomb prefactor e^2 / (4 pi eps0 eps_r) in meV nm.
    double coulomb_prefactor() const { return constants::kCoulombMeVNm / relative_permittivity; }
};

/// Magnitude of the singlet / (0,2)-singlet mixing angle, in [0, pi/2].
class AdiabaticAngle {
  public:
    constexpr AdiabaticAngle() = default;

    explicit AdiabaticAngle(double theta_rad) : theta_(theta_rad) {
        if (!(theta_rad >= 0.0 && theta_rad <= std::numbers::pi / 2)) {
            throw DomainError("adiabatic angle must lie in [0, pi/2]");
        }
    }

    double radians() const { return theta_; }

  private:
    double theta_ = 0.0;
};

/// Mixing angle for detuning `epsilon` and tunnel coupling `tc_meV`.
///
/// The raw arctan form is negative for all epsilon (tiny for epsilon << -T_c,
/// near -pi/2 for epsilon >> T_c); its magnitude is returned. For epsilon > 0
/// the denominator epsilon - sqrt(4 T_c^2 + epsilon^2) is rewritten as
/// -4 T_c^2 / (epsilon + sqrt(...)) to avoid cancellation.
inline AdiabaticAngle adiabatic_angle(EnergyMeV epsilon, double tc_meV) {
    const double eps = epsilon.value;
    if (!std::isfinite(eps) || !std::isfinite(tc_meV)) {
        throw DomainError("adiabatic_angle: non-finite input");
    }
    if (!(tc_meV > 0.0)) {
        throw DomainError("adiabatic_angle: tunnel coupling must be > 0");
    }
    const double root = std::hypot(2.0 * tc_meV, eps);
    double raw;
    if (eps <= 0.0) {
        raw = std::atan(2.0 * tc_meV / (eps - root));
    } else {
        raw = std::atan(-(eps + root) / (2.0 * tc_meV));
    }
    return AdiabaticAngle(std::fabs(raw));
}

/// |sin theta|^2: the (0,2)-singlet weight of the adiabatic state.
inline double singlet_admixture(AdiabaticAngle theta) {
    const double s = std::sin(theta.radians());
    return s * s;
}

namespace detail {

// 2/b - 2/sqrt(a^2 + b^2), written without the cancellation between the terms.
inline double dipole_bracket(double a, double b) {
    const double d = std::hypot(a, b);
    return 2.0 * a * a / (b * d * (d + b));
}

}  // namespace detail

/// H_int0 = H_TT = H_TS' = H_S'T: the state-independent Coulomb energy
/// between neighbouring molecules.
inline EnergyMeV coulomb_background(const DeviceParams &dev) {
    const double a = dev.intradot_spacing_nm;
    const double b = dev.intermolecule_spacing_nm;
    return EnergyMeV(dev.coulomb_prefactor() * (2.0 / b + 2.0 / std::hypot(a, b)));
}

/// H_S'S': Coulomb energy when both neighbours sit in the (0,2) configuration.
inline EnergyMeV coulomb_both_shifted(const DeviceParams &dev) {
    return EnergyMeV(dev.coulomb_prefactor() * 4.0 / dev.intermolecule_spacing_nm);
}

/// Differential cross-capacitance energy E_cc = sin^2(theta) (H_S'S' - H_int0).
inline EnergyMeV ecc(const DeviceParams &dev, AdiabaticAngle theta) {
    return EnergyMeV(singlet_admixture(theta) * dev.coulomb_prefactor() *
                     detail::dipole_bracket(dev.intradot_spacing_nm, dev.intermolecule_spacing_nm));
}

/// E_cc at a given detuning.
inline EnergyMeV ecc_at_detuning(const DeviceParams &dev, EnergyMeV epsilon) {
    return ecc(dev, adiabatic_angle(epsilon, dev.tunnel_coupling_meV));
}

/// Change of the next-nearest-neighbour interaction relative to E_cc when the
/// detuning is swept: the dipole bracket at separation 2b over the one at b.
/// Returns 0 for a == 0, where both brackets vanish.
inline double nnn_crosstalk_ratio(const DeviceParams &dev) {
    const double a = dev.intradot_spacing_nm;
    const double b = dev.intermolecule_spacing_nm;
    const double near = detail::dipole_bracket(a, b);
    if (near == 0.0) {
        return 0.0;
    }
    return detail::dipole_bracket(a, 2.0 * b) / near;
}

}  // namespace dqdcluster
