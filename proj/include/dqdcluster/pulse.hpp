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
 * Trapezoidal detuning pulses and the conditional phase they imprint on each
 * bond of the chain.
 *
 * The sweep is assumed adiabatic: the molecule follows the instantaneous
 * mixing angle and the bond coupling at time t is E_cc(theta(eps(t))).
 */

#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dqdcluster/bond_phases.hpp"
#include "dqdcluster/constants.hpp"
#include "dqdcluster/errors.hpp"
#include "dqdcluster/physics.hpp"

namespace dqdcluster {

/// Accumulated phase phi / hbar, radians.
struct PhaseRadians {
    double value = 0.0;

    constexpr PhaseRadians() = default;
    constexpr explicit PhaseRadians(double v) : value(v) {}
};

/// Piecewise-linear detuning: eps_low -> eps_high over ramp_up_ns, held for
/// hold_ns, back to eps_low over ramp_down_ns.
struct DetuningPulse {
    double ramp_up_ns = 1.0;
    double hold_ns = 0.0;
    double ramp_down_ns = 1.0;
    double eps_low_meV = -2.5;
    double eps_high_meV = 2.5;

    /// Symmetric trapezoid between -E_c/2 and +E_c/2.
    static DetuningPulse trapezoid(const DeviceParams &dev, double ramp_ns, double hold_ns) {
        return DetuningPulse{ramp_ns, hold_ns, ramp_ns, -dev.charging_energy_meV / 2.0,
                             dev.charging_energy_meV / 2.0};
    }

    double duration_ns() const { return ramp_up_ns + hold_ns + ramp_down_ns; }

    /// The same pulse played backwards in time.
    DetuningPulse reversed() const {
        DetuningPulse r = *this;
        std::swap(r.ramp_up_ns, r.ramp_down_ns);
        return r;
    }

    void validate() const {
        auto nonneg = [](double x) { return std::isfinite(x) && x >= 0.0; };
        if (!nonneg(ramp_up_ns) || !nonneg(hold_ns) || !nonneg(ramp_down_ns)) {
            throw ValidationError("pulse durations must be finite and >= 0");
        }
        if (!std::isfinite(eps_low_meV) || !std::isfinite(eps_high_meV) ||
            !(eps_low_meV < eps_high_meV)) {
            throw ValidationError("pulse requires finite eps_low < eps_high");
        }
    }
};

/// Detuning at time t. With a zero-length up-ramp the jump happens at t = 0.
inline EnergyMeV detuning_at(const DetuningPulse &pulse, double t_ns) {
    if (!(t_ns >= 0.0 && t_ns <= pulse.duration_ns())) {
        throw RangeError("detuning_at: t = " + std::to_string(t_ns) + " ns outside the pulse");
    }
    const double span = pulse.eps_high_meV - pulse.eps_low_meV;
    if (t_ns < pulse.ramp_up_ns) {
        return EnergyMeV(pulse.eps_low_meV + span * (t_ns / pulse.ramp_up_ns));
    }
    const double after_hold = t_ns - pulse.ramp_up_ns - pulse.hold_ns;
    if (after_hold <= 0.0) {
        return EnergyMeV(pulse.eps_high_meV);
    }
    if (after_hold >= pulse.ramp_down_ns) {
        return EnergyMeV(pulse.eps_low_meV);
    }
    return EnergyMeV(pulse.eps_high_meV - span * (after_hold / pulse.ramp_down_ns));
}

namespace detail {

inline constexpr double kQuadratureRelTol = 1e-12;
inline constexpr unsigned kQuadratureMaxDepth = 15;

// Integral of E_cc over a linear ramp from eps_from to eps_to lasting
// duration_ns, in meV ns. The integrand switches within |eps| ~ T_c, so the
// ramp is cut at eps = 0 and at +-8 T_c, +-64 T_c before adaptive
// Gauss-Kronrod runs on each piece.
inline double ramp_energy_time(const DeviceParams &dev, double eps_from, double eps_to,
                               double duration_ns) {
    if (duration_ns == 0.0) {
        return 0.0;
    }
    const double rate = (eps_to - eps_from) / duration_ns;
    auto integrand = [&](double t) {
        return ecc_at_detuning(dev, EnergyMeV(eps_from + rate * t)).value;
    };
    const double tc = dev.tunnel_coupling_meV;
    const double lo = std::min(eps_from, eps_to);
    const double hi = std::max(eps_from, eps_to);
    std::vector<double> cuts{0.0, duration_ns};
    for (double eps : {-64.0 * tc, -8.0 * tc, 0.0, 8.0 * tc, 64.0 * tc}) {
        if (eps > lo && eps < hi) {
            cuts.push_back((eps - eps_from) / rate);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i + 1] > cuts[i]) {
            total += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
                integrand, cuts[i], cuts[i + 1], kQuadratureMaxDepth, kQuadratureRelTol);
        }
    }
    return total;
}

}  // namespace detail

/// Conditional phase (1/hbar) * integral of E_cc(t) dt accumulated over the
/// whole pulse.
inline PhaseRadians phase_integral(const DetuningPulse &pulse, const DeviceParams &dev) {
    pulse.validate();
    const double up =
        detail::ramp_energy_time(dev, pulse.eps_low_meV, pulse.eps_high_meV, pulse.ramp_up_ns);
    const double plateau =
        ecc_at_detuning(dev, EnergyMeV(pulse.eps_high_meV)).value * pulse.hold_ns;
    const double down =
        detail::ramp_energy_time(dev, pulse.eps_high_meV, pulse.eps_low_meV, pulse.ramp_down_ns);
    return PhaseRadians((up + plateau + down) / constants::kHbarMeVNs);
}

/// Hold time that makes `shape` (its ramps and detuning levels; the hold is
/// ignored) accumulate exactly `target`.
///
/// Throws CalibrationError when the ramps alone already exceed the target.
inline double solve_hold_time(const DetuningPulse &shape, const DeviceParams &dev,
                              PhaseRadians target = PhaseRadians(std::numbers::pi)) {
    if (!std::isfinite(target.value) || !(target.value > 0.0)) {
        throw DomainError("solve_hold_time: target phase must be finite and > 0");
    }
    DetuningPulse pulse = shape;
    pulse.hold_ns = 0.0;
    pulse.validate();

    const double ramp_phase = phase_integral(pulse, dev).value;
    if (ramp_phase > target.value) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "target phase " << target.value << " rad is below the ramp-only phase "
            << ramp_phase << " rad; no hold time >= 0 reaches it";
        throw CalibrationError(msg.str(), ramp_phase);
    }
    if (ramp_phase == target.value) {
        return 0.0;
    }

    // The ramps do not depend on the hold, so only the plateau term is
    // re-evaluated inside the solve.
    const double plateau_rate =
        ecc_at_detuning(dev, EnergyMeV(pulse.eps_high_meV)).value / constants::kHbarMeVNs;
    auto residual = [&](double hold) { return ramp_phase + plateau_rate * hold - target.value; };

    // phi grows linearly in the hold time, so doubling brackets the root.
    double hi = 1.0;
    double f_hi = residual(hi);
    while (f_hi < 0.0) {
        hi *= 2.0;
        if (hi > 1e12) {
            throw CalibrationError("solve_hold_time: no bracket below 1e12 ns", ramp_phase);
        }
        f_hi = residual(hi);
    }
    const double f_lo = ramp_phase - target.value;
    if (f_hi == 0.0) {
        return hi;
    }
    std::uintmax_t max_iter = 200;
    const auto [lo_root, hi_root] = boost::math::tools::toms748_solve(
        residual, 0.0, hi, f_lo, f_hi, boost::math::tools::eps_tolerance<double>(50), max_iter);
    return 0.5 * (lo_root + hi_root);
}

/// Symmetric trapezoid between -E_c/2 and +E_c/2 with ramps of `ramp_ns`.
inline double solve_hold_time(double ramp_ns, const DeviceParams &dev,
                              PhaseRadians target = PhaseRadians(std::numbers::pi)) {
    return solve_hold_time(DetuningPulse::trapezoid(dev, ramp_ns, 0.0), dev, target);
}

/// The collective pulse drives every bond identically.
inline BondPhaseVector bond_phase_vector(const DetuningPulse &pulse, const DeviceParams &dev,
                                         std::size_t n_qubits) {
    if (n_qubits < 2) {
        throw DomainError("bond_phase_vector: need at least two qubits");
    }
    return BondPhaseVector::uniform(n_qubits - 1, phase_integral(pulse, dev).value);
}

/// Soft checks of the rapid-adiabatic-passage assumption. Returns one
/// message per violated condition; empty when the sweep is acceptable.
inline std::vector<std::string> adiabaticity_warnings(const DetuningPulse &pulse,
                                                      const DeviceParams &dev,
                                                      double coherence_budget_ns) {
    std::vector<std::string> out;
    const double slowest = 10.0 * constants::kHbarMeVNs / dev.tunnel_coupling_meV;
    for (double ramp : {pulse.ramp_up_ns, pulse.ramp_down_ns}) {
        if (ramp < slowest) {
            out.push_back("ramp of " + std::to_string(ramp) +
                          " ns is shorter than 10 hbar/T_c = " + std::to_string(slowest) +
                          " ns; the sweep may not be adiabatic");
            break;
        }
    }
    for (double ramp : {pulse.ramp_up_ns, pulse.ramp_down_ns}) {
        if (ramp > coherence_budget_ns) {
            out.push_back("ramp of " + std::to_string(ramp) +
                          " ns exceeds the coherence budget of " +
                          std::to_string(coherence_budget_ns) + " ns");
            break;
        }
    }
    return out;
}

}  // namespace dqdcluster
