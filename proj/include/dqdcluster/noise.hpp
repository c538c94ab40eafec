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
 * Gaussian bond-phase noise and the cluster-state fidelity it leaves.
 *
 * Each bond receives pi + delta_b with delta_b ~ N(0, sigma^2) i.i.d.;
 * sigma is the standard deviation of delta. Two estimators of the mean
 * fidelity to the ideal cluster are provided: seeded Monte Carlo, and the
 * exact Gaussian average
 *
 *     E[F] = 4^{-n} sum_{z,z'} exp(-sigma^2 d(z,z') / 2),
 *
 * where d counts bonds with z_b z_{b+1} != z'_b z'_{b+1}, contracted with a
 * 4x4 transfer matrix over the pair (z_b, z'_b).
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dqdcluster/bond_phases.hpp"
#include "dqdcluster/chain_state.hpp"
#include "dqdcluster/errors.hpp"
#include "dqdcluster/rng.hpp"

namespace dqdcluster {

struct PhaseNoiseModel {
    double sigma_rad = 0.0;

    constexpr PhaseNoiseModel() = default;
    explicit PhaseNoiseModel(double sigma) : sigma_rad(sigma) {
        if (!std::isfinite(sigma) || sigma < 0.0) {
            throw DomainError("PhaseNoiseModel: sigma must be finite and >= 0");
        }
    }
};

struct FidelityEstimate {
    double mean = 0.0;
    double standard_error = 0.0;
    std::size_t n_trials = 0;
    std::uint64_t base_seed = 0;

    friend bool operator==(const FidelityEstimate &, const FidelityEstimate &) = default;
};

/// How each Monte Carlo trial evaluates the overlap with the ideal cluster.
enum class FidelityBackend {
    /// O(n) bond-by-bond contraction (evolved_plus_overlap).
    contraction,
    /// Full 2^n state vector; limited by ChainState::kMaxQubits.
    dense,
};

/// Bond phases pi + delta_b for one preparation, drawn from one stream
/// seeded with `seed`.
inline BondPhaseVector sample_bond_errors(const PhaseNoiseModel &model, std::size_t n_bonds,
                                          std::uint64_t seed) {
    if (n_bonds < 1) {
        throw DomainError("sample_bond_errors: need at least one bond");
    }
    RandomStream rng(seed);
    std::vector<double> phases(n_bonds);
    for (auto &p : phases) {
        p = std::numbers::pi + model.sigma_rad * rng.standard_normal();
    }
    return BondPhaseVector(std::move(phases));
}

namespace detail {

inline void check_fidelity_size(std::size_t n_qubits) {
    if (n_qubits < 2 || n_qubits > ChainState::kMaxQubits) {
        throw CapacityError("fidelity estimation supports 2.." +
                            std::to_string(ChainState::kMaxQubits) + " qubits, got " +
                            std::to_string(n_qubits));
    }
}

}  // namespace detail

/// Mean fidelity of noisy preparations to ideal_cluster(n_qubits). Trial t
/// uses bond errors drawn with derive_seed(seed, t); the reduction runs in
/// trial order (Welford), so results are bit-identical for equal inputs.
inline FidelityEstimate monte_carlo_fidelity(std::size_t n_qubits, const PhaseNoiseModel &model,
                                             std::size_t trials, std::uint64_t seed,
                                             FidelityBackend backend = FidelityBackend::contraction) {
    detail::check_fidelity_size(n_qubits);
    if (trials < 100) {
        throw DomainError("monte_carlo_fidelity: at least 100 trials required");
    }
    const std::size_t n_bonds = n_qubits - 1;
    const BondPhaseVector target = BondPhaseVector::uniform(n_bonds, std::numbers::pi);
    std::optional<ChainState> ideal;
    if (backend == FidelityBackend::dense) {
        ideal = ideal_cluster(n_qubits);
    }

    double mean = 0.0;
    double m2 = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        const BondPhaseVector bonds = sample_bond_errors(model, n_bonds, derive_seed(seed, t));
        double f;
        if (backend == FidelityBackend::dense) {
            ChainState noisy = init_plus_chain(n_qubits);
            apply_ising_phases_inplace(noisy, bonds);
            f = state_fidelity(*ideal, noisy);
        } else {
            f = std::min(1.0, std::norm(evolved_plus_overlap(target, bonds)));
        }
        const double delta = f - mean;
        mean += delta / static_cast<double>(t + 1);
        m2 += delta * (f - mean);
    }
    const double variance = trials > 1 ? m2 / static_cast<double>(trials - 1) : 0.0;
    return FidelityEstimate{mean, std::sqrt(std::max(variance, 0.0) / static_cast<double>(trials)),
                            trials, seed};
}

/// Exact Gaussian average of the fidelity, O(n).
inline double exact_mean_fidelity(std::size_t n_qubits, const PhaseNoiseModel &model) {
    detail::check_fidelity_size(n_qubits);
    const double mismatch = std::exp(-0.5 * model.sigma_rad * model.sigma_rad);
    // Pair index k = 2 z + z'; the bond term z_b z_{b+1} is 1 only if both
    // are 1, so a mismatch between the copies needs (z_b z_{b+1}) != (z'_b z'_{b+1}).
    std::array<std::array<double, 4>, 4> transfer{};
    for (int from = 0; from < 4; ++from) {
        for (int to = 0; to < 4; ++to) {
            const int bond = (from >> 1) & (to >> 1);
            const int bond_prime = from & to & 1;
            transfer[from][to] = bond == bond_prime ? 1.0 : mismatch;
        }
    }
    // Each contracted qubit contributes a factor 1/4.
    std::array<double, 4> v{0.25, 0.25, 0.25, 0.25};
    for (std::size_t b = 0; b + 1 < n_qubits; ++b) {
        std::array<double, 4> next{};
        for (int to = 0; to < 4; ++to) {
            for (int from = 0; from < 4; ++from) {
                next[to] += v[from] * transfer[from][to];
            }
            next[to] *= 0.25;
        }
        v = next;
    }
    return v[0] + v[1] + v[2] + v[3];
}

}  // namespace dqdcluster
