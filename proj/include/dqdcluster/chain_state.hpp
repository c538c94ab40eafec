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
 * Dense state vector of the molecule chain in the |0> = |S>, |1> = |T>
 * encoding, with the diagonal Ising evolution, the ideal linear cluster
 * state and its stabilizers.
 *
 * Bit order: qubit 0 (leftmost molecule) is the most significant bit of the
 * basis index. The state-independent Coulomb background only contributes a
 * global phase and is dropped.
 */

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dqdcluster/bond_phases.hpp"
#include "dqdcluster/errors.hpp"

namespace dqdcluster {

class ChainState {
  public:
    using Amplitude = std::complex<double>;

    static constexpr std::size_t kMaxQubits = 24;

    /// Takes ownership of `amplitudes`, which must have length 2^n_qubits.
    /// Normalization is not enforced here; see is_normalized().
    ChainState(std::size_t n_qubits, std::vector<Amplitude> amplitudes)
        : n_(check_capacity(n_qubits)), amps_(std::move(amplitudes)) {
        if (amps_.size() != dimension()) {
            throw DomainError("ChainState: expected " + std::to_string(dimension()) +
                              " amplitudes, got " + std::to_string(amps_.size()));
        }
    }

    /// Computational basis state |index>.
    static ChainState basis(std::size_t n_qubits, std::uint64_t index) {
        check_capacity(n_qubits);
        std::vector<Amplitude> amps(std::size_t{1} << n_qubits);
        if (index >= amps.size()) {
            throw RangeError("ChainState::basis: index out of range");
        }
        amps[index] = 1.0;
        return ChainState(n_qubits, std::move(amps));
    }

    std::size_t num_qubits() const { return n_; }
    std::size_t dimension() const { return std::size_t{1} << n_; }

    std::span<const Amplitude> amplitudes() const { return amps_; }
    std::span<Amplitude> amplitudes() { return amps_; }
    const Amplitude &operator[](std::size_t i) const { return amps_[i]; }

    /// Bit mask of qubit q inside a basis index.
    std::uint64_t qubit_mask(std::size_t q) const {
        if (q >= n_) {
            throw RangeError("qubit index " + std::to_string(q) + " out of range for " +
                             std::to_string(n_) + " qubits");
        }
        return std::uint64_t{1} << (n_ - 1 - q);
    }

    double norm_squared() const {
        double s = 0.0;
        for (const auto &a : amps_) {
            s += std::norm(a);
        }
        return s;
    }

    bool is_normalized(double tol = 1e-10) const { return std::fabs(norm_squared() - 1.0) <= tol; }

    static std::size_t check_capacity(std::size_t n_qubits) {
        if (n_qubits < 1 || n_qubits > kMaxQubits) {
            throw CapacityError("ChainState supports 1.." + std::to_string(kMaxQubits) +
                                " qubits, got " + std::to_string(n_qubits));
        }
        return n_qubits;
    }

  private:
    std::size_t n_;
    std::vector<Amplitude> amps_;
};

/// Every qubit in (|0> + |1>)/sqrt(2).
inline ChainState init_plus_chain(std::size_t n) {
    ChainState::check_capacity(n);
    const double amp = std::pow(2.0, -0.5 * static_cast<double>(n));
    return ChainState(n, std::vector<ChainState::Amplitude>(std::size_t{1} << n, amp));
}

/// Multiplies each amplitude by exp(i sum_b phi_b z_b z_{b+1}), the action of
/// exp(i sum_b phi_b P1_b P1_{b+1}) with P1 = (1 - sigma_z)/2 = |1><1|.
inline void apply_ising_phases_inplace(ChainState &state, const BondPhaseVector &bonds) {
    const std::size_t n = state.num_qubits();
    if (bonds.size() + 1 != n) {
        throw DomainError("apply_ising_phases: " + std::to_string(bonds.size()) +
                          " bond phases for " + std::to_string(n) + " qubits");
    }
    if (bonds.empty()) {
        return;
    }
    auto amps = state.amplitudes();
    for (std::uint64_t idx = 0; idx < amps.size(); ++idx) {
        // Bit p of `both` is set iff the qubits at bit positions p+1 and p are
        // both 1, i.e. bond b = n - 2 - p is excited.
        std::uint64_t both = idx & (idx >> 1);
        if (both == 0) {
            continue;
        }
        double phase = 0.0;
        while (both != 0) {
            const int p = std::countr_zero(both);
            phase += bonds[n - 2 - static_cast<std::size_t>(p)];
            both &= both - 1;
        }
        amps[idx] *= std::polar(1.0, phase);
    }
}

inline ChainState apply_ising_phases(ChainState state, const BondPhaseVector &bonds) {
    apply_ising_phases_inplace(state, bonds);
    return state;
}

/// Linear cluster state: amplitude 2^{-n/2} (-1)^{number of adjacent 11 pairs}.
/// The last qubit has no right neighbour.
inline ChainState ideal_cluster(std::size_t n) {
    ChainState::check_capacity(n);
    const double amp = std::pow(2.0, -0.5 * static_cast<double>(n));
    std::vector<ChainState::Amplitude> amps(std::size_t{1} << n);
    for (std::uint64_t idx = 0; idx < amps.size(); ++idx) {
        const bool odd = (std::popcount(idx & (idx >> 1)) & 1) != 0;
        amps[idx] = odd ? -amp : amp;
    }
    return ChainState(n, std::move(amps));
}

/// <X_site Z_{site-1} Z_{site+1}>, with missing neighbours omitted at the
/// chain ends. Z is the standard Pauli (Z|0> = |0>).
inline double stabilizer_expectation(const ChainState &state, std::size_t site) {
    const std::size_t n = state.num_qubits();
    const std::uint64_t flip = state.qubit_mask(site);
    std::uint64_t zmask = 0;
    if (site > 0) {
        zmask |= state.qubit_mask(site - 1);
    }
    if (site + 1 < n) {
        zmask |= state.qubit_mask(site + 1);
    }
    const auto amps = state.amplitudes();
    double acc = 0.0;
    for (std::uint64_t idx = 0; idx < amps.size(); ++idx) {
        const double sign = (std::popcount(idx & zmask) & 1) ? -1.0 : 1.0;
        acc += sign * (std::conj(amps[idx]) * amps[idx ^ flip]).real();
    }
    return acc;
}

/// Complex inner product <a|b>.
inline std::complex<double> inner_product(const ChainState &a, const ChainState &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw DomainError("inner_product: states have different qubit counts");
    }
    std::complex<double> acc = 0.0;
    const auto x = a.amplitudes();
    const auto y = b.amplitudes();
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += std::conj(x[i]) * y[i];
    }
    return acc;
}

/// |<a|b>|^2 for normalized states, clamped to [0, 1]; invariant under
/// global phases.
inline double state_fidelity(const ChainState &a, const ChainState &b) {
    return std::min(1.0, std::norm(inner_product(a, b)));
}

/// <plus| U(bonds_a)^dag U(bonds_b) |plus> for the n-qubit |+...+> chain,
/// contracted bond by bond in O(n) without forming the 2^n vector.
inline std::complex<double> evolved_plus_overlap(const BondPhaseVector &bonds_a,
                                                 const BondPhaseVector &bonds_b) {
    if (bonds_a.size() != bonds_b.size()) {
        throw DomainError("evolved_plus_overlap: bond vectors differ in length");
    }
    // carry[z] = partial sum over the prefix with the last qubit fixed to z,
    // already divided by 2 per contracted qubit.
    std::complex<double> carry0 = 0.5;
    std::complex<double> carry1 = 0.5;
    for (std::size_t b = 0; b < bonds_a.size(); ++b) {
        const std::complex<double> w = std::polar(1.0, bonds_b[b] - bonds_a[b]);
        const std::complex<double> next0 = 0.5 * (carry0 + carry1);
        const std::complex<double> next1 = 0.5 * (carry0 + w * carry1);
        carry0 = next0;
        carry1 = next1;
    }
    return carry0 + carry1;
}

/// CSV dump: header row, then one row per basis index with 17 significant
/// digits.
inline void write_state_csv(std::ostream &os, const ChainState &state) {
    os << "index_q0_msb,real,imag\n";
    char buf[96];
    const auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", i, amps[i].real(), amps[i].imag());
        os << buf;
    }
}

}  // namespace dqdcluster
