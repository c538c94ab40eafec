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
 * Projective single-molecule readout and measurement-round scheduling.
 *
 * A measurement along a Bloch axis n is a rotation followed by charge
 * (Pauli-blockade) readout. Outcomes are reported on the S/T Bloch sphere
 * whose north pole is |T> = |1>:
 *
 *   +1  triplet branch, molecule stays in (1,1)
 *   -1  singlet branch, molecule moves to (0,2)
 *
 * so the measured observable is n_x X - n_y Y - n_z Z in the computational
 * basis. Neighbouring molecules are never read out in the same round, since
 * detuning both switches their coupling on.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dqdcluster/chain_state.hpp"
#include "dqdcluster/errors.hpp"
#include "dqdcluster/rng.hpp"

namespace dqdcluster {

/// Unit vector on the S/T Bloch sphere.
class BlochAxis {
  public:
    BlochAxis(double x, double y, double z) : x_(x), y_(y), z_(z) {
        const double norm = std::sqrt(x * x + y * y + z * z);
        if (!std::isfinite(norm) || std::fabs(norm - 1.0) > 1e-10) {
            throw DomainError("BlochAxis must be a unit vector");
        }
    }

    static BlochAxis x_axis() { return {1.0, 0.0, 0.0}; }
    static BlochAxis y_axis() { return {0.0, 1.0, 0.0}; }
    static BlochAxis z_axis() { return {0.0, 0.0, 1.0}; }

    double x() const { return x_; }
    double y() const { return y_; }
    double z() const { return z_; }

    friend bool operator==(const BlochAxis &, const BlochAxis &) = default;

  private:
    double x_, y_, z_;
};

struct MeasurementSpec {
    std::size_t qubit = 0;
    BlochAxis axis = BlochAxis::z_axis();
};

enum class ChargeConfiguration { one_one, zero_two };

/// Charge configuration the QPC sees for a given outcome.
inline ChargeConfiguration readout_charge(int outcome) {
    return outcome > 0 ? ChargeConfiguration::one_one : ChargeConfiguration::zero_two;
}

struct MeasurementRecord {
    MeasurementSpec spec;
    int outcome = 0;
    double probability = 0.0;
    std::size_t round = 0;
};

struct MeasurementResult {
    MeasurementRecord record;
    ChainState post_state;
};

namespace detail {

// Applies (I + sign * O)/2 to the measured qubit, O = n.(X, -Y, -Z):
//   O = [[-n_z, n_x + i n_y], [n_x - i n_y, n_z]]
// Returns the squared norm of the projected vector.
inline double project_qubit(std::span<ChainState::Amplitude> amps, std::uint64_t mask,
                            const BlochAxis &axis, int sign) {
    const std::complex<double> off01(axis.x(), axis.y());
    const std::complex<double> off10(axis.x(), -axis.y());
    const double s = static_cast<double>(sign);
    double weight = 0.0;
    for (std::uint64_t i0 = 0; i0 < amps.size(); ++i0) {
        if (i0 & mask) {
            continue;
        }
        const std::uint64_t i1 = i0 | mask;
        const auto a0 = amps[i0];
        const auto a1 = amps[i1];
        const auto b0 = 0.5 * (a0 + s * (-axis.z() * a0 + off01 * a1));
        const auto b1 = 0.5 * (a1 + s * (off10 * a0 + axis.z() * a1));
        amps[i0] = b0;
        amps[i1] = b1;
        weight += std::norm(b0) + std::norm(b1);
    }
    return weight;
}

inline void require_normalized(const ChainState &state) {
    if (!state.is_normalized()) {
        throw DomainError("measure: state is not normalized");
    }
}

}  // namespace detail

/// Born probability of `outcome` (+1 or -1).
inline double outcome_probability(const ChainState &state, const MeasurementSpec &spec,
                                  int outcome) {
    if (outcome != 1 && outcome != -1) {
        throw DomainError("outcome must be +1 or -1");
    }
    const std::uint64_t mask = state.qubit_mask(spec.qubit);
    std::vector<ChainState::Amplitude> scratch(state.amplitudes().begin(),
                                               state.amplitudes().end());
    return detail::project_qubit(scratch, mask, spec.axis, outcome);
}

/// Measures in place using `uniform` in (0, 1) to pick the outcome: +1 when
/// uniform < P(+1).
inline MeasurementRecord measure_inplace(ChainState &state, const MeasurementSpec &spec,
                                         double uniform) {
    detail::require_normalized(state);
    const std::uint64_t mask = state.qubit_mask(spec.qubit);
    const double p_plus = std::clamp(outcome_probability(state, spec, +1), 0.0, 1.0);
    const int outcome = uniform < p_plus ? +1 : -1;
    const double weight = detail::project_qubit(state.amplitudes(), mask, spec.axis, outcome);
    const double scale = 1.0 / std::sqrt(weight);
    for (auto &a : state.amplitudes()) {
        a *= scale;
    }
    return MeasurementRecord{spec, outcome, outcome > 0 ? p_plus : 1.0 - p_plus, 0};
}

/// Samples one outcome with a stream seeded by `seed`; the input is untouched.
inline MeasurementResult measure(const ChainState &state, const MeasurementSpec &spec,
                                 std::uint64_t seed) {
    ChainState post = state;
    RandomStream rng(seed);
    MeasurementRecord rec = measure_inplace(post, spec, rng.uniform());
    return MeasurementResult{rec, std::move(post)};
}

/// Ordered measurement rounds; no round holds two adjacent qubits.
struct RoundSchedule {
    std::vector<std::vector<std::size_t>> rounds;

    std::size_t total_measurements() const {
        std::size_t k = 0;
        for (const auto &r : rounds) {
            k += r.size();
        }
        return k;
    }

    /// Checks nearest-neighbour exclusion, uniqueness and (if n_qubits > 0)
    /// index bounds.
    void validate(std::size_t n_qubits = 0) const {
        std::set<std::size_t> seen;
        for (const auto &round : rounds) {
            std::set<std::size_t> in_round(round.begin(), round.end());
            for (std::size_t q : round) {
                if (n_qubits > 0 && q >= n_qubits) {
                    throw RangeError("schedule: qubit " + std::to_string(q) + " out of range");
                }
                if (!seen.insert(q).second) {
                    throw DomainError("schedule: qubit " + std::to_string(q) +
                                      " measured more than once");
                }
                if (in_round.count(q + 1)) {
                    throw DomainError("schedule: adjacent qubits " + std::to_string(q) + " and " +
                                      std::to_string(q + 1) + " share a round");
                }
            }
        }
    }
};

/// Minimal rounds for a path: one round if no requested pair is adjacent,
/// otherwise even indices then odd indices. Indices come out ascending.
inline RoundSchedule schedule_rounds(std::span<const std::size_t> requested) {
    std::vector<std::size_t> sorted(requested.begin(), requested.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw DomainError("schedule_rounds: duplicate qubit index");
    }
    RoundSchedule out;
    if (sorted.empty()) {
        return out;
    }
    bool conflict = false;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        conflict = conflict || sorted[i] == sorted[i - 1] + 1;
    }
    if (!conflict) {
        out.rounds.push_back(std::move(sorted));
        return out;
    }
    std::vector<std::size_t> even, odd;
    for (std::size_t q : sorted) {
        (q % 2 == 0 ? even : odd).push_back(q);
    }
    out.rounds.push_back(std::move(even));
    out.rounds.push_back(std::move(odd));
    return out;
}

/// Executes `schedule` on `state` in place: rounds in order, ascending qubit
/// index within a round. The k-th measurement overall draws from
/// derive_seed(seed, k).
inline std::vector<MeasurementRecord> run_schedule(ChainState &state,
                                                   const RoundSchedule &schedule,
                                                   const std::map<std::size_t, BlochAxis> &bases,
                                                   std::uint64_t seed) {
    schedule.validate(state.num_qubits());
    std::vector<MeasurementRecord> records;
    records.reserve(schedule.total_measurements());
    std::uint64_t k = 0;
    for (std::size_t r = 0; r < schedule.rounds.size(); ++r) {
        std::vector<std::size_t> round = schedule.rounds[r];
        std::sort(round.begin(), round.end());
        for (std::size_t q : round) {
            const auto it = bases.find(q);
            if (it == bases.end()) {
                throw DomainError("run_schedule: no basis given for qubit " + std::to_string(q));
            }
            RandomStream rng(derive_seed(seed, k++));
            MeasurementRecord rec = measure_inplace(state, MeasurementSpec{q, it->second},
                                                    rng.uniform());
            rec.round = r;
            records.push_back(rec);
        }
    }
    return records;
}

}  // namespace dqdcluster
