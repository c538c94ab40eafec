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

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "dqdcluster/errors.hpp"

namespace dqdcluster {

/// Accumulated conditional phase (radians) per nearest-neighbour bond.
/// Entry b couples qubits b and b+1.
class BondPhaseVector {
  public:
    BondPhaseVector() = default;

    explicit BondPhaseVector(std::vector<double> phases) : phases_(std::move(phases)) {
        for (double p : phases_) {
            if (!std::isfinite(p)) {
                throw DomainError("bond phases must be finite");
            }
        }
    }

    static BondPhaseVector uniform(std::size_t n_bonds, double phase) {
        return BondPhaseVector(std::vector<double>(n_bonds, phase));
    }

    std::size_t size() const { return phases_.size(); }
    bool empty() const { return phases_.empty(); }
    double operator[](std::size_t b) const { return phases_[b]; }
    std::span<const double> values() const { return phases_; }

    friend bool operator==(const BondPhaseVector &, const BondPhaseVector &) = default;

  private:
    std::vector<double> phases_;
};

}  // namespace dqdcluster
