// Copyright 2026 The dualrail Authors
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

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dualrail/dual_rail.h"
#include "dualrail/fock_state.h"

namespace dualrail {

/// Required photon count per measured mode.
struct DetectionPattern {
    std::map<std::size_t, int> requirements;

    std::vector<std::size_t> modes() const;
    bool operator==(const DetectionPattern &) const = default;
    auto operator<=>(const DetectionPattern &) const = default;
};

/// One post-selection outcome. Measured modes are removed from `residual`;
/// `mode_map[i]` is the original index of residual mode i.
struct BranchResult {
    DetectionPattern pattern;
    double probability = 0.0;
    /// Normalized, or the zero vector when probability is zero.
    FockState residual;
    std::vector<std::size_t> mode_map;
    std::optional<Pauli> correction;
};

/// Keeps the terms matching `pattern`, drops the measured modes and
/// renormalizes. Throws std::invalid_argument for an out-of-range mode or
/// a negative count.
BranchResult project_detection(const FockState &s, const DetectionPattern &pattern);

/// Every count pattern on `detector_modes` whose total does not exceed the
/// largest photon number present in `s`, in lexicographic count order.
/// Patterns that cannot occur are listed with probability 0.
std::vector<BranchResult> outcome_distribution(const FockState &s, std::span<const std::size_t> detector_modes);

} // namespace dualrail
