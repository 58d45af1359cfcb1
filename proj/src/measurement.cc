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

#include "dualrail/measurement.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dualrail/linear_optics.h"

namespace dualrail {

std::vector<std::size_t> DetectionPattern::modes() const {
    std::vector<std::size_t> out;
    out.reserve(requirements.size());
    for (const auto &[mode, count] : requirements) {
        out.push_back(mode);
    }
    return out;
}

BranchResult project_detection(const FockState &s, const DetectionPattern &pattern) {
    std::vector<bool> measured(s.mode_count(), false);
    for (const auto &[mode, count] : pattern.requirements) {
        if (mode >= s.mode_count()) {
            throw std::invalid_argument("detector on mode " + std::to_string(mode) + " outside " +
                                        std::to_string(s.mode_count()) + " modes");
        }
        if (count < 0) {
            throw std::invalid_argument("negative required count");
        }
        measured[mode] = true;
    }

    BranchResult result;
    result.pattern = pattern;
    for (std::size_t m = 0; m < s.mode_count(); ++m) {
        if (!measured[m]) {
            result.mode_map.push_back(m);
        }
    }

    FockState kept(result.mode_map.size());
    for (const auto &[ket, amp] : s.terms()) {
        bool match = std::all_of(pattern.requirements.begin(), pattern.requirements.end(),
                                 [&](const auto &req) { return ket[req.first] == req.second; });
        if (!match) {
            continue;
        }
        Occupation rest;
        rest.reserve(result.mode_map.size());
        for (std::size_t m : result.mode_map) {
            rest.push_back(ket[m]);
        }
        kept.accumulate(rest, amp);
    }
    result.probability = norm_squared(kept);
    result.residual = kept.empty() ? std::move(kept) : kept.normalized();
    return result;
}

std::vector<BranchResult> outcome_distribution(const FockState &s, std::span<const std::size_t> detector_modes) {
    for (std::size_t i = 0; i < detector_modes.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (detector_modes[i] == detector_modes[j]) {
                throw std::invalid_argument("detector mode listed twice");
            }
        }
    }
    int max_photons = 0;
    for (const auto &[ket, amp] : s.terms()) {
        max_photons = std::max(max_photons, photon_count(ket));
    }

    std::vector<BranchResult> out;
    std::vector<int> counts(detector_modes.size(), 0);
    // Odometer over count vectors with total <= max_photons, lexicographic.
    auto emit = [&] {
        DetectionPattern p;
        for (std::size_t i = 0; i < detector_modes.size(); ++i) {
            p.requirements[detector_modes[i]] = counts[i];
        }
        out.push_back(project_detection(s, p));
    };
    auto recurse = [&](auto &&self, std::size_t i, int remaining) -> void {
        if (i == counts.size()) {
            emit();
            return;
        }
        for (int c = 0; c <= remaining; ++c) {
            counts[i] = c;
            self(self, i + 1, remaining - c);
        }
        counts[i] = 0;
    };
    recurse(recurse, 0, max_photons);
    return out;
}

} // namespace dualrail
