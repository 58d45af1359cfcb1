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
#include <random>

#include "dualrail/dual_rail.h"
#include "dualrail/fock_state.h"
#include "dualrail/linear_optics.h"

namespace dualrail {

/// Haar-distributed pure qubit.
LogicalAmplitudes random_qubit(std::mt19937_64 &rng);

/// Haar-distributed k x k unitary (QR of a complex Gaussian matrix).
ModeUnitary random_unitary(std::size_t dim, std::mt19937_64 &rng);

/// Normalized state on `modes` modes with up to `max_terms` distinct kets,
/// each holding at most `max_photons` photons in total.
FockState random_state(std::size_t modes, int max_photons, std::size_t max_terms, std::mt19937_64 &rng);

} // namespace dualrail
