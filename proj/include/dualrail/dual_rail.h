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
#include <span>
#include <string>
#include <vector>

#include "dualrail/fock_state.h"

namespace dualrail {

/// Weight outside the dual-rail subspace above which decode refuses.
inline constexpr double kLeakageTolerance = 1e-10;

/// One qubit carried by one photon over two modes: a photon in `rail1`
/// is logical |1>, a photon in `rail0` is logical |0>.
struct DualRailQubit {
    std::size_t rail1;
    std::size_t rail0;

    bool operator==(const DualRailQubit &) const = default;
};

struct LogicalAmplitudes {
    Amplitude a0;
    Amplitude a1;

    double norm_squared() const { return std::norm(a0) + std::norm(a1); }
    bool operator==(const LogicalAmplitudes &) const = default;
};

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

enum class Pauli { I, X, Y, Z };

/// (a0, a1) scaled to unit norm; throws std::invalid_argument if zero.
LogicalAmplitudes normalized(const LogicalAmplitudes &q);

std::string to_string(BellKind kind);
std::string to_string(Pauli p);

/// a0 |.. 0_{rail1} 1_{rail0} ..> + a1 |.. 1_{rail1} 0_{rail0} ..>,
/// every other mode empty. `q` must be normalized.
FockState encode(const LogicalAmplitudes &q, const DualRailQubit &placement, std::size_t total_modes);

/// n-qubit register. `amplitudes` has 2^n entries, qubit 0 is the most
/// significant bit of the basis index.
FockState encode_register(std::span<const Amplitude> amplitudes, std::span<const DualRailQubit> qubits,
                          std::size_t total_modes);

struct RegisterDecoding {
    /// 2^n logical amplitudes, not renormalized.
    std::vector<Amplitude> amplitudes;
    /// Norm squared of the terms that are not a valid register ket.
    double leakage = 0.0;
};

/// Reads logical amplitudes off a state in which every mode outside
/// `qubits` is empty and each pair holds exactly one photon. Terms that
/// violate this are counted as leakage, never dropped silently.
RegisterDecoding decode_register(const FockState &s, std::span<const DualRailQubit> qubits);

/// Single-qubit decode; throws LeakageError when leakage exceeds
/// kLeakageTolerance.
LogicalAmplitudes decode(const FockState &s, const DualRailQubit &placement);

/// Named two-qubit Bell state with logical qubit a first:
/// Phi+- = (|00> +- |11>)/sqrt2, Psi+- = (|10> +- |01>)/sqrt2.
FockState bell_state(BellKind kind, const DualRailQubit &pair_a, const DualRailQubit &pair_b,
                     std::size_t total_modes);

/// Pauli on one dual-rail qubit. X swaps the rails, Z negates the logical
/// |1> component, Y = [[0,-i],[i,0]]. Throws LeakageError if a term with
/// amplitude above kPruneTolerance does not hold exactly one photon on the pair.
FockState pauli_correction(const FockState &s, const DualRailQubit &placement, Pauli which);

} // namespace dualrail
