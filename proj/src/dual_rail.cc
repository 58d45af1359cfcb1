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

#include "dualrail/dual_rail.h"

#include <cmath>
#include <stdexcept>

namespace dualrail {

namespace {

void check_placements(std::span<const DualRailQubit> qubits, std::size_t total_modes) {
    std::vector<bool> used(total_modes, false);
    for (const auto &q : qubits) {
        for (std::size_t m : {q.rail1, q.rail0}) {
            if (m >= total_modes) {
                throw std::invalid_argument("rail " + std::to_string(m) + " outside " +
                                            std::to_string(total_modes) + " modes");
            }
            if (used[m]) {
                throw std::invalid_argument("mode " + std::to_string(m) + " used by two rails");
            }
            used[m] = true;
        }
    }
}

} // namespace

LogicalAmplitudes normalized(const LogicalAmplitudes &q) {
    double n = std::sqrt(q.norm_squared());
    if (n == 0.0) {
        throw std::invalid_argument("logical amplitudes are zero");
    }
    return {q.a0 / n, q.a1 / n};
}

std::string to_string(BellKind kind) {
    switch (kind) {
    case BellKind::PhiPlus:
        return "phi+";
    case BellKind::PhiMinus:
        return "phi-";
    case BellKind::PsiPlus:
        return "psi+";
    case BellKind::PsiMinus:
        return "psi-";
    }
    return "?";
}

std::string to_string(Pauli p) {
    switch (p) {
    case Pauli::I:
        return "I";
    case Pauli::X:
        return "X";
    case Pauli::Y:
        return "Y";
    case Pauli::Z:
        return "Z";
    }
    return "?";
}

FockState encode(const LogicalAmplitudes &q, const DualRailQubit &placement, std::size_t total_modes) {
    if (std::abs(q.norm_squared() - 1.0) > kLeakageTolerance) {
        throw std::invalid_argument("logical amplitudes are not normalized");
    }
    const Amplitude amps[2] = {q.a0, q.a1};
    return encode_register(amps, std::span<const DualRailQubit>(&placement, 1), total_modes);
}

FockState encode_register(std::span<const Amplitude> amplitudes, std::span<const DualRailQubit> qubits,
                          std::size_t total_modes) {
    check_placements(qubits, total_modes);
    const std::size_t n = qubits.size();
    if (amplitudes.size() != (std::size_t{1} << n)) {
        throw std::invalid_argument("register of " + std::to_string(n) + " qubits needs " +
                                    std::to_string(std::size_t{1} << n) + " amplitudes");
    }
    std::vector<Term> terms;
    for (std::size_t index = 0; index < amplitudes.size(); ++index) {
        Occupation ket(total_modes, 0);
        for (std::size_t q = 0; q < n; ++q) {
            bool one = (index >> (n - 1 - q)) & 1U;
            ket[one ? qubits[q].rail1 : qubits[q].rail0] = 1;
        }
        terms.emplace_back(std::move(ket), amplitudes[index]);
    }
    return FockState::from_terms(total_modes, terms);
}

RegisterDecoding decode_register(const FockState &s, std::span<const DualRailQubit> qubits) {
    check_placements(qubits, s.mode_count());
    const std::size_t n = qubits.size();
    std::vector<bool> on_rail(s.mode_count(), false);
    for (const auto &q : qubits) {
        on_rail[q.rail1] = on_rail[q.rail0] = true;
    }
    RegisterDecoding out;
    out.amplitudes.assign(std::size_t{1} << n, Amplitude{});
    for (const auto &[ket, amp] : s.terms()) {
        bool valid = true;
        for (std::size_t m = 0; m < ket.size() && valid; ++m) {
            valid = on_rail[m] || ket[m] == 0;
        }
        std::size_t index = 0;
        for (std::size_t q = 0; q < n && valid; ++q) {
            int r1 = ket[qubits[q].rail1];
            int r0 = ket[qubits[q].rail0];
            if (r1 + r0 != 1) {
                valid = false;
            }
            index = (index << 1) | static_cast<std::size_t>(r1);
        }
        if (valid) {
            out.amplitudes[index] += amp;
        } else {
            out.leakage += std::norm(amp);
        }
    }
    return out;
}

LogicalAmplitudes decode(const FockState &s, const DualRailQubit &placement) {
    RegisterDecoding d = decode_register(s, std::span<const DualRailQubit>(&placement, 1));
    if (d.leakage > kLeakageTolerance) {
        throw LeakageError("state has weight " + format_real(d.leakage) + " outside the dual-rail subspace",
                           d.leakage);
    }
    return {d.amplitudes[0], d.amplitudes[1]};
}

FockState bell_state(BellKind kind, const DualRailQubit &pair_a, const DualRailQubit &pair_b,
                     std::size_t total_modes) {
    const double h = 1.0 / std::sqrt(2.0);
    // basis order |00>, |01>, |10>, |11>
    std::vector<Amplitude> amps(4);
    switch (kind) {
    case BellKind::PhiPlus:
        amps = {h, 0.0, 0.0, h};
        break;
    case BellKind::PhiMinus:
        amps = {h, 0.0, 0.0, -h};
        break;
    case BellKind::PsiPlus:
        amps = {0.0, h, h, 0.0};
        break;
    case BellKind::PsiMinus:
        amps = {0.0, -h, h, 0.0};
        break;
    }
    const DualRailQubit pairs[2] = {pair_a, pair_b};
    return encode_register(amps, pairs, total_modes);
}

FockState pauli_correction(const FockState &s, const DualRailQubit &placement, Pauli which) {
    check_placements(std::span<const DualRailQubit>(&placement, 1), s.mode_count());
    const Amplitude i{0.0, 1.0};
    FockState out(s.mode_count());
    for (const auto &[ket, amp] : s.terms()) {
        int r1 = ket[placement.rail1];
        int r0 = ket[placement.rail0];
        if (r1 + r0 != 1) {
            throw LeakageError("Pauli correction on a pair holding " + std::to_string(r1 + r0) + " photons",
                               std::norm(amp));
        }
        Occupation flipped = ket;
        std::swap(flipped[placement.rail1], flipped[placement.rail0]);
        switch (which) {
        case Pauli::I:
            out.accumulate(ket, amp);
            break;
        case Pauli::X:
            out.accumulate(flipped, amp);
            break;
        case Pauli::Z:
            out.accumulate(ket, r1 == 1 ? -amp : amp);
            break;
        case Pauli::Y:
            // Y|0> = i|1>, Y|1> = -i|0>
            out.accumulate(flipped, r1 == 1 ? -i * amp : i * amp);
            break;
        }
    }
    return out;
}

} // namespace dualrail
