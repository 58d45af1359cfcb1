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

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dualrail/dual_rail.h"
#include "dualrail/fock_state.h"
#include "dualrail/measurement.h"

namespace dualrail {

/// Dense complex matrix, row-major. Used for the qubit-level reference
/// operators (2x2 and 4x4).
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Amplitude> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
    static Matrix identity(std::size_t n);

    Amplitude &operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    Amplitude operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    Matrix adjoint() const;
    /// max entry-wise |a - b|
    double distance(const Matrix &other) const;
};

Matrix operator*(const Matrix &a, const Matrix &b);
Matrix operator*(Amplitude s, const Matrix &m);
Matrix operator+(const Matrix &a, const Matrix &b);
std::vector<Amplitude> operator*(const Matrix &m, const std::vector<Amplitude> &v);

Matrix pauli_matrix(Pauli p);

/// Conditional sign flip diag(1, 1, 1, -1) on {|00>, |01>, |10>, |11>}.
Matrix csign_reference();

// ---------------------------------------------------------------------------
// Teleportation as a gate (qubit level, no photons).

/// Amplitudes of the ancilla pair (2,3) on Psi+, Psi-, Phi+, Phi-.
struct BellAmplitudes {
    Amplitude u0;
    Amplitude uz;
    Amplitude ux;
    Amplitude uy;
};

/// Bell outcomes on qubits (1,2), labelled by the Pauli they pair with:
/// Psi+ <-> I, Psi- <-> Z, Phi+ <-> X, Phi- <-> Y. The same order indexes
/// the ancilla components.
inline constexpr std::array<BellKind, 4> kBellOrder = {BellKind::PsiPlus, BellKind::PsiMinus, BellKind::PhiPlus,
                                                       BellKind::PhiMinus};
inline constexpr std::array<Pauli, 4> kPauliOrder = {Pauli::I, Pauli::Z, Pauli::X, Pauli::Y};

struct TeleportRow {
    BellKind outcome;
    /// kraus = coefficient * op, with op scaled to tr(op^dagger op) = 2 and
    /// its first largest-modulus entry real positive.
    Amplitude coefficient;
    Matrix op;
    /// Unnormalized operator the outcome induces on qubit 3:
    /// kraus |a> = (<outcome|_{12} x I_3) |a>_1 |ancilla>_{23}.
    Matrix kraus;
};

/// Builds |a>_1 (u0 Psi+ + uz Psi- + ux Phi+ + uy Phi-)_{23}, changes to the
/// Bell basis on (1,2) and returns the operator induced on qubit 3 per
/// outcome. Computed from the 8-dimensional state vector directly.
std::vector<TeleportRow> teleport_gate_table(const BellAmplitudes &u);

/// Applies every row to `input`: the unnormalized qubit-3 state per outcome.
std::vector<LogicalAmplitudes> teleport_outputs(const std::vector<TeleportRow> &rows, const LogicalAmplitudes &input);

/// a[b][i] with (<b|_{12} x I) |a>_1 |B_i>_{23} = (1/2) a[b][i] sigma_b sigma_i |a>_3.
/// `exact[b][i]` records whether the block is exactly of that form.
struct CoefficientTable {
    std::array<std::array<Amplitude, 4>, 4> a{};
    std::array<std::array<bool, 4>, 4> exact{};
};

CoefficientTable derive_coefficient_table();

/// Externally tabulated values for this decomposition (rows outcome
/// I,Z,X,Y; columns ancilla I,Z,X,Y). Kept only to be checked.
CoefficientTable tabulated_coefficient_table();

enum class EntryStatus { Match, MatchUpToRowPhase, Mismatch };

struct CoefficientComparison {
    CoefficientTable derived;
    CoefficientTable tabulated;
    std::array<std::array<EntryStatus, 4>, 4> status{};
    /// Per row, the unit phase that maximises agreement.
    std::array<Amplitude, 4> row_phase{};
    std::size_t mismatches = 0;
    std::string report;
};

CoefficientComparison verify_a_matrix();

// ---------------------------------------------------------------------------
// Photonic gates.

enum class AcceptPolicy { Strict, FeedForward };

std::string to_string(AcceptPolicy p);

struct GateBranch {
    BranchResult branch;
    /// Detector names, e.g. {"D1","D2"}, and the internal mode of each.
    std::vector<std::string> detector_names;
    std::vector<std::size_t> detector_modes;
    bool accepted = false;
    /// Feed-forward corrections applied, e.g. "Z target".
    std::vector<std::string> corrections;
    /// Decoded logical amplitudes of the (corrected) residual, global phase
    /// aligned to the reference. Empty for rejected branches.
    std::vector<Amplitude> logical;
    double leakage = 0.0;
    std::optional<double> fidelity;
};

struct GateRunResult {
    std::vector<GateBranch> branches;
    double accepted_probability = 0.0;
    /// Labels of the residual modes, in residual order.
    std::vector<std::string> output_modes;
    /// Names of the logical output qubits, most significant first.
    std::vector<std::string> output_qubits;
    /// Logical output of the first accepted branch with nonzero probability.
    std::vector<Amplitude> output_logical;
    /// Expected normalized logical output.
    std::vector<Amplitude> reference;
    /// Minimum fidelity over accepted branches with nonzero probability.
    std::optional<double> fidelity_vs_reference;
    /// Every mode label of the circuit, indexed by internal mode.
    std::vector<std::string> mode_labels;
};

/// Mode label tables: index -> name, as the modes are read out at the end
/// of each circuit (so beam-splitter outputs carry their primed names).
std::vector<std::string> destructive_mode_labels();
std::vector<std::string> encoder_mode_labels(int n_copies);
std::vector<std::string> nondestructive_mode_labels();

/// Internal mode indices of the destructive gate.
namespace destructive_modes {
inline constexpr std::size_t kOut1 = 0;   // control rail 1, becomes 1'
inline constexpr std::size_t kTwo = 1;    // control rail 2, becomes 2', then port D2
inline constexpr std::size_t kThree = 2;  // target rail 3, then port D1
inline constexpr std::size_t kFour = 3;   // target rail 4
inline constexpr std::size_t kD1 = kThree;
inline constexpr std::size_t kD2 = kTwo;
} // namespace destructive_modes

/// Four-mode photonic state right before BS2 (after BS1 on the control).
FockState destructive_pre_bs2_state(const LogicalAmplitudes &control, const LogicalAmplitudes &target);

/// Destructive conditional sign flip. The control is consumed; the target
/// re-emerges on (1',4). The accepted output is proportional to
/// control_0 * target + control_1 * Z target.
GateRunResult run_destructive_csign(const LogicalAmplitudes &control, const LogicalAmplitudes &target,
                                    AcceptPolicy policy);

/// Copies the basis of `input` onto `n_copies` dual-rail qubits:
/// a0 |0...0>_L + a1 |1...1>_L.
GateRunResult run_quantum_encoder(const LogicalAmplitudes &input, int n_copies, AcceptPolicy policy);

/// Encoder followed by the destructive gate on one copy of the control.
/// Output qubits: control on (a1,a2), target on (1',4). The policy applies
/// to both heralding stages.
GateRunResult run_nondestructive_csign(const LogicalAmplitudes &control, const LogicalAmplitudes &target,
                                       AcceptPolicy policy);

} // namespace dualrail
