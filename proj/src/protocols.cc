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

#include "dualrail/protocols.h"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "dualrail/linear_optics.h"

namespace dualrail {

// ---------------------------------------------------------------------------
// Matrix

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

Matrix Matrix::adjoint() const {
    Matrix m(cols, rows);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            m(c, r) = std::conj((*this)(r, c));
        }
    }
    return m;
}

double Matrix::distance(const Matrix &other) const {
    if (rows != other.rows || cols != other.cols) {
        throw std::invalid_argument("matrix shape mismatch");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        worst = std::max(worst, std::abs(data[i] - other.data[i]));
    }
    return worst;
}

Matrix operator*(const Matrix &a, const Matrix &b) {
    if (a.cols != b.rows) {
        throw std::invalid_argument("matrix product shape mismatch");
    }
    Matrix m(a.rows, b.cols);
    for (std::size_t r = 0; r < a.rows; ++r) {
        for (std::size_t c = 0; c < b.cols; ++c) {
            for (std::size_t k = 0; k < a.cols; ++k) {
                m(r, c) += a(r, k) * b(k, c);
            }
        }
    }
    return m;
}

Matrix operator*(Amplitude s, const Matrix &m) {
    Matrix out = m;
    for (auto &x : out.data) {
        x *= s;
    }
    return out;
}

Matrix operator+(const Matrix &a, const Matrix &b) {
    if (a.rows != b.rows || a.cols != b.cols) {
        throw std::invalid_argument("matrix sum shape mismatch");
    }
    Matrix out = a;
    for (std::size_t i = 0; i < out.data.size(); ++i) {
        out.data[i] += b.data[i];
    }
    return out;
}

std::vector<Amplitude> operator*(const Matrix &m, const std::vector<Amplitude> &v) {
    if (m.cols != v.size()) {
        throw std::invalid_argument("matrix-vector shape mismatch");
    }
    std::vector<Amplitude> out(m.rows);
    for (std::size_t r = 0; r < m.rows; ++r) {
        for (std::size_t c = 0; c < m.cols; ++c) {
            out[r] += m(r, c) * v[c];
        }
    }
    return out;
}

Matrix pauli_matrix(Pauli p) {
    const Amplitude i{0.0, 1.0};
    Matrix m(2, 2);
    switch (p) {
    case Pauli::I:
        m(0, 0) = m(1, 1) = 1.0;
        break;
    case Pauli::X:
        m(0, 1) = m(1, 0) = 1.0;
        break;
    case Pauli::Y:
        m(0, 1) = -i;
        m(1, 0) = i;
        break;
    case Pauli::Z:
        m(0, 0) = 1.0;
        m(1, 1) = -1.0;
        break;
    }
    return m;
}

Matrix csign_reference() {
    Matrix u = Matrix::identity(4);
    u(3, 3) = -1.0;
    return u;
}

// ---------------------------------------------------------------------------
// Teleportation table

namespace {

using Vec4 = std::array<Amplitude, 4>;

// Two-qubit Bell vector, index = 2*first + second.
Vec4 bell_vector(BellKind kind) {
    const double h = 1.0 / std::sqrt(2.0);
    switch (kind) {
    case BellKind::PhiPlus:
        return {h, 0.0, 0.0, h};
    case BellKind::PhiMinus:
        return {h, 0.0, 0.0, -h};
    case BellKind::PsiPlus:
        return {0.0, h, h, 0.0};
    case BellKind::PsiMinus:
        return {0.0, -h, h, 0.0};
    }
    return {};
}

// (<outcome|_{12} x I_3) |col>_1 |ancilla>_{23}, one column per logical input.
Matrix induced_operator(BellKind outcome, const Vec4 &ancilla) {
    const Vec4 b = bell_vector(outcome);
    Matrix m(2, 2);
    for (int col = 0; col < 2; ++col) {
        std::array<Amplitude, 8> joint{};
        for (int q2 = 0; q2 < 2; ++q2) {
            for (int q3 = 0; q3 < 2; ++q3) {
                joint[col * 4 + q2 * 2 + q3] = ancilla[q2 * 2 + q3];
            }
        }
        for (int q3 = 0; q3 < 2; ++q3) {
            Amplitude acc{};
            for (int q1 = 0; q1 < 2; ++q1) {
                for (int q2 = 0; q2 < 2; ++q2) {
                    acc += std::conj(b[q1 * 2 + q2]) * joint[q1 * 4 + q2 * 2 + q3];
                }
            }
            m(q3, col) = acc;
        }
    }
    return m;
}

Amplitude trace_product(const Matrix &a_dag_source, const Matrix &b) {
    Matrix p = a_dag_source.adjoint() * b;
    return p(0, 0) + p(1, 1);
}

std::string format_unit(Amplitude z) {
    auto near = [](double x, double y) { return std::abs(x - y) < 1e-12; };
    if (near(z.imag(), 0.0)) {
        if (near(z.real(), 1.0)) return "1";
        if (near(z.real(), -1.0)) return "-1";
        if (near(z.real(), 0.0)) return "0";
    }
    if (near(z.real(), 0.0)) {
        if (near(z.imag(), 1.0)) return "i";
        if (near(z.imag(), -1.0)) return "-i";
    }
    return format_amplitude(z);
}

const char *kPauliNames[4] = {"I", "Z", "X", "Y"};

} // namespace

std::vector<TeleportRow> teleport_gate_table(const BellAmplitudes &u) {
    const Amplitude weights[4] = {u.u0, u.uz, u.ux, u.uy};
    double total = 0.0;
    for (auto w : weights) {
        total += std::norm(w);
    }
    if (std::abs(total - 1.0) > kNormTolerance) {
        throw std::invalid_argument("ancilla Bell amplitudes are not normalized");
    }
    Vec4 ancilla{};
    for (std::size_t i = 0; i < 4; ++i) {
        Vec4 b = bell_vector(kBellOrder[i]);
        for (std::size_t k = 0; k < 4; ++k) {
            ancilla[k] += weights[i] * b[k];
        }
    }

    std::vector<TeleportRow> rows;
    for (BellKind outcome : kBellOrder) {
        TeleportRow row{outcome, 0.0, Matrix(2, 2), induced_operator(outcome, ancilla)};
        double scale = std::sqrt(std::real(trace_product(row.kraus, row.kraus)) / 2.0);
        if (scale > kPruneTolerance) {
            std::size_t pivot = 0;
            for (std::size_t k = 1; k < 4; ++k) {
                if (std::abs(row.kraus.data[k]) > std::abs(row.kraus.data[pivot]) + 1e-12) {
                    pivot = k;
                }
            }
            Amplitude phase = row.kraus.data[pivot] / std::abs(row.kraus.data[pivot]);
            row.coefficient = scale * phase;
            row.op = (1.0 / row.coefficient) * row.kraus;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<LogicalAmplitudes> teleport_outputs(const std::vector<TeleportRow> &rows, const LogicalAmplitudes &input) {
    std::vector<LogicalAmplitudes> out;
    for (const auto &row : rows) {
        auto v = row.kraus * std::vector<Amplitude>{input.a0, input.a1};
        out.push_back({v[0], v[1]});
    }
    return out;
}

CoefficientTable derive_coefficient_table() {
    CoefficientTable t;
    for (std::size_t b = 0; b < 4; ++b) {
        for (std::size_t i = 0; i < 4; ++i) {
            Matrix block = induced_operator(kBellOrder[b], bell_vector(kBellOrder[i]));
            Matrix pauli = pauli_matrix(kPauliOrder[b]) * pauli_matrix(kPauliOrder[i]);
            // tr(P^dagger P) = 2, so block = (a/2) P gives a = tr(P^dagger block).
            Amplitude a = trace_product(pauli, block);
            t.a[b][i] = a;
            t.exact[b][i] = block.distance((a / 2.0) * pauli) < 1e-12;
        }
    }
    return t;
}

CoefficientTable tabulated_coefficient_table() {
    const Amplitude i{0.0, 1.0};
    CoefficientTable t;
    t.a = {{{1.0, -1.0, 1.0, i}, {1.0, -1.0, -i, -1.0}, {1.0, -i, 1.0, 1.0}, {-i, 1.0, 1.0, 1.0}}};
    for (auto &row : t.exact) {
        row.fill(true);
    }
    return t;
}

CoefficientComparison verify_a_matrix() {
    constexpr double tol = 1e-12;
    CoefficientComparison cmp;
    cmp.derived = derive_coefficient_table();
    cmp.tabulated = tabulated_coefficient_table();

    std::size_t matches = 0, phase_matches = 0;
    for (std::size_t b = 0; b < 4; ++b) {
        const auto &d = cmp.derived.a[b];
        const auto &p = cmp.tabulated.a[b];
        std::vector<Amplitude> candidates = {1.0, -1.0, {0.0, 1.0}, {0.0, -1.0}};
        for (std::size_t k = 0; k < 4; ++k) {
            if (std::abs(p[k]) > tol && std::abs(d[k]) > tol) {
                Amplitude r = d[k] / p[k];
                candidates.push_back(r / std::abs(r));
            }
        }
        Amplitude best = 1.0;
        int best_count = -1;
        for (Amplitude lambda : candidates) {
            int count = 0;
            for (std::size_t k = 0; k < 4; ++k) {
                count += std::abs(d[k] - lambda * p[k]) < tol;
            }
            if (count > best_count) {
                best_count = count;
                best = lambda;
            }
        }
        cmp.row_phase[b] = best;
        for (std::size_t k = 0; k < 4; ++k) {
            if (std::abs(d[k] - p[k]) < tol) {
                cmp.status[b][k] = EntryStatus::Match;
                ++matches;
            } else if (std::abs(d[k] - best * p[k]) < tol) {
                cmp.status[b][k] = EntryStatus::MatchUpToRowPhase;
                ++phase_matches;
            } else {
                cmp.status[b][k] = EntryStatus::Mismatch;
                ++cmp.mismatches;
            }
        }
    }

    std::ostringstream os;
    auto print_table = [&](const char *title, const CoefficientTable &t) {
        os << title << " (rows: outcome Psi+,Psi-,Phi+,Phi- ~ I,Z,X,Y; columns: ancilla I,Z,X,Y)\n";
        for (std::size_t b = 0; b < 4; ++b) {
            os << "  " << kPauliNames[b] << ":";
            for (std::size_t k = 0; k < 4; ++k) {
                os << ' ' << format_unit(t.a[b][k]);
            }
            os << '\n';
        }
    };
    print_table("derived coefficient table", cmp.derived);
    print_table("tabulated coefficient table", cmp.tabulated);
    bool all_exact = true;
    for (const auto &row : cmp.derived.exact) {
        for (bool e : row) {
            all_exact = all_exact && e;
        }
    }
    os << "every derived block is (a/2) sigma_b sigma_i: " << (all_exact ? "yes" : "no") << '\n';
    os << "best row phases:";
    for (std::size_t b = 0; b < 4; ++b) {
        os << ' ' << kPauliNames[b] << '=' << format_unit(cmp.row_phase[b]);
    }
    os << '\n';
    os << "entries: 16 compared, " << matches << " match, " << phase_matches << " match up to row phase, "
       << cmp.mismatches << " mismatch\n";
    for (std::size_t b = 0; b < 4; ++b) {
        for (std::size_t k = 0; k < 4; ++k) {
            if (cmp.status[b][k] == EntryStatus::Match) {
                continue;
            }
            os << "  a(" << kPauliNames[b] << ',' << kPauliNames[k] << "): derived " << format_unit(cmp.derived.a[b][k])
               << ", tabulated " << format_unit(cmp.tabulated.a[b][k]) << ", "
               << (cmp.status[b][k] == EntryStatus::MatchUpToRowPhase ? "match up to row phase" : "mismatch")
               << '\n';
        }
    }
    cmp.report = os.str();
    return cmp;
}

// ---------------------------------------------------------------------------
// Photonic gates

std::string to_string(AcceptPolicy p) { return p == AcceptPolicy::Strict ? "strict" : "feedforward"; }

namespace {

/// Corrections to apply in an accepted branch, as residual-space qubits.
using Acceptance = std::optional<std::vector<std::pair<DualRailQubit, std::string>>>;
using AcceptRule = std::function<Acceptance(const std::vector<int> &counts)>;

struct Herald {
    std::vector<std::size_t> detectors;
    std::vector<std::string> names;
    AcceptRule accept;
};

bool single_click(int first, int second, bool on_first) {
    return on_first ? (first == 1 && second == 0) : (first == 0 && second == 1);
}

GateRunResult evaluate(const FockState &state, const Herald &herald, const std::vector<DualRailQubit> &output_qubits,
                       std::vector<Amplitude> reference, std::vector<std::string> labels,
                       std::vector<std::string> qubit_names) {
    GateRunResult result;
    result.mode_labels = std::move(labels);
    result.output_qubits = std::move(qubit_names);

    double ref_norm = 0.0;
    for (auto a : reference) {
        ref_norm += std::norm(a);
    }
    if (ref_norm > 0.0) {
        for (auto &a : reference) {
            a /= std::sqrt(ref_norm);
        }
        result.reference = reference;
    }

    for (BranchResult &br : outcome_distribution(state, herald.detectors)) {
        GateBranch gb;
        gb.detector_names = herald.names;
        gb.detector_modes = herald.detectors;
        std::vector<int> counts;
        for (std::size_t d : herald.detectors) {
            counts.push_back(br.pattern.requirements.at(d));
        }
        if (result.output_modes.empty()) {
            for (std::size_t m : br.mode_map) {
                result.output_modes.push_back(result.mode_labels[m]);
            }
        }
        Acceptance acc = herald.accept(counts);
        gb.accepted = acc.has_value();
        if (gb.accepted) {
            result.accepted_probability += br.probability;
        }
        if (gb.accepted && !br.residual.empty()) {
            for (const auto &[qubit, name] : *acc) {
                br.residual = pauli_correction(br.residual, qubit, Pauli::Z);
                br.correction = Pauli::Z;
                gb.corrections.push_back("Z " + name);
            }
            RegisterDecoding dec = decode_register(br.residual, output_qubits);
            gb.leakage = dec.leakage;
            if (dec.leakage > kNormTolerance) {
                throw InvariantViolation("accepted branch leaks weight " + format_real(dec.leakage) +
                                         " out of the dual-rail subspace");
            }
            gb.logical = dec.amplitudes;
            if (!result.reference.empty()) {
                Amplitude overlap{};
                for (std::size_t k = 0; k < gb.logical.size(); ++k) {
                    overlap += std::conj(result.reference[k]) * gb.logical[k];
                }
                if (std::abs(overlap) > 0.0) {
                    Amplitude phase = overlap / std::abs(overlap);
                    for (auto &a : gb.logical) {
                        a *= std::conj(phase);
                    }
                }
                gb.fidelity = std::norm(overlap);
                result.fidelity_vs_reference =
                    std::min(result.fidelity_vs_reference.value_or(1.0), *gb.fidelity);
            }
            if (result.output_logical.empty()) {
                result.output_logical = gb.logical;
            }
        }
        gb.branch = std::move(br);
        result.branches.push_back(std::move(gb));
    }
    return result;
}

FockState entangled_ancilla(int n_copies) {
    const double h = 1.0 / std::sqrt(2.0);
    Occupation up(2 * n_copies), down(2 * n_copies);
    for (int k = 0; k < 2 * n_copies; ++k) {
        up[k] = k % 2;       // 0101...01
        down[k] = 1 - k % 2; // 1010...10
    }
    return FockState::from_terms(2 * n_copies, {{up, h}, {down, -h}});
}

} // namespace

std::vector<std::string> destructive_mode_labels() { return {"1'", "2'", "3", "4"}; }

std::vector<std::string> encoder_mode_labels(int n_copies) {
    std::vector<std::string> labels;
    for (int k = 0; k < n_copies; ++k) {
        std::string letter(1, static_cast<char>('a' + k));
        labels.push_back(letter + "1");
        labels.push_back(letter + "2");
    }
    labels.push_back("1");
    labels.push_back("2");
    return labels;
}

std::vector<std::string> nondestructive_mode_labels() { return {"a1", "a2", "1'", "b2", "1", "2'", "3", "4"}; }

FockState destructive_pre_bs2_state(const LogicalAmplitudes &control, const LogicalAmplitudes &target) {
    using namespace destructive_modes;
    const DualRailQubit pair{0, 1};
    FockState s = tensor(encode(control, pair, 2), encode(target, pair, 2));
    // BS1 takes the rails in logical order (rail of |0>, rail of |1>).
    return apply_mode_unitary(s, {kTwo, kOut1}, hadamard_bs());
}

GateRunResult run_destructive_csign(const LogicalAmplitudes &control, const LogicalAmplitudes &target,
                                    AcceptPolicy policy) {
    using namespace destructive_modes;
    FockState s = apply_mode_unitary(destructive_pre_bs2_state(control, target), {kTwo, kThree}, hadamard_bs());

    // Residual modes are (1', 4): the output qubit is {rail1 = 0, rail0 = 1}.
    const DualRailQubit output{0, 1};
    Herald herald{{kD1, kD2}, {"D1", "D2"}, [policy, output](const std::vector<int> &c) -> Acceptance {
                      if (single_click(c[0], c[1], true)) {
                          return std::vector<std::pair<DualRailQubit, std::string>>{};
                      }
                      if (policy == AcceptPolicy::FeedForward && single_click(c[0], c[1], false)) {
                          return std::vector<std::pair<DualRailQubit, std::string>>{{output, "target"}};
                      }
                      return std::nullopt;
                  }};
    std::vector<Amplitude> reference = {(control.a0 + control.a1) * target.a0, (control.a0 - control.a1) * target.a1};
    return evaluate(s, herald, {output}, reference, destructive_mode_labels(), {"target(1',4)"});
}

GateRunResult run_quantum_encoder(const LogicalAmplitudes &input, int n_copies, AcceptPolicy policy) {
    if (n_copies < 2 || n_copies > 12) {
        throw std::invalid_argument("encoder copies must be between 2 and 12");
    }
    const std::size_t n = static_cast<std::size_t>(n_copies);
    const std::size_t last_ancilla = 2 * n - 1;
    const std::size_t input_one = 2 * n;
    FockState s = tensor(entangled_ancilla(n_copies), encode(input, {0, 1}, 2));
    s = apply_mode_unitary(s, {last_ancilla, input_one}, hadamard_bs());

    std::vector<DualRailQubit> qubits;
    std::vector<std::string> labels = encoder_mode_labels(n_copies);
    std::vector<std::string> names;
    for (std::size_t k = 0; k < n; ++k) {
        qubits.push_back({2 * k, 2 * k + 1});
        std::string rail0 = k + 1 == n ? labels[2 * n + 1] : labels[2 * k + 1];
        names.push_back("(" + labels[2 * k] + "," + rail0 + ")");
    }
    Herald herald{{input_one, last_ancilla}, {"Da1", "Da2"}, [policy, first = qubits.front()](const std::vector<int> &c) -> Acceptance {
                      if (single_click(c[0], c[1], true)) {
                          return std::vector<std::pair<DualRailQubit, std::string>>{};
                      }
                      if (policy == AcceptPolicy::FeedForward && single_click(c[0], c[1], false)) {
                          return std::vector<std::pair<DualRailQubit, std::string>>{{first, "copy0"}};
                      }
                      return std::nullopt;
                  }};
    std::vector<Amplitude> reference(std::size_t{1} << n);
    reference.front() = input.a0;
    reference.back() = input.a1;
    return evaluate(s, herald, qubits, reference, labels, names);
}

GateRunResult run_nondestructive_csign(const LogicalAmplitudes &control, const LogicalAmplitudes &target,
                                       AcceptPolicy policy) {
    // a1 a2 b1 b2 | 1 2 | 3 4
    constexpr std::size_t a1 = 0, a2 = 1, b1 = 2, b2 = 3, one = 4, two = 5, three = 6;
    FockState s = tensor(entangled_ancilla(2), tensor(encode(control, {0, 1}, 2), encode(target, {0, 1}, 2)));
    s = apply_mode_unitary(s, {b2, one}, hadamard_bs());   // encoder
    s = apply_mode_unitary(s, {two, b1}, hadamard_bs());   // BS1 on the copy (b1, 2)
    s = apply_mode_unitary(s, {two, three}, hadamard_bs()); // BS2 on (2', 3)

    // Residual modes: a1, a2, 1', 4.
    const DualRailQubit ctrl{a1, a2};
    const DualRailQubit tgt{2, 3};
    Herald herald{{one, b2, three, two}, {"Da1", "Da2", "D1", "D2"}, [policy, ctrl, tgt](const std::vector<int> &c) -> Acceptance {
                      std::vector<std::pair<DualRailQubit, std::string>> fixes;
                      bool ff = policy == AcceptPolicy::FeedForward;
                      if (single_click(c[0], c[1], false) && ff) {
                          fixes.push_back({ctrl, "control"});
                      } else if (!single_click(c[0], c[1], true)) {
                          return std::nullopt;
                      }
                      if (single_click(c[2], c[3], false) && ff) {
                          fixes.push_back({tgt, "target"});
                      } else if (!single_click(c[2], c[3], true)) {
                          return std::nullopt;
                      }
                      return fixes;
                  }};
    std::vector<Amplitude> input = {control.a0 * target.a0, control.a0 * target.a1, control.a1 * target.a0,
                                    control.a1 * target.a1};
    std::vector<Amplitude> reference = csign_reference() * input;
    return evaluate(s, herald, {ctrl, tgt}, reference, nondestructive_mode_labels(),
                    {"control(a1,a2)", "target(1',4)"});
}

} // namespace dualrail
