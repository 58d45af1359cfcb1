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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dualrail/linear_optics.h"
#include "dualrail/protocols.h"
#include "dualrail/random.h"

namespace dualrail {
namespace {

const double kH = 1.0 / std::sqrt(2.0);
const Amplitude kI{0.0, 1.0};
const LogicalAmplitudes kZero{1.0, 0.0};
const LogicalAmplitudes kOne{0.0, 1.0};

double dist(const std::vector<Amplitude> &a, const std::vector<Amplitude> &b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, std::abs(a[i] - b[i]));
    }
    return d;
}

// Independent 2x2 Paulis in basis (|0>, |1>).
Matrix sigma(int k) {
    Matrix m(2, 2);
    switch (k) {
    case 0:
        m(0, 0) = m(1, 1) = 1.0;
        break;
    case 1: // z
        m(0, 0) = 1.0;
        m(1, 1) = -1.0;
        break;
    case 2: // x
        m(0, 1) = m(1, 0) = 1.0;
        break;
    default: // y
        m(0, 1) = -kI;
        m(1, 0) = kI;
    }
    return m;
}

// Two-qubit Bell vectors over |00>,|01>,|10>,|11>, first qubit most
// significant, in the order Psi+, Psi-, Phi+, Phi-.
std::array<std::array<Amplitude, 4>, 4> bell_vectors() {
    return {{{0.0, kH, kH, 0.0}, {0.0, -kH, kH, 0.0}, {kH, 0.0, 0.0, kH}, {kH, 0.0, 0.0, -kH}}};
}

// Operator on qubit 3 induced by outcome b: column j is
// (<B_b|_{12} x I) |j>_1 (sum_i u_i |B_i>_{23}).
Matrix induced(const std::array<Amplitude, 4> &u, std::size_t b) {
    auto B = bell_vectors();
    std::array<Amplitude, 4> anc{};
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t k = 0; k < 4; ++k) {
            anc[k] += u[i] * B[i][k];
        }
    }
    Matrix m(2, 2);
    for (int j = 0; j < 2; ++j) {
        for (int q2 = 0; q2 < 2; ++q2) {
            for (int q3 = 0; q3 < 2; ++q3) {
                m(static_cast<std::size_t>(q3), static_cast<std::size_t>(j)) +=
                    std::conj(B[b][static_cast<std::size_t>(2 * j + q2)]) * anc[static_cast<std::size_t>(2 * q2 + q3)];
            }
        }
    }
    return m;
}

// Rows outcome (I,Z,X,Y), columns ancilla (I,Z,X,Y).
const std::array<std::array<Amplitude, 4>, 4> kDerived = {{{1.0, 1.0, 1.0, kI},
                                                           {-1.0, -1.0, 1.0, kI},
                                                           {1.0, -1.0, 1.0, -kI},
                                                           {-kI, kI, kI, 1.0}}};

TEST(Protocols, CsignReference) {
    Matrix c = csign_reference();
    EXPECT_EQ(c(3, 3), Amplitude(-1.0));
    EXPECT_EQ(c.distance(c.adjoint()), 0.0);
    EXPECT_EQ((c * c).distance(Matrix::identity(4)), 0.0);
    EXPECT_EQ((c * c.adjoint()).distance(Matrix::identity(4)), 0.0);
}

TEST(Protocols, DerivedCoefficientTable) {
    CoefficientTable t = derive_coefficient_table();
    for (std::size_t b = 0; b < 4; ++b) {
        for (std::size_t i = 0; i < 4; ++i) {
            EXPECT_NEAR(std::abs(t.a[b][i] - kDerived[b][i]), 0.0, 1e-12) << b << "," << i;
            EXPECT_TRUE(t.exact[b][i]);
        }
    }
}

TEST(Protocols, CoefficientTableMatchesBlockOracle) {
    for (std::size_t b = 0; b < 4; ++b) {
        for (std::size_t i = 0; i < 4; ++i) {
            std::array<Amplitude, 4> u{};
            u[i] = 1.0;
            Matrix want = Amplitude(0.5) * kDerived[b][i] * (sigma(static_cast<int>(b)) * sigma(static_cast<int>(i)));
            EXPECT_LE(induced(u, b).distance(want), 1e-12);
        }
    }
}

TEST(Protocols, TeleportTableMatchesOracleForRandomAncilla) {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> g;
    for (int n = 0; n < 50; ++n) {
        std::array<Amplitude, 4> u;
        double norm = 0.0;
        for (auto &x : u) {
            x = {g(rng), g(rng)};
            norm += std::norm(x);
        }
        for (auto &x : u) {
            x /= std::sqrt(norm);
        }
        auto rows = teleport_gate_table({u[0], u[1], u[2], u[3]});
        ASSERT_EQ(rows.size(), 4u);
        for (std::size_t b = 0; b < 4; ++b) {
            EXPECT_EQ(rows[b].outcome, kBellOrder[b]);
            EXPECT_LE(rows[b].kraus.distance(induced(u, b)), 1e-12);
            EXPECT_LE(rows[b].kraus.distance(rows[b].coefficient * rows[b].op), 1e-12);
        }
    }
}

TEST(Protocols, TeleportIdentity) {
    auto rows = teleport_gate_table({1.0, 0.0, 0.0, 0.0});
    // Psi+ outcome: identity up to phase, weight 1/4.
    EXPECT_LE(rows[0].op.distance(Matrix::identity(2)), 1e-12);
    EXPECT_NEAR(std::abs(rows[0].coefficient), 0.5, 1e-12);
    std::mt19937_64 rng(37);
    for (int n = 0; n < 100; ++n) {
        LogicalAmplitudes in = random_qubit(rng);
        auto outs = teleport_outputs(rows, in);
        for (std::size_t b = 0; b < 4; ++b) {
            EXPECT_NEAR(outs[b].norm_squared(), 0.25, 1e-12);
            auto back = rows[b].op.adjoint() * std::vector<Amplitude>{outs[b].a0, outs[b].a1};
            Amplitude overlap = std::conj(in.a0) * back[0] + std::conj(in.a1) * back[1];
            EXPECT_NEAR(std::norm(overlap) / (std::norm(back[0]) + std::norm(back[1])), 1.0, 1e-12);
        }
    }
}

TEST(Protocols, PsiMinusAncillaGivesSigmaZOnPsiPlusOutcome) {
    auto rows = teleport_gate_table({0.0, 1.0, 0.0, 0.0});
    EXPECT_LE(rows[0].op.distance(sigma(1)), 1e-12);
}

TEST(Protocols, TabulatedTableComparison) {
    CoefficientComparison c = verify_a_matrix();
    EXPECT_EQ(c.mismatches, 8u);
    std::size_t counted = 0;
    for (const auto &row : c.status) {
        for (auto s : row) {
            counted += s == EntryStatus::Mismatch;
        }
    }
    EXPECT_EQ(counted, c.mismatches);
    EXPECT_NE(c.report.find("mismatch"), std::string::npos);
}

TEST(Protocols, PreBs2StateAndBellDecomposition) {
    std::mt19937_64 rng(41);
    for (int n = 0; n < 20; ++n) {
        LogicalAmplitudes t = random_qubit(rng);
        const Amplitude a = t.a0, b = t.a1;
        FockState s = destructive_pre_bs2_state(kOne, t);
        // modes 1', 2', 3, 4; control |1> gives the triplet on (1', 2').
        EXPECT_NEAR(std::abs(s.amplitude({0, 1, 0, 1}) - kH * a), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(s.amplitude({0, 1, 1, 0}) - kH * b), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(s.amplitude({1, 0, 0, 1}) - kH * a), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(s.amplitude({1, 0, 1, 0}) - kH * b), 0.0, 1e-15);
        EXPECT_EQ(s.size(), 4u);

        // Bell states over the occupations (n_2', n_3): |n_2' n_3>.
        auto bell_residual = [&](Amplitude c10, Amplitude c01, Amplitude c00, Amplitude c11) {
            std::map<std::pair<int, int>, Amplitude> r;
            for (const auto &[k, v] : s.terms()) {
                Amplitude w = (k[1] == 1 && k[2] == 0)   ? c10
                              : (k[1] == 0 && k[2] == 1) ? c01
                              : (k[1] == 0 && k[2] == 0) ? c00
                              : (k[1] == 1 && k[2] == 1) ? c11
                                                         : Amplitude(0.0);
                r[{k[0], k[3]}] += std::conj(w) * v;
            }
            return r;
        };
        auto psi_p = bell_residual(kH, kH, 0.0, 0.0);
        auto psi_m = bell_residual(kH, -kH, 0.0, 0.0);
        auto phi_p = bell_residual(0.0, 0.0, kH, kH);
        auto phi_m = bell_residual(0.0, 0.0, kH, -kH);
        auto near = [](Amplitude x, Amplitude y) { return std::abs(x - y) < 1e-15; };
        EXPECT_TRUE(near(psi_p[{0, 1}], 0.5 * a) && near(psi_p[{1, 0}], 0.5 * b));
        EXPECT_TRUE(near(psi_m[{0, 1}], 0.5 * a) && near(psi_m[{1, 0}], -0.5 * b));
        EXPECT_TRUE(near(phi_p[{1, 1}], 0.5 * a) && near(phi_p[{0, 0}], 0.5 * b));
        EXPECT_TRUE(near(phi_m[{1, 1}], 0.5 * a) && near(phi_m[{0, 0}], -0.5 * b));
    }
}

TEST(Protocols, D1IsThePsiMinusPort) {
    LogicalAmplitudes t{0.6, Amplitude(0.0, 0.8)};
    GateRunResult r = run_destructive_csign(kOne, t, AcceptPolicy::Strict);
    int accepted = 0;
    for (const auto &b : r.branches) {
        if (!b.accepted) {
            continue;
        }
        ++accepted;
        EXPECT_EQ(b.branch.pattern.requirements.at(destructive_modes::kD1), 1);
        EXPECT_EQ(b.branch.pattern.requirements.at(destructive_modes::kD2), 0);
        // Psi- residual on (1',4): alpha|0,1> - beta|1,0>.
        FockState want = FockState::from_terms(2, {{{0, 1}, t.a0}, {{1, 0}, -t.a1}});
        EXPECT_TRUE(equal_up_to_global_phase(b.branch.residual, want, 1e-12).equal);
    }
    EXPECT_EQ(accepted, 1);
    EXPECT_EQ(destructive_mode_labels()[destructive_modes::kD1], "3");
    EXPECT_EQ(destructive_mode_labels()[destructive_modes::kD2], "2'");
}

TEST(Protocols, DestructiveExamples) {
    LogicalAmplitudes t{0.6, Amplitude(0.0, 0.8)};
    GateRunResult one = run_destructive_csign(kOne, t, AcceptPolicy::Strict);
    EXPECT_NEAR(one.accepted_probability, 0.25, 1e-12);
    EXPECT_LE(dist(one.output_logical, {t.a0, -t.a1}), 1e-12);
    GateRunResult zero = run_destructive_csign(kZero, t, AcceptPolicy::Strict);
    EXPECT_NEAR(zero.accepted_probability, 0.25, 1e-12);
    EXPECT_LE(dist(zero.output_logical, {t.a0, t.a1}), 1e-12);
    GateRunResult ff = run_destructive_csign(kOne, t, AcceptPolicy::FeedForward);
    EXPECT_NEAR(ff.accepted_probability, 0.5, 1e-12);
    for (const auto &b : ff.branches) {
        if (b.accepted) {
            EXPECT_LE(dist(b.logical, {t.a0, -t.a1}), 1e-12);
        }
    }
}

TEST(Protocols, DestructiveBranchWeightsAreInputIndependent) {
    std::mt19937_64 rng(43);
    for (int n = 0; n < 100; ++n) {
        LogicalAmplitudes c = (n % 2) ? kOne : kZero;
        GateRunResult r = run_destructive_csign(c, random_qubit(rng), AcceptPolicy::FeedForward);
        double single = 0.0, rest = 0.0;
        for (const auto &b : r.branches) {
            const auto &q = b.branch.pattern.requirements;
            int d1 = q.at(destructive_modes::kD1), d2 = q.at(destructive_modes::kD2);
            if (d1 + d2 == 1) {
                EXPECT_NEAR(b.branch.probability, 0.25, 1e-12);
                single += b.branch.probability;
            } else {
                rest += b.branch.probability;
            }
            if (d1 == 1 && d2 == 1) {
                EXPECT_NEAR(b.branch.probability, 0.0, 1e-15);
            }
            if (b.accepted) {
                EXPECT_LE(b.leakage, 1e-12);
            }
        }
        EXPECT_NEAR(single, 0.5, 1e-12);
        EXPECT_NEAR(rest, 0.5, 1e-12);
        EXPECT_NEAR(r.fidelity_vs_reference.value(), 1.0, 1e-12);
    }
}

TEST(Protocols, FeedForwardCorrectionIsZ) {
    LogicalAmplitudes t{0.8, Amplitude(0.0, 0.6)};
    GateRunResult r = run_destructive_csign(kOne, t, AcceptPolicy::FeedForward);
    for (const auto &b : r.branches) {
        if (b.accepted && b.branch.pattern.requirements.at(destructive_modes::kD2) == 1) {
            ASSERT_TRUE(b.branch.correction.has_value());
            EXPECT_EQ(*b.branch.correction, Pauli::Z);
        }
    }
}

TEST(Protocols, EncoderExamples) {
    LogicalAmplitudes in{0.6, Amplitude(0.0, 0.8)};
    GateRunResult two = run_quantum_encoder(in, 2, AcceptPolicy::Strict);
    EXPECT_NEAR(two.accepted_probability, 0.25, 1e-12);
    ASSERT_EQ(two.output_logical.size(), 4u);
    EXPECT_LE(dist(two.output_logical, {in.a0, 0.0, 0.0, in.a1}), 1e-12);
    EXPECT_NEAR(run_quantum_encoder(in, 2, AcceptPolicy::FeedForward).accepted_probability, 0.5, 1e-12);
    for (int n : {3, 4}) {
        GateRunResult r = run_quantum_encoder(in, n, AcceptPolicy::Strict);
        EXPECT_NEAR(r.accepted_probability, 0.25, 1e-12);
        std::vector<Amplitude> ghz(std::size_t{1} << n, 0.0);
        ghz.front() = in.a0;
        ghz.back() = in.a1;
        EXPECT_LE(dist(r.output_logical, ghz), 1e-12);
    }
    EXPECT_THROW(run_quantum_encoder(in, 1, AcceptPolicy::Strict), std::invalid_argument);
}

TEST(Protocols, NondestructiveBasisSigns) {
    const LogicalAmplitudes basis[2] = {kZero, kOne};
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            GateRunResult r = run_nondestructive_csign(basis[a], basis[b], AcceptPolicy::FeedForward);
            EXPECT_NEAR(r.accepted_probability, 0.25, 1e-12);
            std::vector<Amplitude> want(4, 0.0);
            want[static_cast<std::size_t>(2 * a + b)] = (a == 1 && b == 1) ? -1.0 : 1.0;
            EXPECT_LE(dist(r.output_logical, want), 1e-12) << a << b;
        }
    }
}

TEST(Protocols, NondestructiveRandomInputs) {
    std::mt19937_64 rng(47);
    for (int n = 0; n < 100; ++n) {
        LogicalAmplitudes c = random_qubit(rng), t = random_qubit(rng);
        GateRunResult r = run_nondestructive_csign(c, t, AcceptPolicy::FeedForward);
        EXPECT_NEAR(r.accepted_probability, 0.25, 1e-12);
        std::vector<Amplitude> want = {c.a0 * t.a0, c.a0 * t.a1, c.a1 * t.a0, -c.a1 * t.a1};
        for (const auto &b : r.branches) {
            if (b.accepted && b.branch.probability > 0) {
                EXPECT_LE(b.leakage, 1e-12);
                // logical is phase-aligned to the reference
                EXPECT_LE(dist(b.logical, want), 1e-12);
            }
        }
        EXPECT_GE(r.fidelity_vs_reference.value(), 1.0 - 1e-12);
    }
    GateRunResult strict = run_nondestructive_csign(random_qubit(rng), random_qubit(rng), AcceptPolicy::Strict);
    EXPECT_NEAR(strict.accepted_probability, 0.0625, 1e-12);
}

TEST(Protocols, RejectsUnnormalizedInput) {
    EXPECT_THROW(run_destructive_csign({1.0, 1.0}, kZero, AcceptPolicy::Strict), std::invalid_argument);
}

} // namespace
} // namespace dualrail
