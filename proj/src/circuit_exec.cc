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

#include <algorithm>
#include <cmath>

#include "dualrail/circuit.h"
#include "dualrail/measurement.h"

namespace dualrail::circuit {

std::optional<int> RunBranch::outcome(const std::string &name) const {
    for (const auto &[n, v] : outcomes) {
        if (n == name) {
            return v;
        }
    }
    return std::nullopt;
}

namespace {

bool holds(const Condition &c, const RunBranch &b) {
    return std::any_of(c.any_of.begin(), c.any_of.end(), [&](const std::vector<Comparison> &all) {
        return std::all_of(all.begin(), all.end(), [&](const Comparison &cmp) { return b.outcome(cmp.name) == cmp.value; });
    });
}

// Product of states living on disjoint modes of the same register.
FockState merge_disjoint(const FockState &a, const FockState &b) {
    FockState out(a.mode_count());
    for (const auto &[ka, va] : a.terms()) {
        for (const auto &[kb, vb] : b.terms()) {
            Occupation k(ka.size());
            for (std::size_t i = 0; i < k.size(); ++i) {
                k[i] = ka[i] + kb[i];
            }
            out.accumulate(k, va * vb);
        }
    }
    return out;
}

FockState initial_state(const CircuitIR &ir) {
    std::vector<Term> ket_terms;
    FockState state = FockState::vacuum(ir.mode_count);
    for (const auto &el : ir.elements) {
        if (auto *k = std::get_if<PrepareKet>(&el)) {
            ket_terms.emplace_back(k->ket, k->amp);
        } else if (auto *d = std::get_if<PrepareDualRail>(&el)) {
            state = merge_disjoint(state, encode(normalized(d->q), d->qubit, ir.mode_count));
        } else if (auto *b = std::get_if<PrepareBell>(&el)) {
            state = merge_disjoint(state, bell_state(b->kind, {b->modes[0], b->modes[1]}, {b->modes[2], b->modes[3]},
                                                     ir.mode_count));
        }
    }
    if (!ket_terms.empty()) {
        state = FockState::from_terms(ir.mode_count, ket_terms);
    }
    return state.normalized();
}

std::size_t current_index(const RunBranch &b, std::size_t original) {
    auto it = std::find(b.mode_map.begin(), b.mode_map.end(), original);
    if (it == b.mode_map.end()) {
        throw InvariantViolation("mode " + std::to_string(original) + " used after detection");
    }
    return static_cast<std::size_t>(it - b.mode_map.begin());
}

} // namespace

RunReport execute(const CircuitIR &ir) {
    RunReport report;
    for (std::size_t m = 0; m < ir.mode_count; ++m) {
        report.mode_labels.push_back(mode_name(ir, m));
    }

    RunBranch root;
    root.probability = 1.0;
    root.residual = initial_state(ir);
    for (std::size_t m = 0; m < ir.mode_count; ++m) {
        root.mode_map.push_back(m);
    }
    std::vector<RunBranch> live{std::move(root)};

    for (const auto &el : ir.elements) {
        if (auto *bs = std::get_if<ApplyBS>(&el)) {
            const ModeUnitary u = bs->matrix ? *bs->matrix : hadamard_bs();
            for (auto &b : live) {
                b.residual =
                    apply_mode_unitary(b.residual, {current_index(b, bs->m1), current_index(b, bs->m2)}, u);
            }
        } else if (auto *det = std::get_if<Detect>(&el)) {
            std::vector<RunBranch> next;
            for (const auto &b : live) {
                const std::size_t idx = current_index(b, det->mode);
                const std::size_t modes[1] = {idx};
                for (BranchResult &r : outcome_distribution(b.residual, modes)) {
                    if (r.residual.empty()) {
                        continue;
                    }
                    RunBranch child;
                    child.outcomes = b.outcomes;
                    child.outcomes.emplace_back(det->name, r.pattern.requirements.at(idx));
                    child.probability = b.probability * r.probability;
                    child.residual = std::move(r.residual);
                    for (std::size_t k : r.mode_map) {
                        child.mode_map.push_back(b.mode_map[k]);
                    }
                    child.corrections = b.corrections;
                    next.push_back(std::move(child));
                }
            }
            live = std::move(next);
        } else if (auto *ps = std::get_if<PostSelect>(&el)) {
            std::vector<RunBranch> keep;
            for (auto &b : live) {
                (holds(ps->condition, b) ? keep : report.rejected).push_back(std::move(b));
            }
            live = std::move(keep);
        } else if (auto *cor = std::get_if<Correct>(&el)) {
            for (auto &b : live) {
                if (!holds(cor->condition, b)) {
                    continue;
                }
                DualRailQubit q{current_index(b, cor->qubit.rail1), current_index(b, cor->qubit.rail0)};
                b.residual = pauli_correction(b.residual, q, cor->pauli);
                b.corrections.push_back(to_string(cor->pauli) + " on " + mode_name(ir, cor->qubit.rail1) + " " +
                                        mode_name(ir, cor->qubit.rail0));
            }
        }
    }

    report.accepted = std::move(live);
    for (const auto &b : report.accepted) {
        report.accepted_probability += b.probability;
    }
    report.total_probability = report.accepted_probability;
    for (const auto &b : report.rejected) {
        report.total_probability += b.probability;
    }
    if (std::abs(report.total_probability - 1.0) > kNormTolerance) {
        throw InvariantViolation("branch probabilities sum to " + format_real(report.total_probability));
    }
    return report;
}

CircuitIR random_circuit(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
    const double pi = std::acos(-1.0);

    CircuitIR ir;
    ir.mode_count = 2 + pick(5);
    if (pick(2) == 0) {
        for (std::size_t m = 0; m < ir.mode_count; ++m) {
            ir.labels.push_back("m" + std::to_string(m) + (pick(2) ? "p" : ""));
        }
    }

    auto random_qubit = [&] {
        double theta = pi * unit(rng);
        double phi = 2 * pi * unit(rng);
        return LogicalAmplitudes{std::cos(theta / 2), std::polar(std::sin(theta / 2), phi)};
    };

    std::vector<std::size_t> free(ir.mode_count);
    for (std::size_t m = 0; m < ir.mode_count; ++m) {
        free[m] = m;
    }
    std::shuffle(free.begin(), free.end(), rng);

    if (pick(3) == 0) {
        // Full-register ket superposition; normalize the generated terms.
        std::size_t n_terms = 1 + pick(3);
        std::vector<PrepareKet> kets;
        std::vector<Occupation> used;
        double total = 0.0;
        for (std::size_t t = 0; t < n_terms; ++t) {
            Occupation k(ir.mode_count);
            for (auto &c : k) {
                c = static_cast<int>(pick(3) == 0 ? pick(3) : 0);
            }
            if (std::find(used.begin(), used.end(), k) != used.end()) {
                continue;
            }
            used.push_back(k);
            Amplitude a = std::polar(0.2 + unit(rng), 2 * pi * unit(rng));
            total += std::norm(a);
            kets.push_back({k, a});
        }
        for (auto &k : kets) {
            k.amp /= std::sqrt(total);
            ir.elements.emplace_back(k);
        }
    } else {
        while (free.size() >= 2 && pick(3) != 0) {
            if (free.size() >= 4 && pick(2) == 0) {
                PrepareBell b{static_cast<BellKind>(pick(4)), {free[0], free[1], free[2], free[3]}};
                free.erase(free.begin(), free.begin() + 4);
                ir.elements.emplace_back(b);
            } else {
                PrepareDualRail d{random_qubit(), {free[0], free[1]}};
                free.erase(free.begin(), free.begin() + 2);
                ir.elements.emplace_back(d);
            }
        }
    }

    std::vector<std::size_t> live(ir.mode_count);
    for (std::size_t m = 0; m < ir.mode_count; ++m) {
        live[m] = m;
    }
    std::vector<std::string> names;
    std::size_t n_ops = 1 + pick(6);
    auto random_condition = [&] {
        Condition c;
        std::size_t ors = 1 + pick(2);
        for (std::size_t i = 0; i < ors; ++i) {
            std::vector<Comparison> all;
            std::size_t ands = 1 + pick(2);
            for (std::size_t j = 0; j < ands; ++j) {
                all.push_back({names[pick(names.size())], static_cast<int>(pick(3))});
            }
            c.any_of.push_back(std::move(all));
        }
        return c;
    };
    for (std::size_t op = 0; op < n_ops && live.size() >= 2; ++op) {
        std::size_t kind = pick(names.empty() ? 2 : 4);
        std::shuffle(live.begin(), live.end(), rng);
        if (kind == 0) {
            ApplyBS bs{live[0], live[1], std::nullopt};
            if (pick(2) == 0) {
                double t = pi * unit(rng), a = 2 * pi * unit(rng), b = 2 * pi * unit(rng), g = 2 * pi * unit(rng);
                Amplitude g_phase = std::polar(1.0, g);
                bs.matrix = ModeUnitary(2, {g_phase * std::polar(std::cos(t), a), g_phase * std::polar(std::sin(t), b),
                                            -g_phase * std::polar(std::sin(t), -b),
                                            g_phase * std::polar(std::cos(t), -a)});
            }
            ir.elements.emplace_back(std::move(bs));
        } else if (kind == 1) {
            std::string name = "d" + std::to_string(names.size());
            ir.elements.emplace_back(Detect{live[0], name});
            names.push_back(name);
            live.erase(live.begin());
        } else if (kind == 2) {
            ir.elements.emplace_back(PostSelect{random_condition()});
        } else {
            ir.elements.emplace_back(Correct{Pauli::Z, {live[0], live[1]}, random_condition()});
        }
    }
    return ir;
}

} // namespace dualrail::circuit
