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

#include "cli.h"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "dualrail/circuit.h"
#include "dualrail/linear_optics.h"
#include "dualrail/measurement.h"
#include "dualrail/protocols.h"
#include "dualrail/random.h"

namespace dualrail::cli {

namespace {

using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double parse_real(const std::string &text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception &) {
        throw UsageError("malformed number '" + text + "'");
    }
    if (used != text.size() || !std::isfinite(v)) {
        throw UsageError("malformed number '" + text + "'");
    }
    return v;
}

std::vector<std::string> split(const std::string &text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep)) {
        parts.push_back(cur);
    }
    if (!text.empty() && text.back() == sep) {
        parts.emplace_back();
    }
    return parts;
}

Amplitude parse_complex(const std::string &text) {
    auto parts = split(text, ',');
    if (parts.size() != 2) {
        throw UsageError("expected re,im but got '" + text + "'");
    }
    return {parse_real(parts[0]), parse_real(parts[1])};
}

// "re,im re,im" -> (a0, a1), not yet normalized.
LogicalAmplitudes parse_pair(const std::string &text) {
    std::istringstream in(text);
    std::vector<std::string> words;
    for (std::string w; in >> w;) {
        words.push_back(w);
    }
    if (words.size() != 2) {
        throw UsageError("expected two complex amplitudes 're,im re,im' but got '" + text + "'");
    }
    return {parse_complex(words[0]), parse_complex(words[1])};
}

LogicalAmplitudes parse_bloch(const std::string &text) {
    auto parts = split(text, ',');
    if (parts.size() != 2) {
        throw UsageError("expected theta,phi but got '" + text + "'");
    }
    double theta = parse_real(parts[0]);
    double phi = parse_real(parts[1]);
    return {std::cos(theta / 2), std::polar(std::sin(theta / 2), phi)};
}

LogicalAmplitudes checked(const LogicalAmplitudes &q, const std::string &what, std::ostream &err) {
    double n2 = q.norm_squared();
    if (n2 == 0.0) {
        throw UsageError(what + " amplitudes are zero");
    }
    double dev = std::abs(std::sqrt(n2) - 1.0);
    if (dev > 1e-6) {
        throw UsageError(what + " amplitudes have norm " + format_real(std::sqrt(n2)) + ", expected 1");
    }
    if (dev > 1e-12) {
        err << "warning: " << what << " renormalized (norm deviation " << format_real(dev) << ")\n";
    }
    return normalized(q);
}

// Resolves one qubit from either its amplitude or its Bloch option.
LogicalAmplitudes qubit_input(const std::string &pair, const std::string &bloch, const LogicalAmplitudes &fallback,
                              const std::string &what, std::ostream &err) {
    if (!pair.empty() && !bloch.empty()) {
        throw UsageError("--" + what + " and --" + what + "-bloch are exclusive");
    }
    if (!bloch.empty()) {
        return checked(parse_bloch(bloch), what, err);
    }
    if (!pair.empty()) {
        return checked(parse_pair(pair), what, err);
    }
    return fallback;
}

AcceptPolicy parse_policy(const std::string &p) {
    if (p == "strict") {
        return AcceptPolicy::Strict;
    }
    if (p == "feedforward") {
        return AcceptPolicy::FeedForward;
    }
    throw UsageError("unknown policy '" + p + "' (strict|feedforward)");
}

Json complex_json(Amplitude a) { return Json::array({a.real(), a.imag()}); }

Json amplitudes_json(const std::vector<Amplitude> &v) {
    Json out = Json::array();
    for (auto a : v) {
        out.push_back(complex_json(a));
    }
    return out;
}

Json qubit_json(const LogicalAmplitudes &q) { return amplitudes_json({q.a0, q.a1}); }

Json residual_json(const FockState &s) {
    Json lines = Json::array();
    std::istringstream in(to_canonical_text(s));
    for (std::string line; std::getline(in, line);) {
        lines.push_back(line);
    }
    return lines;
}

Json labels_json(const std::vector<std::size_t> &map, const std::vector<std::string> &labels) {
    Json out = Json::array();
    for (auto m : map) {
        out.push_back(labels.at(m));
    }
    return out;
}

Json optional_number(const std::optional<double> &v) { return v ? Json(*v) : Json(nullptr); }

Json gate_report(const std::string &command, const std::vector<std::string> &args, AcceptPolicy policy,
                 Json inputs, const GateRunResult &r) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    j["argv"] = args;
    j["policy"] = to_string(policy);
    j["inputs"] = std::move(inputs);
    j["mode_labels"] = r.mode_labels;
    Json branches = Json::array();
    double total = 0.0;
    for (const auto &b : r.branches) {
        Json pattern = Json::object();
        for (std::size_t k = 0; k < b.detector_names.size(); ++k) {
            pattern[b.detector_names[k]] = b.branch.pattern.requirements.at(b.detector_modes.at(k));
        }
        Json row;
        row["pattern"] = std::move(pattern);
        row["probability"] = b.branch.probability;
        row["accepted"] = b.accepted;
        row["corrections"] = b.corrections;
        row["residual_modes"] = labels_json(b.branch.mode_map, r.mode_labels);
        row["residual"] = residual_json(b.branch.residual);
        row["logical"] = b.logical.empty() ? Json(nullptr) : amplitudes_json(b.logical);
        row["leakage"] = b.leakage;
        row["fidelity"] = optional_number(b.fidelity);
        branches.push_back(std::move(row));
        total += b.branch.probability;
    }
    j["branches"] = std::move(branches);
    j["accepted_probability"] = r.accepted_probability;
    j["total_probability"] = total;
    Json output;
    output["qubits"] = r.output_qubits;
    output["modes"] = r.output_modes;
    output["amplitudes"] = amplitudes_json(r.output_logical);
    output["reference"] = amplitudes_json(r.reference);
    output["fidelity"] = optional_number(r.fidelity_vs_reference);
    j["output"] = std::move(output);
    return j;
}

Json run_report(const std::vector<std::string> &args, const std::string &path, const circuit::RunReport &r) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "run";
    j["argv"] = args;
    j["file"] = path;
    j["mode_labels"] = r.mode_labels;
    Json branches = Json::array();
    auto add = [&](const circuit::RunBranch &b, bool accepted) {
        Json outcomes = Json::object();
        for (const auto &[name, v] : b.outcomes) {
            outcomes[name] = v;
        }
        Json row;
        row["outcomes"] = std::move(outcomes);
        row["probability"] = b.probability;
        row["accepted"] = accepted;
        row["corrections"] = b.corrections;
        row["residual_modes"] = labels_json(b.mode_map, r.mode_labels);
        row["residual"] = residual_json(b.residual);
        branches.push_back(std::move(row));
    };
    for (const auto &b : r.accepted) {
        add(b, true);
    }
    for (const auto &b : r.rejected) {
        add(b, false);
    }
    j["branches"] = std::move(branches);
    j["accepted_probability"] = r.accepted_probability;
    j["total_probability"] = r.total_probability;
    return j;
}

// --- table rendering, driven by the JSON object so both modes agree --------

std::string num(const Json &v) { return v.is_null() ? "-" : format_real(v.get<double>()); }

std::string cplx(const Json &v) { return "(" + num(v[0]) + "," + num(v[1]) + ")"; }

std::string cplx_list(const Json &v) {
    if (v.is_null()) {
        return "-";
    }
    std::string s;
    for (const auto &a : v) {
        s += (s.empty() ? "" : " ") + cplx(a);
    }
    return s;
}

std::string joined(const Json &v, const std::string &sep) {
    std::string s;
    for (const auto &x : v) {
        s += (s.empty() ? "" : sep) + x.get<std::string>();
    }
    return s;
}

std::string outcome_text(const Json &obj) {
    std::string s;
    for (const auto &[k, v] : obj.items()) {
        s += (s.empty() ? "" : " ") + k + "=" + std::to_string(v.get<int>());
    }
    return s.empty() ? "-" : s;
}

void print_table(const Json &j, std::ostream &out) {
    out << "command: " << j["command"].get<std::string>() << "\n";
    if (j.contains("policy")) {
        out << "policy: " << j["policy"].get<std::string>() << "\n";
    }
    if (j.contains("file")) {
        out << "file: " << j["file"].get<std::string>() << "\n";
    }
    if (j.contains("inputs")) {
        for (const auto &[k, v] : j["inputs"].items()) {
            out << "input " << k << ": " << (v.is_array() ? cplx_list(v) : v.dump()) << "\n";
        }
    }
    out << "modes: " << joined(j["mode_labels"], " ") << "\n\n";
    const bool gate = j.contains("output");
    out << std::left << std::setw(28) << (gate ? "pattern" : "outcomes") << std::setw(24) << "probability"
        << std::setw(10) << "accepted"
        << "corrections\n";
    for (const auto &b : j["branches"]) {
        out << std::setw(28) << outcome_text(gate ? b["pattern"] : b["outcomes"]) << std::setw(24)
            << num(b["probability"]) << std::setw(10) << (b["accepted"].get<bool>() ? "yes" : "no")
            << (b["corrections"].empty() ? "-" : joined(b["corrections"], ", ")) << "\n";
        if (b["accepted"].get<bool>() && !b["residual"].empty()) {
            out << "    residual on " << joined(b["residual_modes"], " ") << ":\n";
            for (const auto &line : b["residual"]) {
                out << "      " << line.get<std::string>() << "\n";
            }
            if (b.contains("logical") && !b["logical"].is_null()) {
                out << "    logical: " << cplx_list(b["logical"]) << "  fidelity: " << num(b["fidelity"]) << "\n";
            }
        }
    }
    out << "\naccepted probability: " << num(j["accepted_probability"]) << "\n";
    out << "total probability: " << num(j["total_probability"]) << "\n";
    if (gate) {
        const Json &o = j["output"];
        out << "output qubits: " << joined(o["qubits"], " ") << " on modes " << joined(o["modes"], " ") << "\n";
        out << "output: " << cplx_list(o["amplitudes"]) << "\n";
        out << "reference: " << cplx_list(o["reference"]) << "\n";
        out << "fidelity: " << num(o["fidelity"]) << "\n";
    }
    out << "duration ms: " << num(j["duration_ms"]) << "\n";
}

void emit(Json j, bool json, std::chrono::steady_clock::time_point start, std::ostream &out) {
    j["duration_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (json) {
        out << j.dump(2) << "\n";
    } else {
        print_table(j, out);
    }
}

// --- verify ------------------------------------------------------------------

struct CheckResult {
    bool passed = true;
    double worst = 0.0;
    std::string note;

    void expect_near(double got, double want, double tol) {
        double d = std::abs(got - want);
        worst = std::max(worst, d);
        passed = passed && d <= tol;
    }
    void expect(bool ok, const std::string &why) {
        if (!ok && passed) {
            note = why;
        }
        passed = passed && ok;
    }
};

constexpr double kTol = 1e-12;

CheckResult check_destructive(std::mt19937_64 &rng, int samples, AcceptPolicy policy) {
    CheckResult c;
    const double want = policy == AcceptPolicy::Strict ? 0.25 : 0.5;
    for (int s = 0; s < samples; ++s) {
        LogicalAmplitudes control = (rng() & 1U) ? LogicalAmplitudes{0.0, 1.0} : LogicalAmplitudes{1.0, 0.0};
        LogicalAmplitudes target = random_qubit(rng);
        GateRunResult r = run_destructive_csign(control, target, policy);
        c.expect_near(r.accepted_probability, want, kTol);
        c.expect(r.fidelity_vs_reference.has_value(), "no accepted output");
        c.expect_near(r.fidelity_vs_reference.value_or(0.0), 1.0, kTol);
    }
    return c;
}

CheckResult check_detector_mapping(std::mt19937_64 &rng, int samples) {
    CheckResult c;
    for (int s = 0; s < samples; ++s) {
        LogicalAmplitudes control = (rng() & 1U) ? LogicalAmplitudes{0.0, 1.0} : LogicalAmplitudes{1.0, 0.0};
        GateRunResult r = run_destructive_csign(control, random_qubit(rng), AcceptPolicy::Strict);
        double other = 0.0;
        for (const auto &b : r.branches) {
            const auto &req = b.branch.pattern.requirements;
            int d1 = req.at(destructive_modes::kD1);
            int d2 = req.at(destructive_modes::kD2);
            c.expect(b.accepted == (d1 == 1 && d2 == 0), "accepted pattern is not D1=1 D2=0");
            if (d1 + d2 != 1) {
                other += b.branch.probability;
            }
        }
        c.expect_near(other, 0.5, kTol);
    }
    return c;
}

CheckResult check_encoder(std::mt19937_64 &rng, int samples) {
    CheckResult c;
    for (int s = 0; s < samples; ++s) {
        LogicalAmplitudes in = random_qubit(rng);
        for (int n : {2, 3, 4}) {
            GateRunResult r = run_quantum_encoder(in, n, AcceptPolicy::Strict);
            c.expect_near(r.accepted_probability, 0.25, kTol);
            c.expect_near(r.fidelity_vs_reference.value_or(0.0), 1.0, kTol);
        }
        GateRunResult ff = run_quantum_encoder(in, 2, AcceptPolicy::FeedForward);
        c.expect_near(ff.accepted_probability, 0.5, kTol);
        c.expect_near(ff.fidelity_vs_reference.value_or(0.0), 1.0, kTol);
    }
    return c;
}

CheckResult check_nondestructive(std::mt19937_64 &rng, int samples) {
    CheckResult c;
    for (int s = 0; s < samples; ++s) {
        LogicalAmplitudes control = random_qubit(rng);
        LogicalAmplitudes target = random_qubit(rng);
        GateRunResult r = run_nondestructive_csign(control, target, AcceptPolicy::FeedForward);
        c.expect_near(r.accepted_probability, 0.25, kTol);
        c.expect_near(r.fidelity_vs_reference.value_or(0.0), 1.0, kTol);
    }
    GateRunResult strict = run_nondestructive_csign(random_qubit(rng), random_qubit(rng), AcceptPolicy::Strict);
    c.expect_near(strict.accepted_probability, 0.0625, kTol);
    // Basis inputs: sign pattern (+,+,+,-).
    const LogicalAmplitudes basis[2] = {{1.0, 0.0}, {0.0, 1.0}};
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            GateRunResult r = run_nondestructive_csign(basis[a], basis[b], AcceptPolicy::FeedForward);
            std::size_t idx = static_cast<std::size_t>(2 * a + b);
            double sign = (a == 1 && b == 1) ? -1.0 : 1.0;
            c.expect_near(r.output_logical.at(idx).real(), sign, kTol);
        }
    }
    return c;
}

CheckResult check_teleport(std::mt19937_64 &rng, int samples) {
    CheckResult c;
    std::vector<TeleportRow> rows = teleport_gate_table({1.0, 0.0, 0.0, 0.0});
    for (int s = 0; s < samples; ++s) {
        LogicalAmplitudes in = random_qubit(rng);
        std::vector<LogicalAmplitudes> outs = teleport_outputs(rows, in);
        for (std::size_t k = 0; k < rows.size(); ++k) {
            c.expect_near(outs[k].norm_squared(), 0.25, kTol);
            // Undo the induced operator and compare with the input.
            std::vector<Amplitude> back = rows[k].op.adjoint() * std::vector<Amplitude>{outs[k].a0, outs[k].a1};
            Amplitude overlap = std::conj(in.a0) * back[0] + std::conj(in.a1) * back[1];
            double norm2 = std::norm(back[0]) + std::norm(back[1]);
            c.expect_near(std::norm(overlap) / norm2, 1.0, kTol);
        }
    }
    return c;
}

CheckResult check_invariants(std::mt19937_64 &rng, int samples) {
    CheckResult c;
    std::uniform_int_distribution<std::size_t> mode_count(2, 6);
    for (int s = 0; s < samples; ++s) {
        std::size_t modes = mode_count(rng);
        FockState st = random_state(modes, 3, 4, rng);
        std::vector<std::size_t> order(modes);
        for (std::size_t m = 0; m < modes; ++m) {
            order[m] = m;
        }
        std::shuffle(order.begin(), order.end(), rng);
        std::size_t k = std::uniform_int_distribution<std::size_t>(1, modes)(rng);
        std::vector<std::size_t> chosen(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
        FockState out = apply_mode_unitary(st, chosen, random_unitary(k, rng));
        c.expect_near(norm_squared(out), 1.0, kTol);
        std::map<int, double> before, after;
        for (const auto &[ket, a] : st.terms()) {
            before[photon_count(ket)] += std::norm(a);
        }
        for (const auto &[ket, a] : out.terms()) {
            after[photon_count(ket)] += std::norm(a);
        }
        for (const auto &[n, w] : before) {
            c.expect_near(after[n], w, kTol);
        }
        for (const auto &[n, w] : after) {
            c.expect_near(before[n], w, kTol);
        }
        std::size_t det = std::uniform_int_distribution<std::size_t>(1, modes)(rng);
        std::vector<std::size_t> detectors(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(det));
        std::sort(detectors.begin(), detectors.end());
        double total = 0.0;
        for (const auto &b : outcome_distribution(out, detectors)) {
            total += b.probability;
        }
        c.expect_near(total, 1.0, kTol);
    }
    FockState hom = apply_mode_unitary(FockState::basis({1, 1}), {0, 1}, hadamard_bs());
    double coincidence = std::abs(hom.amplitude({1, 1}));
    c.worst = std::max(c.worst, coincidence);
    c.expect(coincidence <= 1e-14, "Hong-Ou-Mandel coincidence amplitude is nonzero");
    return c;
}

CheckResult check_round_trip(std::mt19937_64 &rng, int samples) {
    CheckResult c;
    for (int s = 0; s < samples; ++s) {
        circuit::CircuitIR ir = circuit::random_circuit(rng);
        std::string text = circuit::format(ir);
        circuit::CircuitIR back = circuit::parse(text);
        c.expect(back == ir, "parse(format(ir)) != ir for:\n" + text);
        c.expect(circuit::format(back) == text, "format is not idempotent");
    }
    return c;
}

int cmd_verify(std::uint64_t seed, int samples, std::ostream &out) {
    if (samples <= 0) {
        throw UsageError("--samples must be positive");
    }
    struct Named {
        std::string name;
        std::function<CheckResult(std::mt19937_64 &)> run;
    };
    const std::vector<Named> checks = {
        {"destructive-strict", [&](auto &rng) { return check_destructive(rng, samples, AcceptPolicy::Strict); }},
        {"destructive-feedforward",
         [&](auto &rng) { return check_destructive(rng, samples, AcceptPolicy::FeedForward); }},
        {"detector-mapping", [&](auto &rng) { return check_detector_mapping(rng, samples); }},
        {"encoder", [&](auto &rng) { return check_encoder(rng, samples); }},
        {"nondestructive", [&](auto &rng) { return check_nondestructive(rng, samples); }},
        {"teleport-table", [&](auto &rng) { return check_teleport(rng, samples); }},
        {"optics-invariants", [&](auto &rng) { return check_invariants(rng, samples); }},
        {"circuit-round-trip", [&](auto &rng) { return check_round_trip(rng, samples); }},
    };
    out << "verify seed=" << seed << " samples=" << samples << "\n";
    bool all = true;
    std::mt19937_64 rng(seed);
    for (const auto &check : checks) {
        CheckResult r;
        try {
            r = check.run(rng);
        } catch (const std::exception &e) {
            r.passed = false;
            r.note = e.what();
        }
        all = all && r.passed;
        out << (r.passed ? "PASS " : "FAIL ") << check.name << " worst_deviation=" << format_real(r.worst);
        if (!r.note.empty()) {
            out << " (" << r.note << ")";
        }
        out << "\n";
    }
    CoefficientComparison cmp = verify_a_matrix();
    out << "\n" << cmp.report;
    if (!cmp.report.empty() && cmp.report.back() != '\n') {
        out << "\n";
    }
    out << "\n" << (all ? "all checks passed" : "some checks FAILED") << "\n";
    return all ? kExitOk : kExitInvariant;
}

std::vector<char *> c_argv(std::vector<std::string> &args) {
    std::vector<char *> v;
    for (auto &a : args) {
        v.push_back(a.data());
    }
    return v;
}

} // namespace

int run(const std::vector<std::string> &args_in, std::ostream &out, std::ostream &err) {
    CLI::App app{"Dual-rail linear-optics simulator: heralded conditional sign flip gates"};
    app.require_subcommand(1);

    std::string control, target, control_bloch, target_bloch, input, input_bloch, policy = "strict", file;
    bool json = false;
    int copies = 2;
    std::uint64_t seed = 1;
    int samples = 100;

    auto gate_options = [&](CLI::App *sub, bool with_control) {
        if (with_control) {
            sub->add_option("--control", control, "control amplitudes 're,im re,im' for |0>,|1>");
            sub->add_option("--control-bloch", control_bloch, "control as theta,phi");
            sub->add_option("--target", target, "target amplitudes 're,im re,im'");
            sub->add_option("--target-bloch", target_bloch, "target as theta,phi");
        }
        sub->add_option("--policy", policy, "strict or feedforward")->capture_default_str();
        sub->add_flag("--json", json, "print the JSON report");
    };
    CLI::App *destructive = app.add_subcommand("csign-destructive", "destructive conditional sign flip");
    gate_options(destructive, true);
    CLI::App *nondestructive = app.add_subcommand("csign-nondestructive", "encoder + destructive gate");
    gate_options(nondestructive, true);
    CLI::App *encoder = app.add_subcommand("encoder", "quantum parity encoder");
    encoder->add_option("--input", input, "input amplitudes 're,im re,im'");
    encoder->add_option("--input-bloch", input_bloch, "input as theta,phi");
    encoder->add_option("--n", copies, "number of output copies (2..12)")->capture_default_str();
    gate_options(encoder, false);
    CLI::App *run_cmd = app.add_subcommand("run", "execute a .loc circuit file");
    run_cmd->add_option("file", file, "circuit file")->required();
    run_cmd->add_flag("--json", json, "print the JSON report");
    CLI::App *verify = app.add_subcommand("verify", "run the invariant suite");
    verify->add_option("--seed", seed, "random seed")->capture_default_str();
    verify->add_option("--samples", samples, "samples per check")->capture_default_str();

    std::vector<std::string> args = args_in;
    std::vector<char *> argv = c_argv(args);
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        const double h = 1.0 / std::sqrt(2.0);
        if (*destructive) {
            LogicalAmplitudes c = qubit_input(control, control_bloch, {0.0, 1.0}, "control", err);
            LogicalAmplitudes t = qubit_input(target, target_bloch, {h, h}, "target", err);
            AcceptPolicy p = parse_policy(policy);
            GateRunResult r = run_destructive_csign(c, t, p);
            emit(gate_report("csign-destructive", args_in, p, Json{{"control", qubit_json(c)}, {"target", qubit_json(t)}},
                             r),
                 json, start, out);
        } else if (*nondestructive) {
            LogicalAmplitudes c = qubit_input(control, control_bloch, {0.6, 0.8}, "control", err);
            LogicalAmplitudes t = qubit_input(target, target_bloch, {0.8, Amplitude{0.0, 0.6}}, "target", err);
            AcceptPolicy p = parse_policy(policy);
            GateRunResult r = run_nondestructive_csign(c, t, p);
            emit(gate_report("csign-nondestructive", args_in, p,
                             Json{{"control", qubit_json(c)}, {"target", qubit_json(t)}}, r),
                 json, start, out);
        } else if (*encoder) {
            LogicalAmplitudes in = qubit_input(input, input_bloch, {h, h}, "input", err);
            AcceptPolicy p = parse_policy(policy);
            if (copies < 2 || copies > 12) {
                throw UsageError("--n must be between 2 and 12");
            }
            GateRunResult r = run_quantum_encoder(in, copies, p);
            emit(gate_report("encoder", args_in, p, Json{{"input", qubit_json(in)}, {"n", copies}}, r), json, start,
                 out);
        } else if (*run_cmd) {
            std::ifstream f(file, std::ios::binary);
            if (!f) {
                err << "error: cannot open '" << file << "'\n";
                return kExitUsage;
            }
            std::stringstream buf;
            buf << f.rdbuf();
            circuit::CircuitIR ir = circuit::parse(buf.str());
            emit(run_report(args_in, file, circuit::execute(ir)), json, start, out);
        } else if (*verify) {
            return cmd_verify(seed, samples, out);
        }
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const circuit::ParseError &e) {
        err << file << ":" << e.line() << ":" << e.column() << ": "
            << (e.kind() == circuit::ParseError::Kind::Syntax ? "syntax" : "semantic") << " error: " << e.message()
            << "\n";
        return kExitParse;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInvariant;
    }
    return kExitOk;
}

} // namespace dualrail::cli
