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
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dualrail/dual_rail.h"
#include "dualrail/fock_state.h"
#include "dualrail/linear_optics.h"

namespace dualrail::circuit {

/// Error in a `.loc` source. `line` and `column` are 1-based and always
/// point into the source text.
class ParseError : public std::runtime_error {
  public:
    enum class Kind { Syntax, Semantic };

    ParseError(Kind kind, std::size_t line, std::size_t column, std::string message, std::string token);

    Kind kind() const { return kind_; }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    const std::string &message() const { return message_; }
    const std::string &token() const { return token_; }

  private:
    Kind kind_;
    std::size_t line_;
    std::size_t column_;
    std::string message_;
    std::string token_;
};

struct Comparison {
    std::string name;
    int value = 0;
    bool operator==(const Comparison &) const = default;
};

/// Disjunction of conjunctions of `name == value`.
struct Condition {
    std::vector<std::vector<Comparison>> any_of;

    bool operator==(const Condition &) const = default;
};

// Mode indices below are zero-based.

/// One term of the full-register initial state; all ket terms are summed.
struct PrepareKet {
    Occupation ket;
    Amplitude amp{1.0, 0.0};
    bool operator==(const PrepareKet &) const = default;
};

struct PrepareDualRail {
    LogicalAmplitudes q;
    DualRailQubit qubit;
    bool operator==(const PrepareDualRail &) const = default;
};

/// Logical Bell state; qubit a on (modes[0] rail1, modes[1] rail0),
/// qubit b on (modes[2], modes[3]).
struct PrepareBell {
    BellKind kind;
    std::array<std::size_t, 4> modes;
    bool operator==(const PrepareBell &) const = default;
};

/// `matrix` empty means the Hadamard beam splitter.
struct ApplyBS {
    std::size_t m1;
    std::size_t m2;
    std::optional<ModeUnitary> matrix;
    bool operator==(const ApplyBS &) const = default;
};

struct Detect {
    std::size_t mode;
    std::string name;
    bool operator==(const Detect &) const = default;
};

struct PostSelect {
    Condition condition;
    bool operator==(const PostSelect &) const = default;
};

struct Correct {
    Pauli pauli = Pauli::Z;
    DualRailQubit qubit;
    Condition condition;
    bool operator==(const Correct &) const = default;
};

using Element = std::variant<PrepareKet, PrepareDualRail, PrepareBell, ApplyBS, Detect, PostSelect, Correct>;

struct CircuitIR {
    std::size_t mode_count = 0;
    /// Empty, or one name per mode.
    std::vector<std::string> labels;
    std::vector<Element> elements;

    bool operator==(const CircuitIR &) const = default;
};

/// Parses and validates a `.loc` program. Throws ParseError.
CircuitIR parse(const std::string &source);

/// Canonical rendering; comments are not preserved.
std::string format(const CircuitIR &ir);

struct RunBranch {
    /// Outcome variables in detection order.
    std::vector<std::pair<std::string, int>> outcomes;
    double probability = 0.0;
    /// Normalized state of the undetected modes.
    FockState residual;
    /// Original index of each residual mode.
    std::vector<std::size_t> mode_map;
    std::vector<std::string> corrections;

    std::optional<int> outcome(const std::string &name) const;
};

struct RunReport {
    std::vector<std::string> mode_labels;
    /// Branches that pass every postselect, deterministic order.
    std::vector<RunBranch> accepted;
    std::vector<RunBranch> rejected;
    double accepted_probability = 0.0;
    /// Accepted plus rejected; one up to rounding.
    double total_probability = 0.0;
};

/// Runs the circuit over every detector outcome with nonzero probability.
/// Throws InvariantViolation if branch probabilities do not sum to one.
RunReport execute(const CircuitIR &ir);

/// Random valid program, used for round-trip checks.
CircuitIR random_circuit(std::mt19937_64 &rng);

/// Label of mode `index`: the declared label, else the 1-based number.
std::string mode_name(const CircuitIR &ir, std::size_t index);

} // namespace dualrail::circuit
