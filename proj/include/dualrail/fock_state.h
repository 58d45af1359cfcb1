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

#include <complex>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dualrail {

using Amplitude = std::complex<double>;

/// Photon count per mode, one entry per mode of the owning state.
using Occupation = std::vector<int>;

using Term = std::pair<Occupation, Amplitude>;

/// Terms whose amplitude modulus falls below this are never stored.
inline constexpr double kPruneTolerance = 1e-14;

/// Tolerance for treating a state as normalized.
inline constexpr double kNormTolerance = 1e-12;

/// Thrown when an operation would leave the single-photon-per-pair
/// subspace it requires.
class LeakageError : public std::runtime_error {
  public:
    LeakageError(const std::string &what, double leaked_weight)
        : std::runtime_error(what), leaked_weight_(leaked_weight) {}
    double leaked_weight() const { return leaked_weight_; }

  private:
    double leaked_weight_;
};

/// Thrown when a simulation result violates an invariant that holds for
/// every valid input (e.g. leakage in an accepted branch).
class InvariantViolation : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/**
 * Sparse multimode bosonic state: a map from occupation vectors to complex
 * amplitudes. Terms are kept in lexicographic ket order, which is also the
 * order of every enumeration and of the canonical text form.
 *
 * A FockState with no terms is the zero vector. It never comes out of
 * make_state, but projections with probability zero produce it.
 */
class FockState {
  public:
    using TermMap = std::map<Occupation, Amplitude>;

    /// Zero vector on `mode_count` modes.
    explicit FockState(std::size_t mode_count = 0) : mode_count_(mode_count) {}

    /// Sums duplicate kets and prunes near-zero amplitudes. Occupation
    /// lengths must equal `mode_count`, counts must be non-negative and
    /// amplitudes finite; may produce the zero vector.
    static FockState from_terms(std::size_t mode_count,
                                const std::vector<Term> &terms);

    /// Single basis ket with amplitude one.
    static FockState basis(const Occupation &ket);

    /// Vacuum on `mode_count` modes (for zero modes: the scalar 1).
    static FockState vacuum(std::size_t mode_count);

    std::size_t mode_count() const { return mode_count_; }
    const TermMap &terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    /// Amplitude of `ket`, zero if absent.
    Amplitude amplitude(const Occupation &ket) const;

    FockState scaled(Amplitude factor) const;
    FockState normalized() const;

    /// Adds `amp` to the coefficient of `ket`, pruning if it cancels.
    void accumulate(const Occupation &ket, Amplitude amp);

    bool operator==(const FockState &) const = default;

  private:
    std::size_t mode_count_;
    TermMap terms_;
};

/// Validated construction: rejects an empty term list, a zero mode count,
/// and any term list that cancels to the zero vector.
FockState make_state(std::size_t mode_count, const std::vector<Term> &terms);

/// Register concatenation: modes of `a` come first.
FockState tensor(const FockState &a, const FockState &b);

double norm_squared(const FockState &s);

/// <a|b>
Amplitude inner_product(const FockState &a, const FockState &b);

/// a + b on the same mode count.
FockState add(const FockState &a, const FockState &b);

/// |<a|b>|^2 / (|a|^2 |b|^2); zero if either is the zero vector.
double fidelity(const FockState &a, const FockState &b);

struct PhaseMatch {
    bool equal = false;
    /// Unit-modulus lambda with a ~ lambda * b.
    Amplitude phase{1.0, 0.0};
};

/// True iff some unit-modulus lambda satisfies ||a - lambda b|| <= tol.
/// lambda is read off the largest-modulus term of `b` that `a` shares.
PhaseMatch equal_up_to_global_phase(const FockState &a, const FockState &b,
                                    double tol);

/// Shortest round-trip decimal for `x`; -0 prints as 0.
std::string format_real(double x);

/// `(re,im)` with format_real components.
std::string format_amplitude(Amplitude a);

/// `|n1,n2,...,nk>`
std::string format_ket(const Occupation &ket);

/// One line per term, `(re,im) |n1,...,nk>`, lexicographic ket order,
/// each line terminated by '\n'. The zero vector renders as "".
std::string to_canonical_text(const FockState &s);

/// Inverse of to_canonical_text.
FockState from_canonical_text(const std::string &text);

} // namespace dualrail
