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
#include <vector>

#include "dualrail/fock_state.h"

namespace dualrail {

inline constexpr double kUnitaryTolerance = 1e-12;

/// Square complex matrix describing a lossless element on k modes.
/// Column j is the input mode, row k the output mode.
class ModeUnitary {
  public:
    ModeUnitary() = default;

    /// Row-major k*k entries. Throws if the count is not a nonzero square.
    ModeUnitary(std::size_t dim, std::vector<Amplitude> entries);

    static ModeUnitary identity(std::size_t dim);

    std::size_t dim() const { return dim_; }
    Amplitude operator()(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }
    const std::vector<Amplitude> &entries() const { return entries_; }

    /// max |(U U^dagger - I)_{rc}|
    double unitarity_error() const;
    bool is_unitary(double tol = kUnitaryTolerance) const { return unitarity_error() <= tol; }

    bool operator==(const ModeUnitary &) const = default;

  private:
    std::size_t dim_ = 0;
    std::vector<Amplitude> entries_;
};

ModeUnitary operator*(const ModeUnitary &a, const ModeUnitary &b);

/// Balanced beam splitter acting as a Hadamard on the single-photon sector:
/// (1/sqrt2) [[1, 1], [-1, 1]]. Not self-inverse.
ModeUnitary hadamard_bs();

/// Applies `u` to the listed modes by substituting each creation operator
/// a+_j -> sum_k U_kj a+_k (j indexes `modes`), with exact factorial
/// normalization. The single-photon sector therefore transforms as c -> U c.
///
/// Throws std::invalid_argument for out-of-range or repeated modes, a
/// dimension mismatch, or a matrix that is not unitary within
/// kUnitaryTolerance.
FockState apply_mode_unitary(const FockState &s, std::span<const std::size_t> modes,
                             const ModeUnitary &u);

inline FockState apply_mode_unitary(const FockState &s, std::initializer_list<std::size_t> modes,
                                    const ModeUnitary &u) {
    return apply_mode_unitary(s, std::span<const std::size_t>(modes.begin(), modes.size()), u);
}

/// Total photon number of a ket.
int photon_count(const Occupation &ket);

} // namespace dualrail
