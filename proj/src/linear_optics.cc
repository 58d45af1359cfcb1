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

#include "dualrail/linear_optics.h"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dualrail {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) {
        f *= i;
    }
    return f;
}

// Expansion of the substituted product. Each listed input mode j with n_j
// photons contributes (sum_k U_kj a+_k)^{n_j} / sqrt(n_j!); the multinomial
// terms are distributed over output modes and collected in `out_counts`.
struct Expansion {
    const ModeUnitary &u;
    const std::vector<int> &in_counts;
    std::vector<int> out_counts;
    Amplitude weight{1.0, 0.0};

    template <typename Emit>
    void input(std::size_t j, Emit &&emit) {
        if (j == in_counts.size()) {
            emit(out_counts, weight);
            return;
        }
        // n_j! cancels against 1/sqrt(n_j!): multinomial n!/prod m! times 1/sqrt(n!)
        Amplitude saved = weight;
        weight *= std::sqrt(factorial(in_counts[j]));
        distribute(j, 0, in_counts[j], emit);
        weight = saved;
    }

    template <typename Emit>
    void distribute(std::size_t j, std::size_t k, int remaining, Emit &&emit) {
        const std::size_t dim = u.dim();
        if (k + 1 == dim) {
            place(j, k, remaining, [&] { input(j + 1, emit); });
            return;
        }
        for (int m = 0; m <= remaining; ++m) {
            place(j, k, m, [&] { distribute(j, k + 1, remaining - m, emit); });
        }
    }

    template <typename Next>
    void place(std::size_t j, std::size_t k, int m, Next &&next) {
        if (m == 0) {
            next();
            return;
        }
        Amplitude entry = u(k, j);
        if (entry == Amplitude{}) {
            return;
        }
        Amplitude saved = weight;
        weight *= std::pow(entry, m) / factorial(m);
        out_counts[k] += m;
        next();
        out_counts[k] -= m;
        weight = saved;
    }
};

} // namespace

ModeUnitary::ModeUnitary(std::size_t dim, std::vector<Amplitude> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (dim_ == 0 || entries_.size() != dim_ * dim_) {
        throw std::invalid_argument("mode unitary needs dim*dim entries with dim > 0");
    }
}

ModeUnitary ModeUnitary::identity(std::size_t dim) {
    std::vector<Amplitude> e(dim * dim);
    for (std::size_t i = 0; i < dim; ++i) {
        e[i * dim + i] = 1.0;
    }
    return ModeUnitary(dim, std::move(e));
}

double ModeUnitary::unitarity_error() const {
    double worst = 0.0;
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            Amplitude acc{};
            for (std::size_t k = 0; k < dim_; ++k) {
                acc += (*this)(r, k) * std::conj((*this)(c, k));
            }
            if (r == c) {
                acc -= 1.0;
            }
            worst = std::max(worst, std::abs(acc));
        }
    }
    return worst;
}

ModeUnitary operator*(const ModeUnitary &a, const ModeUnitary &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("matrix product dimension mismatch");
    }
    const std::size_t n = a.dim();
    std::vector<Amplitude> e(n * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            for (std::size_t k = 0; k < n; ++k) {
                e[r * n + c] += a(r, k) * b(k, c);
            }
        }
    }
    return ModeUnitary(n, std::move(e));
}

ModeUnitary hadamard_bs() {
    const double h = 1.0 / std::sqrt(2.0);
    return ModeUnitary(2, {h, h, -h, h});
}

int photon_count(const Occupation &ket) { return std::accumulate(ket.begin(), ket.end(), 0); }

FockState apply_mode_unitary(const FockState &s, std::span<const std::size_t> modes,
                             const ModeUnitary &u) {
    if (modes.size() != u.dim()) {
        throw std::invalid_argument("unitary of dimension " + std::to_string(u.dim()) + " applied to " +
                                    std::to_string(modes.size()) + " modes");
    }
    for (std::size_t i = 0; i < modes.size(); ++i) {
        if (modes[i] >= s.mode_count()) {
            throw std::invalid_argument("mode index " + std::to_string(modes[i]) + " out of range");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (modes[i] == modes[j]) {
                throw std::invalid_argument("duplicate mode " + std::to_string(modes[i]));
            }
        }
    }
    if (!u.is_unitary()) {
        throw std::invalid_argument("matrix is not unitary (error " + format_real(u.unitarity_error()) + ")");
    }

    FockState out(s.mode_count());
    std::vector<int> in_counts(modes.size());
    for (const auto &[ket, amp] : s.terms()) {
        for (std::size_t j = 0; j < modes.size(); ++j) {
            in_counts[j] = ket[modes[j]];
        }
        Expansion ex{u, in_counts, std::vector<int>(modes.size(), 0)};
        Occupation target = ket;
        ex.input(0, [&](const std::vector<int> &outc, Amplitude w) {
            double norm = 1.0;
            for (std::size_t k = 0; k < outc.size(); ++k) {
                target[modes[k]] = outc[k];
                norm *= factorial(outc[k]);
            }
            out.accumulate(target, amp * w * std::sqrt(norm));
        });
    }
    return out;
}

} // namespace dualrail
