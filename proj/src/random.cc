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

#include "dualrail/random.h"

#include <cmath>
#include <vector>

namespace dualrail {

LogicalAmplitudes random_qubit(std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    LogicalAmplitudes q{{g(rng), g(rng)}, {g(rng), g(rng)}};
    return normalized(q);
}

ModeUnitary random_unitary(std::size_t dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<std::vector<Amplitude>> cols(dim, std::vector<Amplitude>(dim));
    for (auto &c : cols) {
        for (auto &x : c) {
            x = {g(rng), g(rng)};
        }
    }
    // Modified Gram-Schmidt on the columns.
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            Amplitude proj{};
            for (std::size_t r = 0; r < dim; ++r) {
                proj += std::conj(cols[k][r]) * cols[j][r];
            }
            for (std::size_t r = 0; r < dim; ++r) {
                cols[j][r] -= proj * cols[k][r];
            }
        }
        double n = 0.0;
        for (auto x : cols[j]) {
            n += std::norm(x);
        }
        n = std::sqrt(n);
        for (auto &x : cols[j]) {
            x /= n;
        }
    }
    std::vector<Amplitude> e(dim * dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            e[r * dim + c] = cols[c][r];
        }
    }
    return ModeUnitary(dim, std::move(e));
}

FockState random_state(std::size_t modes, int max_photons, std::size_t max_terms, std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> n_terms(1, max_terms);
    std::uniform_int_distribution<std::size_t> which_mode(0, modes - 1);
    std::uniform_int_distribution<int> photons(0, max_photons);
    std::vector<Term> terms;
    std::size_t count = n_terms(rng);
    for (std::size_t t = 0; t < count; ++t) {
        Occupation ket(modes, 0);
        int n = photons(rng);
        for (int p = 0; p < n; ++p) {
            ++ket[which_mode(rng)];
        }
        terms.emplace_back(std::move(ket), Amplitude{g(rng), g(rng)});
    }
    FockState s = FockState::from_terms(modes, terms);
    if (s.empty()) {
        return FockState::vacuum(modes);
    }
    return s.normalized();
}

} // namespace dualrail
