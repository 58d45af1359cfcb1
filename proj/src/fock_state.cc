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

#include "dualrail/fock_state.h"

#include <charconv>
#include <cmath>
#include <sstream>

namespace dualrail {

namespace {

void check_ket(std::size_t mode_count, const Occupation &ket) {
    if (ket.size() != mode_count) {
        throw std::invalid_argument("occupation vector " + format_ket(ket) +
                                    " has length " + std::to_string(ket.size()) +
                                    ", expected " + std::to_string(mode_count));
    }
    for (int n : ket) {
        if (n < 0) {
            throw std::invalid_argument("negative photon count in " + format_ket(ket));
        }
    }
}

bool is_finite(Amplitude a) { return std::isfinite(a.real()) && std::isfinite(a.imag()); }

} // namespace

FockState FockState::from_terms(std::size_t mode_count, const std::vector<Term> &terms) {
    FockState s(mode_count);
    for (const auto &[ket, amp] : terms) {
        check_ket(mode_count, ket);
        if (!is_finite(amp)) {
            throw std::invalid_argument("non-finite amplitude on " + format_ket(ket));
        }
        s.terms_[ket] += amp;
    }
    std::erase_if(s.terms_, [](const auto &kv) { return std::abs(kv.second) < kPruneTolerance; });
    return s;
}

FockState FockState::basis(const Occupation &ket) {
    FockState s(ket.size());
    check_ket(ket.size(), ket);
    s.terms_.emplace(ket, Amplitude{1.0, 0.0});
    return s;
}

FockState FockState::vacuum(std::size_t mode_count) {
    return basis(Occupation(mode_count, 0));
}

Amplitude FockState::amplitude(const Occupation &ket) const {
    auto it = terms_.find(ket);
    return it == terms_.end() ? Amplitude{} : it->second;
}

FockState FockState::scaled(Amplitude factor) const {
    FockState out(mode_count_);
    for (const auto &[ket, amp] : terms_) {
        out.accumulate(ket, amp * factor);
    }
    return out;
}

FockState FockState::normalized() const {
    double n2 = norm_squared(*this);
    if (n2 == 0.0) {
        throw std::invalid_argument("cannot normalize the zero vector");
    }
    return scaled(1.0 / std::sqrt(n2));
}

void FockState::accumulate(const Occupation &ket, Amplitude amp) {
    auto [it, inserted] = terms_.try_emplace(ket, amp);
    if (!inserted) {
        it->second += amp;
    }
    if (std::abs(it->second) < kPruneTolerance) {
        terms_.erase(it);
    }
}

FockState make_state(std::size_t mode_count, const std::vector<Term> &terms) {
    if (mode_count == 0) {
        throw std::invalid_argument("mode count must be positive");
    }
    if (terms.empty()) {
        throw std::invalid_argument("a state needs at least one term");
    }
    FockState s = FockState::from_terms(mode_count, terms);
    if (s.empty()) {
        throw std::invalid_argument("terms cancel to the zero vector");
    }
    return s;
}

FockState tensor(const FockState &a, const FockState &b) {
    FockState out(a.mode_count() + b.mode_count());
    for (const auto &[ka, va] : a.terms()) {
        for (const auto &[kb, vb] : b.terms()) {
            Occupation ket = ka;
            ket.insert(ket.end(), kb.begin(), kb.end());
            out.accumulate(ket, va * vb);
        }
    }
    return out;
}

double norm_squared(const FockState &s) {
    double total = 0.0;
    for (const auto &[ket, amp] : s.terms()) {
        total += std::norm(amp);
    }
    return total;
}

Amplitude inner_product(const FockState &a, const FockState &b) {
    if (a.mode_count() != b.mode_count()) {
        throw std::invalid_argument("inner product of states with different mode counts");
    }
    Amplitude total{};
    for (const auto &[ket, amp] : a.terms()) {
        auto it = b.terms().find(ket);
        if (it != b.terms().end()) {
            total += std::conj(amp) * it->second;
        }
    }
    return total;
}

FockState add(const FockState &a, const FockState &b) {
    if (a.mode_count() != b.mode_count()) {
        throw std::invalid_argument("sum of states with different mode counts");
    }
    FockState out = a;
    for (const auto &[ket, amp] : b.terms()) {
        out.accumulate(ket, amp);
    }
    return out;
}

double fidelity(const FockState &a, const FockState &b) {
    double na = norm_squared(a);
    double nb = norm_squared(b);
    if (na == 0.0 || nb == 0.0) {
        return 0.0;
    }
    return std::norm(inner_product(a, b)) / (na * nb);
}

PhaseMatch equal_up_to_global_phase(const FockState &a, const FockState &b, double tol) {
    PhaseMatch result;
    if (a.mode_count() != b.mode_count()) {
        return result;
    }
    const FockState::TermMap::value_type *anchor = nullptr;
    double best = -1.0;
    for (const auto &term : b.terms()) {
        double mod = std::abs(term.second);
        if (mod > best && a.terms().contains(term.first)) {
            best = mod;
            anchor = &term;
        }
    }
    if (anchor != nullptr) {
        Amplitude ratio = a.amplitude(anchor->first) / anchor->second;
        result.phase = ratio / std::abs(ratio);
    } else if (!(a.empty() && b.empty())) {
        return result;
    }
    FockState diff = add(a, b.scaled(-result.phase));
    result.equal = std::sqrt(norm_squared(diff)) <= tol;
    return result;
}

std::string format_real(double x) {
    if (x == 0.0) {
        x = 0.0;
    }
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, end);
}

std::string format_amplitude(Amplitude a) {
    return "(" + format_real(a.real()) + "," + format_real(a.imag()) + ")";
}

std::string format_ket(const Occupation &ket) {
    std::string out = "|";
    for (std::size_t i = 0; i < ket.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += std::to_string(ket[i]);
    }
    return out + ">";
}

std::string to_canonical_text(const FockState &s) {
    std::string out;
    for (const auto &[ket, amp] : s.terms()) {
        out += format_amplitude(amp);
        out += ' ';
        out += format_ket(ket);
        out += '\n';
    }
    return out;
}

FockState from_canonical_text(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    std::vector<Term> terms;
    std::size_t modes = 0;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        double re = 0.0, im = 0.0;
        auto open = line.find('(');
        auto comma = line.find(',', open);
        auto close = line.find(')', comma);
        auto bar = line.find('|', close);
        auto gt = line.find('>', bar);
        if (open != 0 || comma == std::string::npos || close == std::string::npos ||
            bar == std::string::npos || gt == std::string::npos) {
            throw std::invalid_argument("malformed state line: " + line);
        }
        auto parse = [&](std::size_t from, std::size_t to, double &v) {
            auto [p, ec] = std::from_chars(line.data() + from, line.data() + to, v);
            if (ec != std::errc() || p != line.data() + to) {
                throw std::invalid_argument("malformed number in: " + line);
            }
        };
        parse(open + 1, comma, re);
        parse(comma + 1, close, im);
        Occupation ket;
        std::string counts = line.substr(bar + 1, gt - bar - 1);
        std::istringstream cs(counts);
        std::string tok;
        while (std::getline(cs, tok, ',')) {
            ket.push_back(std::stoi(tok));
        }
        if (first) {
            modes = ket.size();
            first = false;
        }
        terms.emplace_back(std::move(ket), Amplitude{re, im});
    }
    return FockState::from_terms(modes, terms);
}

} // namespace dualrail
