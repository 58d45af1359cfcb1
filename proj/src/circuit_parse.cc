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
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "dualrail/circuit.h"

namespace dualrail::circuit {

ParseError::ParseError(Kind kind, std::size_t line, std::size_t column, std::string message, std::string token)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message +
                         (token.empty() ? std::string() : " (at '" + token + "')")),
      kind_(kind), line_(line), column_(column), message_(std::move(message)), token_(std::move(token)) {}

namespace {

struct Token {
    enum class Kind { Word, Ket, Eq, And, Or, End };
    Kind kind;
    std::string text;
    std::size_t column; // 1-based
};

std::vector<Token> lex(const std::string &line, std::size_t line_no) {
    std::vector<Token> out;
    std::size_t i = 0;
    const std::size_t n = line.size();
    auto is_op_start = [&](std::size_t k) {
        if (k + 1 >= n) {
            return line[k] == '|';
        }
        std::string two = line.substr(k, 2);
        return two == "==" || two == "&&" || two == "||" || line[k] == '|';
    };
    while (i < n) {
        char c = line[i];
        if (c == '#') {
            break;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t col = i + 1;
        std::string two = i + 1 < n ? line.substr(i, 2) : std::string();
        if (two == "==") {
            out.push_back({Token::Kind::Eq, two, col});
            i += 2;
        } else if (two == "&&") {
            out.push_back({Token::Kind::And, two, col});
            i += 2;
        } else if (two == "||") {
            out.push_back({Token::Kind::Or, two, col});
            i += 2;
        } else if (c == '|') {
            std::size_t close = line.find('>', i);
            std::size_t hash = line.find('#', i);
            if (close == std::string::npos || (hash != std::string::npos && hash < close)) {
                throw ParseError(ParseError::Kind::Syntax, line_no, col, "unterminated ket", line.substr(i, 1));
            }
            out.push_back({Token::Kind::Ket, line.substr(i, close - i + 1), col});
            i = close + 1;
        } else {
            std::size_t start = i;
            while (i < n && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#' && !is_op_start(i) &&
                   !(line[i] == '=' && i + 1 < n && line[i + 1] == '=') &&
                   !(line[i] == '&' && i + 1 < n && line[i + 1] == '&')) {
                ++i;
            }
            if (i == start) {
                throw ParseError(ParseError::Kind::Syntax, line_no, col, "unexpected character",
                                 std::string(1, line[i]));
            }
            out.push_back({Token::Kind::Word, line.substr(start, i - start), col});
        }
    }
    out.push_back({Token::Kind::End, "", n + 1});
    return out;
}

bool is_identifier(const std::string &s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) {
        return false;
    }
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

class Parser {
  public:
    explicit Parser(const std::string &source) : source_(source) {}

    CircuitIR run() {
        std::istringstream in(source_);
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            line_ = line_no;
            toks_ = lex(line, line_no);
            pos_ = 0;
            if (peek().kind == Token::Kind::End) {
                continue;
            }
            statement();
            if (peek().kind != Token::Kind::End) {
                syntax(peek(), "unexpected token");
            }
        }
        if (!declared_) {
            throw ParseError(ParseError::Kind::Semantic, std::max<std::size_t>(line_no, 1), 1,
                             "missing 'modes' declaration", "");
        }
        check_ket_normalization();
        return std::move(ir_);
    }

  private:
    [[noreturn]] void syntax(const Token &t, const std::string &msg) const {
        throw ParseError(ParseError::Kind::Syntax, line_, t.column, msg, t.text);
    }
    [[noreturn]] void semantic(const Token &t, const std::string &msg) const {
        throw ParseError(ParseError::Kind::Semantic, line_, t.column, msg, t.text);
    }

    const Token &peek() const { return toks_[pos_]; }
    const Token &next() {
        const Token &t = toks_[pos_];
        if (t.kind != Token::Kind::End) {
            ++pos_;
        }
        return t;
    }
    const Token &word(const char *what) {
        const Token &t = next();
        if (t.kind != Token::Kind::Word) {
            syntax(t, std::string("expected ") + what);
        }
        return t;
    }
    void keyword(const char *kw) {
        const Token &t = next();
        if (t.kind != Token::Kind::Word || t.text != kw) {
            syntax(t, std::string("expected '") + kw + "'");
        }
    }

    double real() {
        const Token &t = word("a real number");
        double v = 0.0;
        auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc() || p != t.text.data() + t.text.size() || !std::isfinite(v)) {
            syntax(t, "malformed real number");
        }
        return v;
    }

    int integer(const Token &t) const {
        int v = 0;
        auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc() || p != t.text.data() + t.text.size()) {
            syntax(t, "malformed integer");
        }
        return v;
    }

    std::size_t mode() {
        const Token &t = word("a mode");
        if (!ir_.labels.empty()) {
            auto it = std::find(ir_.labels.begin(), ir_.labels.end(), t.text);
            if (it != ir_.labels.end()) {
                return static_cast<std::size_t>(it - ir_.labels.begin());
            }
        }
        int v = 0;
        auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec == std::errc() && p == t.text.data() + t.text.size() && v >= 1 &&
            static_cast<std::size_t>(v) <= ir_.mode_count) {
            return static_cast<std::size_t>(v - 1);
        }
        semantic(t, "undeclared mode");
    }

    std::size_t live_mode() {
        const Token &t = peek();
        std::size_t m = mode();
        if (detected_[m]) {
            semantic(t, "mode was already detected");
        }
        return m;
    }

    Condition condition() {
        Condition c;
        do {
            std::vector<Comparison> all;
            do {
                const Token &name = word("an outcome name");
                if (std::find(bound_.begin(), bound_.end(), name.text) == bound_.end()) {
                    semantic(name, "outcome name is not bound by an earlier detect");
                }
                const Token &eq = next();
                if (eq.kind != Token::Kind::Eq) {
                    syntax(eq, "expected '=='");
                }
                const Token &value = word("a photon count");
                int v = integer(value);
                if (v < 0) {
                    semantic(value, "photon counts are non-negative");
                }
                all.push_back({name.text, v});
            } while (peek().kind == Token::Kind::And && (next(), true));
            c.any_of.push_back(std::move(all));
        } while (peek().kind == Token::Kind::Or && (next(), true));
        return c;
    }

    void require_preparation_phase(const Token &t) {
        if (ops_started_) {
            semantic(t, "state preparation must precede every other statement");
        }
    }

    void claim(const Token &t, std::size_t m) {
        if (prepared_[m]) {
            semantic(t, "mode prepared twice");
        }
        prepared_[m] = true;
    }

    void statement() {
        const Token &head = word("a statement");
        const std::string &kw = head.text;
        if (kw == "modes") {
            modes_statement(head);
            return;
        }
        if (!declared_) {
            semantic(head, "the first statement must be 'modes'");
        }
        if (kw == "ket") {
            ket_statement(head);
        } else if (kw == "dualrail") {
            dualrail_statement(head);
        } else if (kw == "bell") {
            bell_statement(head);
        } else if (kw == "bs") {
            ops_started_ = true;
            bs_statement();
        } else if (kw == "detect") {
            ops_started_ = true;
            detect_statement();
        } else if (kw == "postselect") {
            ops_started_ = true;
            ir_.elements.emplace_back(PostSelect{condition()});
        } else if (kw == "correct") {
            ops_started_ = true;
            correct_statement();
        } else {
            syntax(head, "unknown statement");
        }
    }

    void modes_statement(const Token &head) {
        if (declared_) {
            semantic(head, "'modes' declared twice");
        }
        const Token &count = word("a mode count");
        int n = integer(count);
        if (n < 1) {
            semantic(count, "mode count must be positive");
        }
        ir_.mode_count = static_cast<std::size_t>(n);
        prepared_.assign(ir_.mode_count, false);
        detected_.assign(ir_.mode_count, false);
        declared_ = true;
        if (peek().kind == Token::Kind::Word && peek().text == "labels") {
            next();
            std::set<std::string> seen;
            for (std::size_t i = 0; i < ir_.mode_count; ++i) {
                const Token &l = word("a mode label");
                if (!seen.insert(l.text).second) {
                    semantic(l, "duplicate label");
                }
                ir_.labels.push_back(l.text);
            }
        }
    }

    void ket_statement(const Token &head) {
        require_preparation_phase(head);
        if (factor_prepared_) {
            semantic(head, "ket terms span every mode and cannot be combined with dualrail or bell");
        }
        const Token &k = next();
        if (k.kind != Token::Kind::Ket) {
            syntax(k, "expected a ket such as |1,0>");
        }
        PrepareKet el;
        std::string inner = k.text.substr(1, k.text.size() - 2);
        std::size_t start = 0;
        while (true) {
            std::size_t comma = inner.find(',', start);
            std::string part = inner.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            int v = 0;
            auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
            if (part.empty() || ec != std::errc() || p != part.data() + part.size() || v < 0) {
                syntax(k, "ket entries must be non-negative integers");
            }
            el.ket.push_back(v);
            if (comma == std::string::npos) {
                break;
            }
            start = comma + 1;
        }
        if (el.ket.size() != ir_.mode_count) {
            semantic(k, "ket has " + std::to_string(el.ket.size()) + " entries for " +
                            std::to_string(ir_.mode_count) + " modes");
        }
        if (peek().kind == Token::Kind::Word && peek().text == "amp") {
            next();
            double re = real();
            double im = real();
            el.amp = {re, im};
        }
        if (!ket_line_) {
            ket_line_ = line_;
            ket_column_ = head.column;
        }
        ir_.elements.emplace_back(std::move(el));
    }

    void dualrail_statement(const Token &head) {
        require_preparation_phase(head);
        if (ket_line_) {
            semantic(head, "ket terms span every mode and cannot be combined with dualrail or bell");
        }
        PrepareDualRail el;
        double r0 = real(), i0 = real(), r1 = real(), i1 = real();
        el.q = {{r0, i0}, {r1, i1}};
        if (std::abs(el.q.norm_squared() - 1.0) > 1e-6) {
            semantic(head, "dual-rail amplitudes are not normalized");
        }
        keyword("on");
        const Token &t = peek();
        el.qubit.rail1 = mode();
        const Token &u = peek();
        el.qubit.rail0 = mode();
        claim(t, el.qubit.rail1);
        claim(u, el.qubit.rail0);
        factor_prepared_ = true;
        ir_.elements.emplace_back(el);
    }

    void bell_statement(const Token &head) {
        require_preparation_phase(head);
        if (ket_line_) {
            semantic(head, "ket terms span every mode and cannot be combined with dualrail or bell");
        }
        const Token &kind = word("a Bell state name");
        PrepareBell el{};
        if (kind.text == "phi+") {
            el.kind = BellKind::PhiPlus;
        } else if (kind.text == "phi-") {
            el.kind = BellKind::PhiMinus;
        } else if (kind.text == "psi+") {
            el.kind = BellKind::PsiPlus;
        } else if (kind.text == "psi-") {
            el.kind = BellKind::PsiMinus;
        } else {
            syntax(kind, "expected phi+, phi-, psi+ or psi-");
        }
        keyword("on");
        for (auto &m : el.modes) {
            const Token &t = peek();
            m = mode();
            claim(t, m);
        }
        factor_prepared_ = true;
        ir_.elements.emplace_back(el);
    }

    void bs_statement() {
        ApplyBS el{};
        const Token &first = peek();
        el.m1 = live_mode();
        el.m2 = live_mode();
        if (el.m1 == el.m2) {
            semantic(first, "beam splitter needs two distinct modes");
        }
        if (peek().kind == Token::Kind::Word && peek().text == "matrix") {
            next();
            if (peek().kind == Token::Kind::Word && peek().text == "h") {
                next();
            } else {
                const Token &at = peek();
                std::vector<Amplitude> e;
                for (int k = 0; k < 4; ++k) {
                    double re = real();
                    double im = real();
                    e.emplace_back(re, im);
                }
                ModeUnitary u(2, std::move(e));
                if (!u.is_unitary()) {
                    semantic(at, "beam splitter matrix is not unitary");
                }
                el.matrix = std::move(u);
            }
        }
        ir_.elements.emplace_back(std::move(el));
    }

    void detect_statement() {
        Detect el;
        el.mode = live_mode();
        keyword("as");
        const Token &name = word("an outcome name");
        if (!is_identifier(name.text)) {
            syntax(name, "outcome names are identifiers");
        }
        if (std::find(bound_.begin(), bound_.end(), name.text) != bound_.end()) {
            semantic(name, "outcome name bound twice");
        }
        detected_[el.mode] = true;
        bound_.push_back(name.text);
        el.name = name.text;
        ir_.elements.emplace_back(std::move(el));
    }

    void correct_statement() {
        Correct el;
        const Token &which = word("a Pauli name");
        if (which.text == "x" || which.text == "y") {
            semantic(which, "only z corrections are supported");
        }
        if (which.text != "z") {
            syntax(which, "expected z");
        }
        keyword("on");
        const Token &first = peek();
        el.qubit.rail1 = live_mode();
        el.qubit.rail0 = live_mode();
        if (el.qubit.rail1 == el.qubit.rail0) {
            semantic(first, "a dual-rail qubit needs two distinct modes");
        }
        keyword("if");
        el.condition = condition();
        ir_.elements.emplace_back(std::move(el));
    }

    void check_ket_normalization() const {
        if (!ket_line_) {
            return;
        }
        std::vector<Term> terms;
        for (const auto &e : ir_.elements) {
            if (auto *k = std::get_if<PrepareKet>(&e)) {
                terms.emplace_back(k->ket, k->amp);
            }
        }
        double n2 = norm_squared(FockState::from_terms(ir_.mode_count, terms));
        if (std::abs(n2 - 1.0) > 1e-6) {
            throw ParseError(ParseError::Kind::Semantic, *ket_line_, ket_column_,
                             "ket terms sum to a state with norm squared " + format_real(n2), "ket");
        }
    }

    const std::string &source_;
    CircuitIR ir_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::size_t line_ = 0;
    bool declared_ = false;
    bool ops_started_ = false;
    bool factor_prepared_ = false;
    std::optional<std::size_t> ket_line_;
    std::size_t ket_column_ = 1;
    std::vector<bool> prepared_;
    std::vector<bool> detected_;
    std::vector<std::string> bound_;
};

std::string format_condition(const Condition &c) {
    std::string out;
    for (std::size_t i = 0; i < c.any_of.size(); ++i) {
        if (i > 0) {
            out += " || ";
        }
        for (std::size_t j = 0; j < c.any_of[i].size(); ++j) {
            if (j > 0) {
                out += " && ";
            }
            out += c.any_of[i][j].name + " == " + std::to_string(c.any_of[i][j].value);
        }
    }
    return out;
}

} // namespace

CircuitIR parse(const std::string &source) { return Parser(source).run(); }

std::string mode_name(const CircuitIR &ir, std::size_t index) {
    return ir.labels.empty() ? std::to_string(index + 1) : ir.labels.at(index);
}

std::string format(const CircuitIR &ir) {
    std::ostringstream os;
    auto m = [&](std::size_t i) { return mode_name(ir, i); };
    auto amp = [](Amplitude a) { return format_real(a.real()) + " " + format_real(a.imag()); };
    os << "modes " << ir.mode_count;
    if (!ir.labels.empty()) {
        os << " labels";
        for (const auto &l : ir.labels) {
            os << ' ' << l;
        }
    }
    os << '\n';
    for (const auto &el : ir.elements) {
        std::visit(
            [&](const auto &e) {
                using T = std::decay_t<decltype(e)>;
                if constexpr (std::is_same_v<T, PrepareKet>) {
                    os << "ket " << format_ket(e.ket) << " amp " << amp(e.amp);
                } else if constexpr (std::is_same_v<T, PrepareDualRail>) {
                    os << "dualrail " << amp(e.q.a0) << ' ' << amp(e.q.a1) << " on " << m(e.qubit.rail1) << ' '
                       << m(e.qubit.rail0);
                } else if constexpr (std::is_same_v<T, PrepareBell>) {
                    os << "bell " << to_string(e.kind) << " on";
                    for (std::size_t x : e.modes) {
                        os << ' ' << m(x);
                    }
                } else if constexpr (std::is_same_v<T, ApplyBS>) {
                    os << "bs " << m(e.m1) << ' ' << m(e.m2) << " matrix";
                    if (!e.matrix) {
                        os << " h";
                    } else {
                        for (Amplitude a : e.matrix->entries()) {
                            os << ' ' << amp(a);
                        }
                    }
                } else if constexpr (std::is_same_v<T, Detect>) {
                    os << "detect " << m(e.mode) << " as " << e.name;
                } else if constexpr (std::is_same_v<T, PostSelect>) {
                    os << "postselect " << format_condition(e.condition);
                } else if constexpr (std::is_same_v<T, Correct>) {
                    os << "correct z on " << m(e.qubit.rail1) << ' ' << m(e.qubit.rail0) << " if "
                       << format_condition(e.condition);
                }
            },
            el);
        os << '\n';
    }
    return os.str();
}

} // namespace dualrail::circuit
