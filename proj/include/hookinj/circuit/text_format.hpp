// Copyright 2026 The hookinj Authors
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

#ifndef HOOKINJ_CIRCUIT_TEXT_FORMAT_HPP
#define HOOKINJ_CIRCUIT_TEXT_FORMAT_HPP

// Line-oriented circuit text:
//
//     NAME(arg, arg, ...) target target ...   # comment
//
// Targets are qubit indices ("5"), measurement record lookbacks ("rec[-3]"),
// or Pauli terms joined by '*' for MPP ("X0*Y1*Z2").

#include <charconv>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hookinj/circuit/circuit.hpp"

namespace hookinj {

class ParseError : public std::invalid_argument {
   public:
    ParseError(size_t line, const std::string &msg)
        : std::invalid_argument("line " + std::to_string(line) + ": " + msg), line_(line) {
    }
    size_t line() const {
        return line_;
    }

   private:
    size_t line_;
};

/// Shortest decimal text that parses back to exactly `v`.
inline std::string format_number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string format_instruction(const Instruction &inst) {
    std::string out(gate_name(inst.gate));
    if (!inst.args.empty()) {
        out += '(';
        for (size_t k = 0; k < inst.args.size(); k++) {
            if (k) {
                out += ',';
            }
            out += format_number(inst.args[k]);
        }
        out += ')';
    }
    for (size_t k = 0; k < inst.targets.size(); k++) {
        const Target &t = inst.targets[k];
        switch (t.kind) {
            case TargetKind::Qubit:
                out += ' ';
                out += std::to_string(t.value);
                break;
            case TargetKind::Rec:
                out += " rec[" + std::to_string(t.value) + "]";
                break;
            case TargetKind::Pauli:
                if (k == 0 || inst.targets[k - 1].kind != TargetKind::Combiner) {
                    out += ' ';
                }
                out += pauli_char(t.pauli);
                out += std::to_string(t.value);
                break;
            case TargetKind::Combiner:
                out += '*';
                break;
        }
    }
    return out;
}

inline std::string serialize(const Circuit &circuit) {
    std::string out;
    for (const auto &inst : circuit.instructions) {
        out += format_instruction(inst);
        out += '\n';
    }
    return out;
}

namespace detail {

inline bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\r';
}

inline uint32_t parse_index(std::string_view s, size_t line) {
    uint32_t v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || s.empty()) {
        throw ParseError(line, "bad index '" + std::string(s) + "'");
    }
    return v;
}

inline double parse_double(std::string_view s, size_t line) {
    while (!s.empty() && is_space(s.front())) {
        s.remove_prefix(1);
    }
    while (!s.empty() && is_space(s.back())) {
        s.remove_suffix(1);
    }
    double v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || s.empty()) {
        throw ParseError(line, "bad number '" + std::string(s) + "'");
    }
    return v;
}

inline void parse_target_token(std::string_view tok, Instruction &inst, size_t line) {
    if (tok.substr(0, 4) == "rec[") {
        if (tok.back() != ']') {
            throw ParseError(line, "unterminated rec target");
        }
        std::string_view body = tok.substr(4, tok.size() - 5);
        int32_t v = 0;
        auto res = std::from_chars(body.data(), body.data() + body.size(), v);
        if (res.ec != std::errc{} || res.ptr != body.data() + body.size() || v >= 0) {
            throw ParseError(line, "rec lookback must be a negative integer: '" + std::string(tok) + "'");
        }
        inst.targets.push_back(Target::rec(v));
        return;
    }
    if (tok.front() >= '0' && tok.front() <= '9') {
        inst.targets.push_back(Target::qubit(parse_index(tok, line)));
        return;
    }
    // Pauli product such as X0*Y1*Z2.
    size_t start = 0;
    bool first = true;
    while (start <= tok.size()) {
        size_t end = tok.find('*', start);
        if (end == std::string_view::npos) {
            end = tok.size();
        }
        std::string_view term = tok.substr(start, end - start);
        if (term.size() < 2) {
            throw ParseError(line, "bad target '" + std::string(tok) + "'");
        }
        Pauli p;
        try {
            p = pauli_from_char(term[0]);
        } catch (const std::invalid_argument &) {
            throw ParseError(line, "bad target '" + std::string(tok) + "'");
        }
        if (!first) {
            inst.targets.push_back(Target::combiner());
        }
        inst.targets.push_back(Target::pauli_target(p, parse_index(term.substr(1), line)));
        first = false;
        if (end == tok.size()) {
            break;
        }
        start = end + 1;
    }
}

}  // namespace detail

inline Instruction parse_instruction(std::string_view text, size_t line) {
    size_t k = 0;
    while (k < text.size() && detail::is_space(text[k])) {
        k++;
    }
    size_t name_start = k;
    while (k < text.size() && (std::isalnum((unsigned char)text[k]) || text[k] == '_')) {
        k++;
    }
    std::string_view name = text.substr(name_start, k - name_start);
    auto gate = gate_from_name(name);
    if (!gate) {
        throw ParseError(line, "unknown instruction '" + std::string(name) + "'");
    }
    Instruction inst{*gate, {}, {}};
    if (k < text.size() && text[k] == '(') {
        size_t close = text.find(')', k);
        if (close == std::string_view::npos) {
            throw ParseError(line, "missing ')'");
        }
        std::string_view body = text.substr(k + 1, close - k - 1);
        size_t s = 0;
        while (true) {
            size_t comma = body.find(',', s);
            std::string_view part = body.substr(s, comma == std::string_view::npos ? std::string_view::npos : comma - s);
            inst.args.push_back(detail::parse_double(part, line));
            if (comma == std::string_view::npos) {
                break;
            }
            s = comma + 1;
        }
        k = close + 1;
    }
    if (k < text.size() && !detail::is_space(text[k])) {
        throw ParseError(line, "unexpected character '" + std::string(1, text[k]) + "'");
    }
    while (k < text.size()) {
        while (k < text.size() && detail::is_space(text[k])) {
            k++;
        }
        size_t start = k;
        while (k < text.size() && !detail::is_space(text[k])) {
            k++;
        }
        if (start < k) {
            detail::parse_target_token(text.substr(start, k - start), inst, line);
        }
    }
    bool rec_targets = inst.gate == Gate::DETECTOR || inst.gate == Gate::OBSERVABLE_INCLUDE;
    for (const auto &t : inst.targets) {
        bool ok = rec_targets ? t.kind == TargetKind::Rec
                  : inst.gate == Gate::MPP ? (t.kind == TargetKind::Pauli || t.kind == TargetKind::Combiner)
                                           : t.kind == TargetKind::Qubit;
        if (!ok) {
            throw ParseError(line, "target kind not allowed for " + std::string(gate_name(inst.gate)));
        }
    }
    if (inst.gate == Gate::TICK && !inst.targets.empty()) {
        throw ParseError(line, "TICK takes no targets");
    }
    return inst;
}

inline Circuit parse(std::string_view text) {
    Circuit out;
    size_t line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        line_no++;
        std::string_view line = text.substr(pos, end - pos);
        size_t hash = line.find('#');
        if (hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        bool blank = true;
        for (char c : line) {
            blank &= detail::is_space(c);
        }
        if (!blank) {
            out.append(parse_instruction(line, line_no));
        }
        if (end == text.size()) {
            break;
        }
        pos = end + 1;
    }
    return out;
}

}  // namespace hookinj

#endif
