//
// Copyright (c) 2026, the aspbench authors
//
// This file is part of aspbench.
//
// Permission is hereby granted, free of charge, to any person obtaining a copy
// of this software and associated documentation files (the "Software"), to
// deal in the Software without restriction, including without limitation the
// rights to use, copy, modify, merge, publish, distribute, sublicense, and/or
// sell copies of the Software, and to permit persons to whom the Software is
// furnished to do so, subject to the following conditions:
//
// The above copyright notice and this permission notice shall be included in
// all copies or substantial portions of the Software.
//
// THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
// IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
// FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
// AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
// LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING
// FROM, OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS
// IN THE SOFTWARE.
//

#include "lexer.hpp"

#include <aspbench/error.hpp>

#include <array>
#include <cctype>

namespace aspbench::detail {
namespace {

bool is_lower(char c) noexcept { return c >= 'a' && c <= 'z'; }
bool is_upper(char c) noexcept { return c >= 'A' && c <= 'Z'; }
bool is_digit(char c) noexcept { return c >= '0' && c <= '9'; }
bool is_name_char(char c) noexcept { return is_lower(c) || is_upper(c) || is_digit(c) || c == '_' || c == '\''; }

constexpr std::array<std::string_view, 9> two_char_ops = {":-", ":~", "..", "!=", "<=", ">=", "==", "<>", "**"};

} // namespace

std::pair<std::size_t, std::size_t> Lexer::location(std::size_t offset) const noexcept {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < offset && i < src_.size(); ++i) {
        if (src_[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

Token Lexer::next() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
    }
    Token tok;
    tok.offset = pos_;
    if (pos_ >= src_.size()) {
        tok.kind = Tok::end;
        return tok;
    }
    const auto start = pos_;
    const char c = src_[pos_];
    auto finish = [&](Tok kind) {
        tok.kind = kind;
        tok.length = pos_ - start;
        tok.text = src_.substr(start, tok.length);
        return tok;
    };
    if (c == '%') {
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '*') {
            auto close = src_.find("*%", pos_ + 2);
            if (close == std::string_view::npos) {
                auto [l, col] = location(start);
                throw LexError(l, col, "unterminated block comment");
            }
            pos_ = close + 2;
        } else {
            while (pos_ < src_.size() && src_[pos_] != '\n') {
                ++pos_;
            }
        }
        return finish(Tok::comment);
    }
    if (c == '"') {
        ++pos_;
        while (true) {
            if (pos_ >= src_.size() || src_[pos_] == '\n') {
                auto [l, col] = location(start);
                throw LexError(l, col, "unterminated string");
            }
            if (src_[pos_] == '\\') {
                pos_ += 2;
                continue;
            }
            if (src_[pos_++] == '"') {
                break;
            }
        }
        return finish(Tok::string);
    }
    if (c == '_' || is_lower(c) || is_upper(c)) {
        while (pos_ < src_.size() && src_[pos_] == '_') {
            ++pos_;
        }
        Tok kind = Tok::variable;
        if (pos_ < src_.size() && is_lower(src_[pos_])) {
            kind = Tok::identifier;
        }
        while (pos_ < src_.size() && is_name_char(src_[pos_])) {
            ++pos_;
        }
        return finish(kind);
    }
    if (is_digit(c)) {
        while (pos_ < src_.size() && (is_digit(src_[pos_]) || is_lower(src_[pos_]) || is_upper(src_[pos_]))) {
            ++pos_;
        }
        return finish(Tok::number);
    }
    if (c == '#') {
        ++pos_;
        while (pos_ < src_.size() && (is_lower(src_[pos_]) || is_upper(src_[pos_]))) {
            ++pos_;
        }
        if (src_.substr(start, pos_ - start) == "#sum" && pos_ < src_.size() && src_[pos_] == '+') {
            ++pos_;
        }
        return finish(pos_ - start > 1 ? Tok::hash : Tok::punct);
    }
    for (auto op : two_char_ops) {
        if (src_.substr(pos_, 2) == op) {
            pos_ += 2;
            return finish(Tok::punct);
        }
    }
    ++pos_;
    return finish(Tok::punct);
}

std::vector<Token> tokenize(std::string_view text) {
    Lexer lex(text);
    std::vector<Token> out;
    for (auto t = lex.next(); t.kind != Tok::end; t = lex.next()) {
        if (t.kind != Tok::comment) {
            out.push_back(t);
        }
    }
    return out;
}

bool is_comparison(std::string_view op) noexcept {
    return op == "=" || op == "==" || op == "!=" || op == "<>" || op == "<" || op == "<=" || op == ">" || op == ">=";
}

bool is_arithmetic(std::string_view op) noexcept {
    return op == "+" || op == "-" || op == "*" || op == "/" || op == "\\" || op == "**" || op == ".." || op == "&" ||
           op == "?" || op == "^";
}

bool is_aggregate_keyword(std::string_view kw) noexcept {
    return kw == "#count" || kw == "#sum" || kw == "#sum+" || kw == "#min" || kw == "#max" || kw == "#minimize" ||
           kw == "#maximize" || kw == "#minimise" || kw == "#maximise";
}

std::size_t matching_close(const std::vector<Token>& tokens, std::size_t open) noexcept {
    int depth = 0;
    for (std::size_t i = open; i < tokens.size(); ++i) {
        const auto& t = tokens[i];
        if (t.kind != Tok::punct) {
            continue;
        }
        if (t.text == "(" || t.text == "[" || t.text == "{") {
            ++depth;
        } else if (t.text == ")" || t.text == "]" || t.text == "}") {
            if (--depth == 0) {
                return i;
            }
        }
    }
    return tokens.size();
}

namespace {

enum class Mode { literal, term, agg_term, agg_literal };

int count_arity(const std::vector<Token>& tokens, std::size_t open, std::size_t close) {
    if (close == open + 1) {
        return 0;
    }
    int depth = 0;
    int commas = 0;
    for (std::size_t i = open + 1; i < close; ++i) {
        const auto& t = tokens[i];
        if (t.kind != Tok::punct) {
            continue;
        }
        if (t.text == "(" || t.text == "[" || t.text == "{") {
            ++depth;
        } else if (t.text == ")" || t.text == "]" || t.text == "}") {
            --depth;
        } else if (depth == 0 && t.text == ",") {
            ++commas;
        } else if (depth == 0 && t.text == ";") {
            break; // pool: the first alternative fixes the arity
        }
    }
    return commas + 1;
}

void scan_literals(const std::vector<Token>& tokens, std::size_t first, Mode top, std::vector<AtomRef>& out) {
    struct Frame {
        std::string_view open;
        Mode mode;
    };
    std::vector<Frame> stack;
    Mode top_mode = top;
    bool expect = top == Mode::literal;
    auto mode = [&]() { return stack.empty() ? top_mode : stack.back().mode; };
    auto set_mode = [&](Mode m) {
        if (stack.empty()) {
            top_mode = m;
        } else {
            stack.back().mode = m;
        }
    };
    for (std::size_t i = first; i < tokens.size(); ++i) {
        const auto& t = tokens[i];
        const Mode m = mode();
        const bool literal_ctx = m == Mode::literal || m == Mode::agg_literal;
        if (literal_ctx && expect && t.kind == Tok::identifier) {
            if (t.text == "not") {
                continue;
            }
            std::size_t j = i + 1;
            int arity = 0;
            if (j < tokens.size() && tokens[j].is("(")) {
                auto close = matching_close(tokens, j);
                arity = count_arity(tokens, j, close);
                j = close + 1;
            }
            bool is_term = j < tokens.size() && tokens[j].kind == Tok::punct &&
                           (is_comparison(tokens[j].text) || is_arithmetic(tokens[j].text));
            if (!is_term) {
                out.push_back({i, j, arity});
            }
            i = j - 1;
            expect = false;
            continue;
        }
        if (t.kind != Tok::punct) {
            expect = false;
            continue;
        }
        const auto p = t.text;
        if (p == "-" && expect && literal_ctx) {
            continue; // classical negation
        }
        if (p == "." && stack.empty()) {
            top_mode = Mode::term; // weak constraint tail follows
            expect = false;
        } else if (p == "(" || p == "[") {
            stack.push_back({p, Mode::term});
            expect = false;
        } else if (p == "{") {
            bool aggregate = i > 0 && tokens[i - 1].kind == Tok::hash && is_aggregate_keyword(tokens[i - 1].text);
            stack.push_back({p, aggregate ? Mode::agg_term : Mode::literal});
            expect = !aggregate;
        } else if (p == ")" || p == "]" || p == "}") {
            if (!stack.empty()) {
                stack.pop_back();
            }
            expect = false;
        } else if (p == ":-" || p == ":~") {
            top_mode = Mode::literal;
            expect = stack.empty();
        } else if (p == "|") {
            expect = literal_ctx;
        } else if (p == ",") {
            expect = literal_ctx;
        } else if (p == ";") {
            if (m == Mode::agg_term || m == Mode::agg_literal) {
                set_mode(Mode::agg_term);
                expect = false;
            } else {
                expect = m == Mode::literal;
            }
        } else if (p == ":") {
            if (m == Mode::agg_term) {
                set_mode(Mode::agg_literal);
                expect = true;
            } else if (m == Mode::term && stack.empty()) {
                set_mode(Mode::literal); // #show term : body
                expect = true;
            } else {
                expect = literal_ctx;
            }
        } else {
            expect = false;
        }
    }
}

} // namespace

std::vector<AtomRef> find_atoms(const std::vector<Token>& tokens) {
    std::vector<AtomRef> out;
    if (tokens.empty()) {
        return out;
    }
    const auto& head = tokens.front();
    if (head.kind == Tok::hash) {
        const auto kw = head.text;
        if (kw == "#show" || kw == "#project" || kw == "#defined") {
            std::size_t i = 1;
            if (i < tokens.size() && tokens[i].is("-")) {
                ++i;
            }
            if (i + 2 < tokens.size() && tokens[i].kind == Tok::identifier && tokens[i + 1].is("/") &&
                tokens[i + 2].kind == Tok::number) {
                int arity = 0;
                for (char c : tokens[i + 2].text) {
                    if (c < '0' || c > '9') {
                        return out;
                    }
                    arity = arity * 10 + (c - '0');
                }
                out.push_back({i, i + 3, arity});
                return out;
            }
            if (kw == "#project") {
                scan_literals(tokens, 1, Mode::literal, out);
            } else {
                scan_literals(tokens, 1, Mode::term, out);
            }
            return out;
        }
        if (kw == "#external" || kw == "#heuristic") {
            scan_literals(tokens, 1, Mode::literal, out);
            return out;
        }
        if (is_aggregate_keyword(kw)) {
            scan_literals(tokens, 0, Mode::term, out);
        }
        return out;
    }
    scan_literals(tokens, 0, Mode::literal, out);
    return out;
}

} // namespace aspbench::detail
