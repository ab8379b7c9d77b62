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

#pragma once

// Internal tokenizer shared by the program parser and the mutation operators.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace aspbench::detail {

enum class Tok {
    identifier, // lowercase-initial name
    variable,   // uppercase-initial name or '_'
    number,
    string,
    hash,       // #count, #show, ...
    punct,
    comment,
    end,
};

struct Token {
    Tok kind = Tok::end;
    std::size_t offset = 0; // byte offset into the lexed text
    std::size_t length = 0;
    std::string_view text;

    [[nodiscard]] bool is(std::string_view p) const noexcept {
        return (kind == Tok::punct || kind == Tok::hash || kind == Tok::identifier) && text == p;
    }
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    /// Next token including comments. Throws LexError on unterminated strings/comments.
    Token next();
    [[nodiscard]] std::size_t position() const noexcept { return pos_; }
    void seek(std::size_t pos) noexcept { pos_ = pos; }
    [[nodiscard]] std::string_view source() const noexcept { return src_; }

    /// 1-based line/column of a byte offset.
    [[nodiscard]] std::pair<std::size_t, std::size_t> location(std::size_t offset) const noexcept;

private:
    std::string_view src_;
    std::size_t pos_ = 0;
};

/// All non-comment tokens of a text that is known to lex cleanly.
[[nodiscard]] std::vector<Token> tokenize(std::string_view text);

[[nodiscard]] bool is_comparison(std::string_view op) noexcept;
[[nodiscard]] bool is_arithmetic(std::string_view op) noexcept;
[[nodiscard]] bool is_aggregate_keyword(std::string_view kw) noexcept;

/// Index of the token closing the bracket opened at `open`, or tokens.size().
[[nodiscard]] std::size_t matching_close(const std::vector<Token>& tokens, std::size_t open) noexcept;

struct AtomRef {
    std::size_t name_token = 0; // index of the predicate name token
    std::size_t end_token = 0;  // one past the last token of the atom
    int arity = 0;
};

/// Atoms in literal positions of a statement's tokens (heads, bodies,
/// conditions, choice elements, aggregate conditions, #show signatures).
[[nodiscard]] std::vector<AtomRef> find_atoms(const std::vector<Token>& tokens);

} // namespace aspbench::detail
