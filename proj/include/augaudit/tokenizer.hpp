// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The augaudit Authors

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace augaudit {

enum class TokenKind {
    Identifier,
    StringLiteral,
    CharLiteral,
    Number,
    Comment,
    Punctuation,
    Whitespace,
    Annotation,
    Keyword,
    Raw,  // whole input of a source that failed to lex
};

std::string_view to_string(TokenKind kind) noexcept;

struct Span {
    std::size_t start = 0;
    std::size_t end = 0;

    std::size_t size() const noexcept { return end - start; }
    friend bool operator==(const Span&, const Span&) = default;
};

struct Token {
    TokenKind kind;
    std::string text;
    Span span;

    bool significant() const noexcept {
        return kind != TokenKind::Whitespace && kind != TokenKind::Comment;
    }
    bool is(TokenKind k, std::string_view t) const noexcept { return kind == k && text == t; }
    bool is_punct(std::string_view t) const noexcept { return is(TokenKind::Punctuation, t); }

    friend bool operator==(const Token&, const Token&) = default;
};

/// Result of lexing one source. When `ok` is false the sequence holds a
/// single Raw token spanning the whole input and `error` says why.
struct TokenStream {
    std::vector<Token> tokens;
    bool ok = true;
    std::string error;
};

/*
 * Lossless Java-like lexer: concatenating the token texts reproduces the
 * input byte for byte. Recognizes line and block comments, string literals
 * with escapes (and """ text blocks), char literals, numbers, identifiers
 * [A-Za-z_$][A-Za-z0-9_$]*, @annotations, Java keywords and operators.
 * Bytes outside those rules (e.g. non-ASCII outside literals) become one
 * punctuation token per UTF-8 sequence. Unterminated strings, chars and
 * block comments fail the whole input.
 */
TokenStream tokenize(std::string_view code);

bool is_java_keyword(std::string_view word) noexcept;

/// Primitive type keywords plus `var`.
bool is_primitive_type(std::string_view word) noexcept;

std::string concatenate(const std::vector<Token>& tokens);

}  // namespace augaudit
