// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The augaudit Authors

#include "augaudit/tokenizer.hpp"

#include <algorithm>
#include <array>

namespace augaudit {

namespace {

constexpr std::array<std::string_view, 56> kKeywords{
    "abstract", "assert",     "boolean",   "break",     "byte",         "case",
    "catch",    "char",       "class",     "const",     "continue",     "default",
    "do",       "double",     "else",      "enum",      "extends",      "final",
    "finally",  "float",      "for",       "goto",      "if",           "implements",
    "import",   "instanceof", "int",       "interface", "long",         "native",
    "new",      "package",    "private",   "protected", "public",       "return",
    "short",    "static",     "strictfp",  "super",     "switch",       "synchronized",
    "this",     "throw",      "throws",    "transient", "try",          "void",
    "volatile", "while",      "true",      "false",     "null",         "var",
    "record",   "yield",
};

constexpr std::array<std::string_view, 9> kPrimitives{
    "boolean", "byte", "char", "short", "int", "long", "float", "double", "var",
};

// Longest first. ">>" and ">>>" are deliberately absent so that nested
// generic closers lex as single '>' tokens.
constexpr std::array<std::string_view, 36> kOperators{
    ">>>=", "<<=", ">>=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=",
    "<=",   ">=",  "+=",  "-=",  "*=", "/=", "%=", "&=", "|=", "^=", "<<",
    "(",    ")",   "{",   "}",   "[",  "]",  ";",  ",",  ".",  "=",  "<",  ">",  "?",
};

bool ident_start(char c) noexcept {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_' || c == '$';
}

bool ident_part(char c) noexcept {
    return ident_start(c) || (c >= '0' && c <= '9');
}

bool digit(char c) noexcept { return c >= '0' && c <= '9'; }

bool space(char c) noexcept {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

std::size_t utf8_length(unsigned char lead) noexcept {
    if (lead < 0x80) return 1;
    if ((lead >> 5) == 0x6) return 2;
    if ((lead >> 4) == 0xE) return 3;
    if ((lead >> 3) == 0x1E) return 4;
    return 1;
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    TokenStream run() {
        TokenStream out;
        while (pos_ < src_.size()) {
            if (!step(out.tokens)) {
                out.tokens.clear();
                out.tokens.push_back({TokenKind::Raw, std::string(src_), {0, src_.size()}});
                out.ok = false;
                out.error = error_;
                return out;
            }
        }
        return out;
    }

private:
    char peek(std::size_t ahead = 0) const noexcept {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    void emit(std::vector<Token>& out, TokenKind kind, std::size_t start) {
        out.push_back({kind, std::string(src_.substr(start, pos_ - start)), {start, pos_}});
    }

    bool fail(std::string message) {
        error_ = std::move(message);
        return false;
    }

    bool step(std::vector<Token>& out) {
        const std::size_t start = pos_;
        const char c = peek();

        if (space(c)) {
            while (pos_ < src_.size() && space(src_[pos_])) ++pos_;
            emit(out, TokenKind::Whitespace, start);
            return true;
        }
        if (c == '/' && peek(1) == '/') {
            while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
            emit(out, TokenKind::Comment, start);
            return true;
        }
        if (c == '/' && peek(1) == '*') {
            const auto close = src_.find("*/", pos_ + 2);
            if (close == std::string_view::npos) {
                return fail("unterminated block comment at offset " + std::to_string(start));
            }
            pos_ = close + 2;
            emit(out, TokenKind::Comment, start);
            return true;
        }
        if (c == '"') {
            if (peek(1) == '"' && peek(2) == '"') return text_block(out, start);
            return quoted(out, start, '"', TokenKind::StringLiteral, "string");
        }
        if (c == '\'') return quoted(out, start, '\'', TokenKind::CharLiteral, "char literal");
        if (digit(c) || (c == '.' && digit(peek(1)))) {
            number();
            emit(out, TokenKind::Number, start);
            return true;
        }
        if (ident_start(c)) {
            while (pos_ < src_.size() && ident_part(src_[pos_])) ++pos_;
            const bool kw = is_java_keyword(src_.substr(start, pos_ - start));
            emit(out, kw ? TokenKind::Keyword : TokenKind::Identifier, start);
            return true;
        }
        if (c == '@' && ident_start(peek(1))) {
            ++pos_;
            for (;;) {
                while (pos_ < src_.size() && ident_part(src_[pos_])) ++pos_;
                if (peek() == '.' && ident_start(peek(1))) {
                    ++pos_;
                    continue;
                }
                break;
            }
            emit(out, TokenKind::Annotation, start);
            return true;
        }
        for (std::string_view op : kOperators) {
            if (src_.substr(pos_, op.size()) == op) {
                pos_ += op.size();
                emit(out, TokenKind::Punctuation, start);
                return true;
            }
        }
        pos_ += std::min(utf8_length(static_cast<unsigned char>(c)), src_.size() - pos_);
        emit(out, TokenKind::Punctuation, start);
        return true;
    }

    bool quoted(std::vector<Token>& out, std::size_t start, char quote, TokenKind kind,
                const char* what) {
        ++pos_;
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == '\\') {
                pos_ += 2;
                continue;
            }
            if (c == '\n') break;
            ++pos_;
            if (c == quote) {
                emit(out, kind, start);
                return true;
            }
        }
        return fail(std::string("unterminated ") + what + " at offset " + std::to_string(start));
    }

    bool text_block(std::vector<Token>& out, std::size_t start) {
        pos_ += 3;
        while (pos_ < src_.size()) {
            if (src_[pos_] == '\\') {
                pos_ += 2;
                continue;
            }
            if (src_.substr(pos_, 3) == "\"\"\"") {
                pos_ += 3;
                emit(out, TokenKind::StringLiteral, start);
                return true;
            }
            ++pos_;
        }
        return fail("unterminated text block at offset " + std::to_string(start));
    }

    void number() {
        const bool hex = peek() == '0' && (peek(1) == 'x' || peek(1) == 'X');
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (ident_part(c) || c == '.') {
                // "1.foo()" is not a number continuation
                if (c == '.' && !digit(peek(1)) && ident_start(peek(1))) break;
                ++pos_;
                continue;
            }
            const char prev = src_[pos_ - 1];
            const bool exponent =
                hex ? (prev == 'p' || prev == 'P') : (prev == 'e' || prev == 'E');
            if ((c == '+' || c == '-') && exponent && digit(peek(1))) {
                ++pos_;
                continue;
            }
            break;
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::string error_;
};

}  // namespace

std::string_view to_string(TokenKind kind) noexcept {
    switch (kind) {
        case TokenKind::Identifier: return "identifier";
        case TokenKind::StringLiteral: return "string-literal";
        case TokenKind::CharLiteral: return "char-literal";
        case TokenKind::Number: return "number";
        case TokenKind::Comment: return "comment";
        case TokenKind::Punctuation: return "punctuation";
        case TokenKind::Whitespace: return "whitespace";
        case TokenKind::Annotation: return "annotation";
        case TokenKind::Keyword: return "keyword";
        case TokenKind::Raw: return "raw";
    }
    return "unknown";
}

bool is_java_keyword(std::string_view word) noexcept {
    return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

bool is_primitive_type(std::string_view word) noexcept {
    return std::find(kPrimitives.begin(), kPrimitives.end(), word) != kPrimitives.end();
}

TokenStream tokenize(std::string_view code) { return Lexer(code).run(); }

std::string concatenate(const std::vector<Token>& tokens) {
    std::string out;
    for (const auto& t : tokens) out += t.text;
    return out;
}

}  // namespace augaudit
