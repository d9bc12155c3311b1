// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The augaudit Authors

#include <gtest/gtest.h>

#include "augaudit/tokenizer.hpp"
#include "generators.hpp"

namespace augaudit {
namespace {

std::vector<std::pair<TokenKind, std::string>> kinds(std::string_view code) {
    std::vector<std::pair<TokenKind, std::string>> out;
    for (const auto& t : tokenize(code).tokens) out.emplace_back(t.kind, t.text);
    return out;
}

TEST(Tokenize, EmptyInput) {
    const auto s = tokenize("");
    EXPECT_TRUE(s.ok);
    EXPECT_TRUE(s.tokens.empty());
}

TEST(Tokenize, SimpleDeclaration) {
    using K = TokenKind;
    const std::vector<std::pair<TokenKind, std::string>> want{
        {K::Keyword, "int"},     {K::Whitespace, " "}, {K::Identifier, "x"}, {K::Whitespace, " "},
        {K::Punctuation, "="},   {K::Whitespace, " "}, {K::Number, "1"},     {K::Punctuation, ";"}};
    EXPECT_EQ(kinds("int x = 1;"), want);
}

TEST(Tokenize, EscapedQuoteStaysInOneLiteral) {
    const auto k = kinds("s = \"a\\\"b\";");
    ASSERT_EQ(k.size(), 6u);
    EXPECT_EQ(k[4].first, TokenKind::StringLiteral);
    EXPECT_EQ(k[4].second, "\"a\\\"b\"");
}

TEST(Tokenize, CommentsAnnotationsAndChars) {
    const auto k = kinds("@Test // hi\n/* b */ char c = '\\'';");
    EXPECT_EQ(k[0], std::make_pair(TokenKind::Annotation, std::string("@Test")));
    EXPECT_EQ(k[2], std::make_pair(TokenKind::Comment, std::string("// hi")));
    EXPECT_EQ(k[4], std::make_pair(TokenKind::Comment, std::string("/* b */")));
    EXPECT_EQ(k[10].first, TokenKind::Punctuation);
    EXPECT_EQ(k[12], std::make_pair(TokenKind::CharLiteral, std::string("'\\''")));
}

TEST(Tokenize, QualifiedAnnotationAndTextBlock) {
    const auto k = kinds("@org.junit.Test String s = \"\"\"\n  a \" b\n\"\"\";");
    EXPECT_EQ(k[0].second, "@org.junit.Test");
    EXPECT_EQ(k[8].first, TokenKind::StringLiteral);
}

TEST(Tokenize, GenericClosersStaySingle) {
    const auto k = kinds("Map<String,List<Integer>> m;");
    int closers = 0;
    for (const auto& [kind, text] : k) closers += text == ">";
    EXPECT_EQ(closers, 2);
}

TEST(Tokenize, UnterminatedInputsBecomeOneRawToken) {
    for (std::string_view bad : {"s = \"open;", "/* never closed", "c = 'x", "\"\"\" open"}) {
        const auto s = tokenize(bad);
        EXPECT_FALSE(s.ok) << bad;
        ASSERT_EQ(s.tokens.size(), 1u);
        EXPECT_EQ(s.tokens[0].kind, TokenKind::Raw);
        EXPECT_EQ(s.tokens[0].text, bad);
        EXPECT_FALSE(s.error.empty());
    }
}

TEST(Tokenize, SpansMatchText) {
    const std::string code = "for (int i = 0; i < n; ++i) { a.b(\"é\"); }";
    for (const auto& t : tokenize(code).tokens) EXPECT_EQ(code.substr(t.span.start, t.span.size()), t.text);
}

// Property: lossless for arbitrary code-like input, including broken input.
TEST(Tokenize, RoundTripOnRandomSources) {
    SplitMix64 rng(2026);
    for (int round = 0; round < 5000; ++round) {
        const std::string code = testing::random_source(rng, static_cast<std::size_t>(rng.uniform(0, 60)), true);
        const auto s = tokenize(code);
        ASSERT_EQ(concatenate(s.tokens), code) << "round " << round;
        std::size_t expect_start = 0;
        for (const auto& t : s.tokens) {
            ASSERT_EQ(t.span.start, expect_start);
            expect_start = t.span.end;
        }
    }
}

TEST(Tokenize, RoundTripOnRandomBytes) {
    SplitMix64 rng(7);
    for (int round = 0; round < 2000; ++round) {
        std::string code;
        const auto n = rng.uniform(0, 80);
        for (int i = 0; i < n; ++i) code.push_back(static_cast<char>(rng.uniform(1, 255)));
        ASSERT_EQ(concatenate(tokenize(code).tokens), code);
    }
}

TEST(Keywords, ClassifiesWords) {
    EXPECT_TRUE(is_java_keyword("synchronized"));
    EXPECT_TRUE(is_java_keyword("null"));
    EXPECT_FALSE(is_java_keyword("sleep"));
    EXPECT_TRUE(is_primitive_type("var"));
    EXPECT_FALSE(is_primitive_type("String"));
}

}  // namespace
}  // namespace augaudit
