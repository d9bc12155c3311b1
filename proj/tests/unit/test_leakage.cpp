// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The augaudit Authors

#include <gtest/gtest.h>

#include <cmath>

#include "augaudit/augmentor.hpp"
#include "augaudit/error.hpp"
#include "augaudit/leakage.hpp"
#include "augaudit/synthetic.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace augaudit {
namespace {

using testing::make_case;

const std::string kSample =
    "@Test public void testPoll() throws Exception {\n"
    "  Client client = new Client(\"localhost\", 8080);\n"
    "  int attempts = 0;\n"
    "  while (!client.ready()) { attempts++; Thread.sleep(50); }\n"
    "  assertEquals(\"ok\", client.status());\n"
    "}\n";

Fingerprint with(std::vector<std::uint64_t> s, std::size_t w = 5, std::string id = "x") {
    return Fingerprint{std::move(id), w, std::move(s)};
}

TEST(Fingerprint, IdenticalCodeIdenticalShingles) {
    EXPECT_EQ(fingerprint(make_case("a", "a", 0, "UC", kSample)).shingles,
              fingerprint(make_case("b", "b", 0, "UC", kSample)).shingles);
}

TEST(Fingerprint, RenamesNormalizeAway) {
    std::string renamed = kSample;
    for (auto [from, to] : {std::pair{"client", "qwerty"}, {"attempts", "zzyzx"}, {"testPoll", "abcde"}}) {
        for (auto pos = renamed.find(from); pos != std::string::npos; pos = renamed.find(from, pos + 1))
            renamed.replace(pos, std::string(from).size(), to);
    }
    EXPECT_EQ(fingerprint(make_case("a", "a", 0, "UC", kSample)).shingles,
              fingerprint(make_case("b", "b", 0, "UC", renamed)).shingles);
}

TEST(Fingerprint, ShortCodeIsEmpty) {
    EXPECT_TRUE(fingerprint(make_case("a", "a", 0, "UC", "a();")).shingles.empty());
    EXPECT_TRUE(fingerprint(make_case("a", "a", 0, "UC", "")).shingles.empty());
    EXPECT_EQ(fingerprint(make_case("a", "a", 0, "UC", "a(b);")).shingles.size(), 1u);
}

TEST(Fingerprint, NormalizedStream) {
    const auto n = normalize_tokens(tokenize("x = \"s\" + 42; // c\n@Test").tokens);
    EXPECT_EQ(n, (std::vector<std::string>{"ID", "=", "STR", "+", "NUM", ";", "@Test"}));
}

TEST(Fingerprint, ZeroWidthRejected) {
    EXPECT_THROW(fingerprint(make_case("a", "a", 0, "UC", kSample), 0), LeakageError);
}

TEST(Similarity, HandJaccard) {
    EXPECT_DOUBLE_EQ(similarity(with({1, 2, 3, 4}), with({1, 2, 3, 5})), 0.6);
    EXPECT_EQ(similarity(with({1, 2}), with({3, 4})), 0.0);
    EXPECT_EQ(similarity(with({1, 2, 9}), with({1, 2, 9})), 1.0);
}

TEST(Similarity, EmptySetsDependOnId) {
    EXPECT_EQ(similarity(with({}, 5, "a"), with({}, 5, "a")), 1.0);
    EXPECT_EQ(similarity(with({}, 5, "a"), with({}, 5, "b")), 0.0);
}

TEST(Similarity, WidthMismatchRejected) {
    EXPECT_THROW(similarity(with({1}, 5), with({1}, 4)), LeakageError);
}

TEST(Similarity, SymmetricAndMatchesOracle) {
    SplitMix64 rng(404);
    std::vector<TestCase> cases;
    for (int i = 0; i < 60; ++i) {
        const std::string category = flakycat_labels()[rng.index(5)];
        cases.push_back(make_case("c" + std::to_string(i), "", 0, category,
                                  synthetic_code(rng, category, synthetic_origin_words(rng, 3), {})));
    }
    for (std::size_t w : {1u, 3u, 5u, 8u}) {
        for (std::size_t i = 0; i < cases.size(); ++i) {
            for (std::size_t j = i; j < cases.size(); j += 7) {
                const auto a = fingerprint(cases[i], w);
                const auto b = fingerprint(cases[j], w);
                const double s = similarity(a, b);
                EXPECT_EQ(s, similarity(b, a));
                EXPECT_NEAR(s, testing::brute_force_similarity(cases[i].code, cases[j].code, w), 1e-12);
                if (i == j) EXPECT_EQ(s, 1.0);
            }
        }
    }
}

// Insertion-free variants score exactly 1 at any width.
TEST(Similarity, ReplacementOnlyVariantsScoreOne) {
    SyntheticOptions options;
    options.originals_per_label = 6;
    const Corpus base = synthetic_corpus(options, 12);
    MutationConfig config;
    config.enable_insert_unused = false;
    const Corpus augmented = augment_corpus(base, config, 3).corpus;
    for (const auto& v : augmented.cases()) {
        if (v.is_original()) continue;
        for (std::size_t w : {1u, 2u, 5u, 9u})
            EXPECT_EQ(similarity(fingerprint(augmented.at(v.origin_id), w), fingerprint(v, w)), 1.0);
    }
}

// Default operators with at most two insertions keep realistic cases above 0.6.
TEST(Similarity, InsertionVariantsStayAboveBound) {
    SyntheticOptions options;
    options.originals_per_label = 40;
    const Corpus base = synthetic_corpus(options, 77);
    const Corpus augmented = augment_corpus(base, MutationConfig{}, 8).corpus;
    std::size_t checked = 0;
    for (const auto& v : augmented.cases()) {
        if (v.is_original()) continue;
        const TestCase& origin = augmented.at(v.origin_id);
        std::size_t significant = 0;
        for (const auto& t : tokenize(origin.code).tokens) significant += t.significant();
        if (significant < 40) continue;
        ++checked;
        EXPECT_GT(similarity(fingerprint(origin), fingerprint(v)), 0.6) << v.id;
    }
    EXPECT_GT(checked, 300u);
}

Corpus two_shapes() {
    // Train and test cases differ in statement structure, not only in names.
    std::vector<TestCase> cases;
    for (int i = 0; i < 10; ++i) {
        std::string train = "@Test void t" + std::to_string(i) + "() {";
        std::string test = "@Test void u" + std::to_string(i) + "() {";
        // Each train statement has its own operator so no two share a window.
        static const char* const ops[] = {"+", "-", "*", "/", "%", "&", "|", "^", "<<", "&&"};
        for (int k = 0; k <= i; ++k) {
            const std::string a = "a" + std::to_string(k);
            train += " " + a + " = " + a + " " + ops[k] + " b;";
            test += " if (x > " + std::to_string(k) + ") { return; } else { y[0] += 1; }";
        }
        train += " }";
        test += " }";
        cases.push_back(make_case("train" + std::to_string(i), "train" + std::to_string(i), 0, "UC", train));
        cases.push_back(make_case("test" + std::to_string(i), "test" + std::to_string(i), 0, "UC", test));
    }
    return Corpus::build(cases);
}

std::vector<std::string> ids_with_prefix(const Corpus& c, const std::string& prefix) {
    std::vector<std::string> out;
    for (const auto& tc : c.cases())
        if (tc.id.rfind(prefix, 0) == 0) out.push_back(tc.id);
    return out;
}

TEST(DetectLeaks, StructurallyUnrelatedSetsAreClean) {
    const Corpus c = two_shapes();
    const LeakReport r = detect_leaks(ids_with_prefix(c, "train"), ids_with_prefix(c, "test"), c);
    EXPECT_TRUE(r.empty());
    EXPECT_EQ(r.pairs_compared + r.pairs_pruned, 100u);
}

TEST(DetectLeaks, PlantedRenameVariantFound) {
    Corpus c = two_shapes();
    std::string code = c.at("train5").code;
    for (auto pos = code.find("a"); pos != std::string::npos; pos = code.find("a", pos + 1))
        if (std::isdigit(static_cast<unsigned char>(code[pos + 1]))) code[pos] = 'q';
    std::vector<TestCase> cases = c.cases();
    cases.push_back(make_case("testplant", "testplant", 0, "UC", code));
    c = Corpus::build(cases);
    const LeakReport r = detect_leaks(ids_with_prefix(c, "train"), ids_with_prefix(c, "test"), c);
    // Neighbouring train cases share most statements with train5, so they
    // may match too; only the planted pair scores 1.
    ASSERT_FALSE(r.findings.empty());
    EXPECT_EQ(r.findings[0].a, "train5");
    EXPECT_EQ(r.findings[0].b, "testplant");
    EXPECT_EQ(r.findings[0].similarity, 1.0);
    for (const auto& f : r.findings) EXPECT_EQ(f.b, "testplant");
    EXPECT_FALSE(r.findings[0].provenance_leak);
    EXPECT_NE(leaks_to_jsonl(r).find("\"provenance_leak\":false"), std::string::npos);
}

TEST(DetectLeaks, SameOriginAlwaysReported) {
    const Corpus c = Corpus::build({make_case("o", "o", 0, "UC", kSample),
                                    make_case("o_v1", "o", 1, "UC", "if (a) { b = c[0]; } else { return; }")});
    const LeakReport r = detect_leaks({"o"}, {"o_v1"}, c);
    ASSERT_EQ(r.findings.size(), 1u);
    EXPECT_TRUE(r.findings[0].provenance_leak);
    EXPECT_LT(r.findings[0].similarity, 0.8);
}

TEST(DetectLeaks, SortedAndDeterministic) {
    SyntheticOptions options;
    options.originals_per_label = 8;
    const Corpus c = augment_corpus(synthetic_corpus(options, 4), MutationConfig{}, 4).corpus;
    std::vector<std::string> originals, variants;
    for (const auto& tc : c.cases()) (tc.is_original() ? originals : variants).push_back(tc.id);
    const LeakReport a = detect_leaks(originals, variants, c, 0.5);
    const LeakReport b = detect_leaks(originals, variants, c, 0.5);
    EXPECT_EQ(a.findings, b.findings);
    EXPECT_EQ(leaks_to_jsonl(a), leaks_to_jsonl(b));
    for (std::size_t k = 1; k < a.findings.size(); ++k)
        EXPECT_GE(a.findings[k - 1].similarity, a.findings[k].similarity);
    EXPECT_GE(a.findings.size(), variants.size());
}

TEST(DetectLeaks, BadArguments) {
    const Corpus c = two_shapes();
    EXPECT_THROW(detect_leaks({"train1"}, {"nope"}, c), LeakageError);
    EXPECT_THROW(detect_leaks({"train1"}, {"test1"}, c, 0.0), LeakageError);
    EXPECT_THROW(detect_leaks({"train1"}, {"test1"}, c, 1.5), LeakageError);
}

}  // namespace
}  // namespace augaudit
