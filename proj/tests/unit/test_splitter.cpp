// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The augaudit Authors

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "augaudit/error.hpp"
#include "augaudit/splitter.hpp"
#include "generators.hpp"

namespace augaudit {
namespace {

using testing::make_case;

// n originals per category, each with `variants` variants.
Corpus grid(const std::vector<std::string>& labels, std::size_t n, int variants) {
    std::vector<TestCase> cases;
    for (const auto& label : labels) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::string id = label + std::to_string(100 + i);
            cases.push_back(make_case(id, id, 0, label));
            for (int v = 1; v <= variants; ++v) cases.push_back(make_case(id + "_v" + std::to_string(v), id, v, label));
        }
    }
    return Corpus::build(std::move(cases));
}

OriginSplit explicit_split(const Corpus& corpus, std::set<std::string> test) {
    OriginSplit s;
    for (const auto& id : corpus.original_ids())
        if (!test.count(id)) s.train_origins.insert(id);
    s.test_origins = std::move(test);
    return s;
}

bool subset(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

TEST(SplitOriginals, StratifiedCounts) {
    const Corpus c = grid({"A", "B"}, 10, 0);
    const OriginSplit s = split_originals(c, 0.2, 3);
    EXPECT_EQ(s.test_origins.size(), 4u);
    std::size_t a = 0;
    for (const auto& id : s.test_origins) a += id[0] == 'A';
    EXPECT_EQ(a, 2u);
    EXPECT_EQ(s.train_origins.size() + s.test_origins.size(), 20u);
}

TEST(SplitOriginals, DegenerateFractionFails) {
    const Corpus c = grid({"A"}, 2, 0);
    EXPECT_THROW(split_originals(c, 0.9, 1), SplitError);
    EXPECT_THROW(split_originals(c, 0.0, 1), SplitError);
    EXPECT_THROW(split_originals(c, 1.0, 1), SplitError);
    EXPECT_THROW(split_originals(grid({"A"}, 1, 0), 0.2, 1), SplitError);
}

TEST(SplitOriginals, DeterministicInSeed) {
    const Corpus c = grid({"A", "B", "C"}, 17, 1);
    const OriginSplit x = split_originals(c, 0.2, 42);
    const OriginSplit y = split_originals(c, 0.2, 42);
    EXPECT_EQ(x.test_origins, y.test_origins);
    bool differs = false;
    for (std::uint64_t seed = 43; seed < 53 && !differs; ++seed)
        differs = split_originals(c, 0.2, seed).test_origins != x.test_origins;
    EXPECT_TRUE(differs);
}

TEST(SplitOriginals, StratificationWithinOne) {
    SplitMix64 rng(8);
    for (int round = 0; round < 300; ++round) {
        const Corpus c = testing::random_split_corpus(rng);
        const double fraction = 0.1 + 0.3 * rng.unit();
        const OriginSplit s = split_originals(c, fraction, rng.next());
        for (const auto& label : c.labels()) {
            std::size_t n = 0, t = 0;
            for (const auto& id : c.original_ids()) {
                if (c.at(id).category != label) continue;
                ++n;
                t += s.test_origins.count(id);
            }
            if (n == 0) continue;
            EXPECT_LT(std::abs(static_cast<double>(t) - fraction * static_cast<double>(n)), 1.0);
        }
    }
}

TEST(Experiment1, FlakyCatAsyncSizes) {
    // 102 train origins (98 with both variants) and 26 test origins with both.
    std::vector<TestCase> cases;
    std::set<std::string> test;
    for (int i = 0; i < 128; ++i) {
        const std::string id = "async" + std::to_string(1000 + i);
        cases.push_back(make_case(id, id, 0, "Async"));
        if (i < 98 || i >= 102) {
            cases.push_back(make_case(id + "_v1", id, 1, "Async"));
            cases.push_back(make_case(id + "_v2", id, 2, "Async"));
        }
        if (i >= 102) test.insert(id);
    }
    const Corpus c = Corpus::build(cases);
    const Experiment1 e = build_experiment1(c, explicit_split(c, test));
    EXPECT_EQ(e.phase_b.set("train").size(), 298u);
    EXPECT_EQ(e.phase_b.set("test").size(), 78u);
    EXPECT_EQ(e.phase_a.set("train").size(), 102u);
}

TEST(Experiment1, NoVariantsMeansSamePlans) {
    const Corpus c = grid({"A", "B"}, 5, 0);
    const Experiment1 e = build_experiment1(c, split_originals(c, 0.2, 1));
    EXPECT_EQ(e.phase_a.sets(), e.phase_b.sets());
}

TEST(Experiment1, PartialVariants) {
    const Corpus c = Corpus::build({make_case("o", "o", 0, "A"), make_case("o_v1", "o", 1, "A"),
                                    make_case("t", "t", 0, "A")});
    const Experiment1 e = build_experiment1(c, explicit_split(c, {"t"}));
    EXPECT_EQ(e.phase_b.set("train"), (std::vector<std::string>{"o", "o_v1"}));
}

TEST(Experiment1, UnknownIdFails) {
    const Corpus c = grid({"A"}, 3, 0);
    OriginSplit s = explicit_split(c, {"A100"});
    s.train_origins.insert("nope");
    EXPECT_THROW(build_experiment1(c, s), SplitError);
    EXPECT_THROW(build_experiment2(c, s), SplitError);
}

TEST(Experiment2, HandCount) {
    const Corpus c = grid({"A"}, 7, 2);
    const SplitPlan p = build_experiment2(c, explicit_split(c, {"A105", "A106"}));
    EXPECT_EQ(p.set("train").size(), 5u);
    EXPECT_EQ(p.set("test1").size(), 2u);
    EXPECT_EQ(p.set("test2").size(), 10u);
    EXPECT_EQ(p.set_names(), (std::vector<std::string>{"train", "test1", "test2"}));
}

TEST(Experiment2, NoVariantsEmptyTest2) {
    const Corpus c = grid({"A"}, 5, 0);
    EXPECT_TRUE(build_experiment2(c, split_originals(c, 0.2, 0)).set("test2").empty());
}

TEST(Experiment2, NinetyNineOriginsGive198AndFlagMismatch) {
    const Corpus c = grid({"Async"}, 125, 2);
    std::set<std::string> test;
    for (int i = 99; i < 125; ++i) test.insert("Async" + std::to_string(100 + i));
    const SplitPlan p = build_experiment2(c, explicit_split(c, test));
    EXPECT_EQ(p.set("test2").size(), 198u);
    EXPECT_TRUE(compare_test2_counts(p, c, {{"Async", 198}}).empty());
    const auto warnings = compare_test2_counts(p, c, {{"Async", 251}});
    ASSERT_EQ(warnings.size(), 1u);
    EXPECT_NE(warnings[0].find("251"), std::string::npos);
    EXPECT_NE(warnings[0].find("198"), std::string::npos);
}

TEST(Integrity, BuiltPlansAreClean) {
    const Corpus c = grid({"A", "B"}, 10, 2);
    const OriginSplit s = split_originals(c, 0.2, 5);
    const Experiment1 e = build_experiment1(c, s);
    EXPECT_TRUE(verify_group_integrity(e.phase_a, c).ok());
    EXPECT_TRUE(verify_group_integrity(e.phase_b, c).ok());
    EXPECT_TRUE(verify_group_integrity(build_experiment2(c, s), c).ok());
}

TEST(Integrity, PlantedExp1Leak) {
    const Corpus c = Corpus::build({make_case("o1", "o1", 0, "A"), make_case("o1_v1", "o1", 1, "A"),
                                    make_case("o2", "o2", 0, "A")});
    const SplitPlan plan(Protocol::Exp1PhaseB, {{"train", {"o1"}}, {"test", {"o1_v1", "o2"}}}, 0, 0.2);
    const auto report = verify_group_integrity(plan, c);
    ASSERT_EQ(report.findings.size(), 1u);
    EXPECT_EQ(report.findings[0].origin_id, "o1");
    EXPECT_EQ(report.findings[0].kind, IntegrityKind::GroupSpansSplits);
}

TEST(Integrity, PlantedTest1OriginVariantInTest2) {
    const Corpus c = grid({"A"}, 4, 1);
    SplitPlan plan = build_experiment2(c, explicit_split(c, {"A103"}));
    auto& test2 = plan.mutable_sets()[2].second;
    test2.push_back("A103_v1");
    std::sort(test2.begin(), test2.end());
    const auto report = verify_group_integrity(plan, c);
    ASSERT_EQ(report.findings.size(), 1u);
    EXPECT_EQ(report.findings[0].kind, IntegrityKind::Test2OriginNotInTrain);
}

TEST(Integrity, OtherExp2Violations) {
    const Corpus c = grid({"A"}, 3, 1);
    const SplitPlan plan(Protocol::Exp2,
                         {{"train", {"A100", "A101_v1"}}, {"test1", {"A102", "A100"}}, {"test2", {"A101"}}}, 0, 0.2);
    std::set<IntegrityKind> kinds;
    for (const auto& f : verify_group_integrity(plan, c).findings) kinds.insert(f.kind);
    EXPECT_TRUE(kinds.count(IntegrityKind::VariantInTrainOrTest1));
    EXPECT_TRUE(kinds.count(IntegrityKind::Test1OriginInTrain));
    EXPECT_TRUE(kinds.count(IntegrityKind::OriginalInTest2));
    EXPECT_TRUE(kinds.count(IntegrityKind::DuplicateMembership));
}

TEST(Integrity, UnknownAndPhaseAViolations) {
    const Corpus c = grid({"A"}, 2, 1);
    const SplitPlan plan(Protocol::Exp1PhaseA, {{"train", {"A100", "ghost"}}, {"test", {"A101_v1"}}}, 0, 0.2);
    std::set<IntegrityKind> kinds;
    for (const auto& f : verify_group_integrity(plan, c).findings) kinds.insert(f.kind);
    EXPECT_TRUE(kinds.count(IntegrityKind::UnknownId));
    EXPECT_TRUE(kinds.count(IntegrityKind::VariantInPhaseA));
}

TEST(Plans, PhaseBExtendsPhaseAWithVariantsOnly) {
    SplitMix64 rng(31);
    for (int round = 0; round < 200; ++round) {
        const Corpus c = testing::random_split_corpus(rng);
        const OriginSplit s = split_originals(c, 0.2, rng.next());
        const Experiment1 e = build_experiment1(c, s);
        for (const char* set : {"train", "test"}) {
            EXPECT_TRUE(subset(e.phase_a.set(set), e.phase_b.set(set)));
            for (const auto& id : e.phase_b.set(set)) {
                if (!std::binary_search(e.phase_a.set(set).begin(), e.phase_a.set(set).end(), id))
                    EXPECT_FALSE(c.at(id).is_original());
            }
        }
        // test2 category distribution equals the train origins' variant distribution.
        const SplitPlan p = build_experiment2(c, s);
        std::map<std::string, std::size_t> want, got;
        for (const auto& o : s.train_origins) want[c.at(o).category] += c.variants_of(o).size();
        for (const auto& id : p.set("test2")) got[c.at(id).category] += 1;
        std::erase_if(want, [](const auto& kv) { return kv.second == 0; });
        EXPECT_EQ(got, want);
    }
}

TEST(Protocols, NamesRoundTrip) {
    for (Protocol p : {Protocol::Exp1PhaseA, Protocol::Exp1PhaseB, Protocol::Exp2})
        EXPECT_EQ(parse_protocol(to_string(p)), p);
    EXPECT_THROW(parse_protocol("exp3"), SplitError);
}

}  // namespace
}  // namespace augaudit
