// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The augaudit Authors

#include <gtest/gtest.h>

#include <algorithm>

#include "augaudit/error.hpp"
#include "augaudit/metrics.hpp"
#include "augaudit/report.hpp"
#include "augaudit/rng.hpp"
#include "oracles.hpp"

namespace augaudit {
namespace {

ScoreTable scores(const std::vector<std::string>& labels, const std::vector<double>& values) {
    ScoreTable t;
    for (std::size_t i = 0; i < labels.size(); ++i) t.push_back({labels[i], values[i]});
    return t;
}

const std::vector<std::string> kLabels{"Async", "UC", "Conc", "Time", "TOD"};

BiasAuditReport table_three_report() {
    BiasAuditReport r;
    r.config_hash = "0123456789abcdef";
    r.seed = 7;
    r.gaps.push_back({"exp2", "Testing set 1", "Testing set 2",
                      bias_gap(scores(kLabels, {0.61, 0.75, 0.40, 0.57, 0.86}),
                               scores(kLabels, {0.69, 0.88, 0.52, 0.69, 0.81}))});
    return r;
}

TEST(Confusion, AllCorrectIsDiagonal) {
    const auto t = confusion({{"1", "A"}, {"2", "B"}}, {{"2", "B"}, {"1", "A"}}, {"A", "B"});
    EXPECT_EQ(t.at("A", "A"), 1u);
    EXPECT_EQ(t.at("B", "B"), 1u);
    EXPECT_EQ(t.at("A", "B") + t.at("B", "A"), 0u);
}

TEST(Confusion, HandTally) {
    const auto t = confusion({{"1", "A"}, {"2", "A"}, {"3", "B"}}, {{"1", "A"}, {"2", "B"}, {"3", "B"}});
    EXPECT_EQ(t.labels(), (std::vector<std::string>{"A", "B"}));
    EXPECT_EQ(t.at("A", "A"), 1u);
    EXPECT_EQ(t.at("A", "B"), 1u);
    EXPECT_EQ(t.at("B", "B"), 1u);
    EXPECT_EQ(t.at("B", "A"), 0u);
    EXPECT_EQ(t.total(), 3u);
}

TEST(Confusion, EmptyInputZeroMatrix) {
    const auto t = confusion({}, {}, {"A", "B"});
    EXPECT_EQ(t.total(), 0u);
    EXPECT_EQ(t.size(), 2u);
}

TEST(Confusion, Errors) {
    EXPECT_THROW(confusion({{"1", "A"}}, {{"2", "A"}}, {"A"}), MetricsError);
    EXPECT_THROW(confusion({{"1", "A"}}, {{"1", "Q"}}, {"A"}), MetricsError);
    EXPECT_THROW(confusion({{"1", "A"}, {"1", "A"}}, {{"1", "A"}}, {"A"}), MetricsError);
}

TEST(F1, PerfectPredictions) {
    ConfusionTable t({"A", "B"});
    t.at(0, 0) = 4;
    t.at(1, 1) = 2;
    for (const auto& s : f1_per_category(t)) EXPECT_EQ(s.value, 1.0);
}

TEST(F1, HandFormula) {
    ConfusionTable t({"A", "B"});
    t.at(0, 0) = 2;  // TP
    t.at(1, 0) = 1;  // FP for A
    t.at(0, 1) = 1;  // FN for A
    EXPECT_NEAR(f1_per_category(t)[0].value, 2.0 / 3.0, 1e-15);
}

TEST(F1, AbsentCategoryScoresZero) {
    ConfusionTable t({"A", "B"});
    t.at(0, 0) = 3;
    EXPECT_EQ(f1_per_category(t)[1].value, 0.0);
}

TEST(F1, MatchesBruteForceOnRandomTables) {
    SplitMix64 rng(1);
    for (int round = 0; round < 1000; ++round) {
        const auto n = static_cast<std::size_t>(rng.uniform(1, 6));
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < n; ++i) labels.push_back("L" + std::to_string(i));
        ConfusionTable t(labels);
        std::vector<std::string> gold, pred;
        for (std::size_t g = 0; g < n; ++g) {
            for (std::size_t p = 0; p < n; ++p) {
                t.at(g, p) = static_cast<std::size_t>(rng.uniform(0, 50));
                for (std::size_t k = 0; k < t.at(g, p); ++k) {
                    gold.push_back(labels[g]);
                    pred.push_back(labels[p]);
                }
            }
        }
        const auto want = testing::brute_force_f1(gold, pred, labels);
        const auto got = f1_per_category(t);
        for (std::size_t i = 0; i < n; ++i) ASSERT_NEAR(got[i].value, want[i], 1e-12);
        const double m = macro_f1(got);
        const auto [lo, hi] = std::minmax_element(want.begin(), want.end());
        EXPECT_GE(m, *lo - 1e-15);
        EXPECT_LE(m, *hi + 1e-15);
    }
}

TEST(Macro, ReferenceScoreAverages) {
    EXPECT_EQ(percent(macro_f1(scores(kLabels, {0.61, 0.75, 0.40, 0.57, 0.86}))), 64);
    EXPECT_NEAR(macro_f1(scores(kLabels, {0.61, 0.75, 0.40, 0.57, 0.86})), 0.638, 1e-12);
    EXPECT_EQ(percent(macro_f1(scores(kLabels, {0.69, 0.88, 0.52, 0.69, 0.81}))), 72);
    EXPECT_EQ(macro_f1(scores({"X"}, {0.37})), 0.37);
    EXPECT_THROW(macro_f1({}), MetricsError);
}

TEST(Weighted, UsesGoldSupport) {
    ConfusionTable t({"A", "B"});
    t.at(0, 0) = 3;
    t.at(1, 0) = 1;
    const auto f = f1_per_category(t);
    EXPECT_NEAR(weighted_f1(t), (3 * f[0].value + 1 * f[1].value) / 4, 1e-15);
    EXPECT_EQ(weighted_f1(ConfusionTable({"A"})), 0.0);
}

TEST(Gap, ReferenceScores) {
    const GapTable g = table_three_report().gaps[0].table;
    std::vector<std::string> diffs;
    for (const auto& r : g.rows) diffs.push_back(signed_percent(r.gap));
    EXPECT_EQ(diffs, (std::vector<std::string>{"+8", "+13", "+12", "+12", "-5"}));
    EXPECT_EQ(signed_percent(g.average_gap), "+8");
}

TEST(Gap, IdenticalAndAntisymmetric) {
    SplitMix64 rng(4);
    for (int round = 0; round < 200; ++round) {
        std::vector<double> a, b;
        for (std::size_t i = 0; i < kLabels.size(); ++i) {
            a.push_back(rng.unit());
            b.push_back(rng.unit());
        }
        for (const auto& r : bias_gap(scores(kLabels, a), scores(kLabels, a)).rows) EXPECT_EQ(r.gap, 0.0);
        const auto ab = bias_gap(scores(kLabels, a), scores(kLabels, b));
        const auto ba = bias_gap(scores(kLabels, b), scores(kLabels, a));
        for (std::size_t i = 0; i < kLabels.size(); ++i) EXPECT_EQ(ab.rows[i].gap, -ba.rows[i].gap);
    }
}

TEST(Gap, LabelMismatch) {
    EXPECT_THROW(bias_gap(scores({"A"}, {0.1}), scores({"B"}, {0.1})), MetricsError);
    EXPECT_THROW(bias_gap(scores({"A"}, {0.1}), scores({"A", "B"}, {0.1, 0.2})), MetricsError);
}

TEST(Percent, RoundsHalfUp) {
    EXPECT_EQ(percent(0.125), 13);
    EXPECT_EQ(percent(-0.125), -12);
    EXPECT_EQ(percent(0.69 - 0.61), 8);
    EXPECT_EQ(signed_percent(0.0), "0");
    EXPECT_EQ(signed_percent(-0.05), "-5");
}

TEST(Render, ReferenceScoresCsv) {
    EXPECT_EQ(render_report(table_three_report(), ReportFormat::Csv),
              "Category,Testing set 1,Testing set 2,Difference\n"
              "Async,61,69,+8\n"
              "UC,75,88,+13\n"
              "Conc,40,52,+12\n"
              "Time,57,69,+12\n"
              "TOD,86,81,-5\n"
              "Average,64,72,+8\n");
}

TEST(Render, EmptyLabelSetIsHeaderOnly) {
    BiasAuditReport r;
    EXPECT_EQ(render_report(r, ReportFormat::Csv), "Category,Set1,Set2,Difference\n");
    r.gaps.push_back({"exp2", "a", "b", bias_gap({}, {})});
    EXPECT_EQ(render_report(r, ReportFormat::Csv), "Category,a,b,Difference\n");
}

TEST(Render, PlotData) {
    const std::string plot = render_report(table_three_report(), ReportFormat::PlotData);
    EXPECT_EQ(plot.substr(0, plot.find('\n', plot.find('\n') + 1) + 1),
              "category,Testing set 1,Testing set 2\nAsync,0.610000,0.690000\n");
}

TEST(Render, DeterministicAndJsonRoundTrip) {
    BiasAuditReport r = table_three_report();
    ConfusionTable t({"A", "B"});
    t.at(0, 0) = 5;
    t.at(0, 1) = 2;
    t.at(1, 1) = 4;
    r.evaluations.push_back(make_evaluation("exp2.test1", "exp2", "test1", 20, t, 1));
    r.warnings.push_back("note");
    for (auto format : {ReportFormat::Json, ReportFormat::Csv, ReportFormat::PlotData})
        EXPECT_EQ(render_report(r, format), render_report(r, format));
    const std::string json = render_report(r, ReportFormat::Json);
    EXPECT_NE(json.find("\"schema\": \"augaudit/1\""), std::string::npos);
    EXPECT_EQ(render_report(report_from_json(json), ReportFormat::Json), json);
}

TEST(Render, InconsistentReportRejected) {
    BiasAuditReport r = table_three_report();
    r.gaps[0].table.average_gap += 0.01;
    EXPECT_THROW(render_report(r, ReportFormat::Csv), MetricsError);
    BiasAuditReport e;
    ConfusionTable t({"A"});
    t.at(0, 0) = 1;
    e.evaluations.push_back(make_evaluation("x", "exp2", "test1", 1, t));
    e.evaluations[0].macro_f1 = 0.5;
    EXPECT_THROW(render_report(e, ReportFormat::Json), MetricsError);
}

TEST(Formats, Parse) {
    EXPECT_EQ(parse_report_format("plotdata"), ReportFormat::PlotData);
    EXPECT_THROW(parse_report_format("xml"), Error);
    EXPECT_EQ(file_name(ReportFormat::Csv), "report.csv");
}

}  // namespace
}  // namespace augaudit
