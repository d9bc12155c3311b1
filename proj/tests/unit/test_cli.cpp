// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The augaudit Authors

#include <gtest/gtest.h>

#include <sstream>

#include "augaudit/cli.hpp"
#include "fixtures.hpp"

namespace augaudit {
namespace {

namespace fs = std::filesystem;

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

TEST(Cli, HelpExitsZero) {
    const CliRun r = cli({"--help"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE((r.out + r.err).find("audit"), std::string::npos);
    EXPECT_EQ(cli({"audit", "--help"}).code, kExitOk);
}

TEST(Cli, UsageErrorsExitTwo) {
    const auto dir = testing::audit_fixture("usage", 2);
    const std::string config = (dir / "config.json").string();
    EXPECT_EQ(cli({}).code, kExitUsage);
    EXPECT_EQ(cli({"frobnicate"}).code, kExitUsage);
    EXPECT_EQ(cli({"audit", "--config", config, "--bogus"}).code, kExitUsage);
    EXPECT_EQ(cli({"audit", "--config", config, "--seed", "-3"}).code, kExitUsage);
    EXPECT_EQ(cli({"audit", "--config", config, "--format", "xml"}).code, kExitUsage);
    EXPECT_EQ(cli({"audit", "--config", (dir / "absent.json").string()}).code, kExitUsage);
    EXPECT_EQ(cli({"split", "--config", config, "--protocol", "exp3"}).code, kExitUsage);
}

TEST(Cli, AuditPrintsGapTable) {
    const auto dir = testing::audit_fixture("audit", 6);
    const CliRun r = cli({"audit", "--config", (dir / "config.json").string(), "--seed", "7"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.out.rfind("Category,exp1_phaseA.test,exp1_phaseB.test,Difference\n", 0), 0u) << r.out;
    EXPECT_NE(r.out.find("Category,exp2.test1,exp2.test2,Difference\n"), std::string::npos);
    EXPECT_TRUE(fs::exists(dir / "out" / "report.json"));
}

TEST(Cli, MissingCorpusIsRuntimeErrorNamingIngest) {
    const auto dir = testing::fresh_dir("nocorpus");
    write_file(dir / "c.json", R"({"corpus": {"path": "gone.jsonl"}})");
    const CliRun r = cli({"audit", "--config", (dir / "c.json").string(), "--out", (dir / "o").string()});
    EXPECT_EQ(r.code, kExitRuntime);
    EXPECT_NE(r.err.find("stage ingest"), std::string::npos) << r.err;
}

TEST(Cli, LeakcheckOnLeakySplitExitsThree) {
    const auto dir = testing::fresh_dir("leaky");
    write_file(dir / "corpus.jsonl",
               "{\"id\":\"o1\",\"category\":\"UC\",\"code\":\"a.b(c);\"}\n"
               "{\"id\":\"o1_v1\",\"origin_id\":\"o1\",\"version\":1,\"category\":\"UC\",\"code\":\"x.y(z);\"}\n"
               "{\"id\":\"o2\",\"category\":\"UC\",\"code\":\"if (q) { return; }\"}\n");
    write_file(dir / "plan.json",
               R"({"protocol":"Exp1-PhaseB","sets":{"train":["o1"],"test":["o1_v1","o2"]},"seed":0,"fraction":0.2})");
    const CliRun r = cli({"leakcheck", "--input", (dir / "corpus.jsonl").string(), "--plan", (dir / "plan.json").string()});
    EXPECT_EQ(r.code, kExitLeaks) << r.err;
    EXPECT_EQ(r.out, "{\"a\":\"o1\",\"b\":\"o1_v1\",\"similarity\":1.0,\"provenance_leak\":true}\n");

    write_file(dir / "clean.json",
               R"({"protocol":"Exp1-PhaseB","sets":{"train":["o1","o1_v1"],"test":["o2"]},"seed":0,"fraction":0.2})");
    const CliRun clean =
        cli({"leakcheck", "--input", (dir / "corpus.jsonl").string(), "--plan", (dir / "clean.json").string()});
    EXPECT_EQ(clean.code, kExitOk) << clean.err;
    EXPECT_TRUE(clean.out.empty());
}

TEST(Cli, LintModeAuditFailsOnUnexpectedLeaks) {
    const auto dir = testing::audit_fixture("lint", 6, 3, R"("leakage": {"lint": true, "threshold": 0.05})");
    const CliRun r = cli({"audit", "--config", (dir / "config.json").string(), "--seed", "2"});
    EXPECT_EQ(r.code, kExitLeaks) << r.err;
}

// Running the stages one by one must leave the same files as one audit run.
TEST(Cli, ComposedStagesMatchMonolithicRun) {
    const auto dir = testing::audit_fixture("compose", 8);
    const std::string config = (dir / "config.json").string();
    const std::string mono = (dir / "mono").string();
    const std::string staged = (dir / "staged").string();
    ASSERT_EQ(cli({"audit", "--config", config, "--seed", "21", "--out", mono}).code, kExitOk);

    const std::vector<std::string> common{"--config", config, "--seed", "21", "--out", staged};
    for (const char* stage : {"ingest", "augment", "split", "leakcheck", "train", "evaluate", "report"}) {
        std::vector<std::string> args{stage};
        args.insert(args.end(), common.begin(), common.end());
        const CliRun r = cli(args);
        if (std::string(stage) == "leakcheck") {
            EXPECT_TRUE(r.code == kExitOk || r.code == kExitLeaks) << r.err;
        } else {
            ASSERT_EQ(r.code, kExitOk) << stage << ": " << r.err;
        }
    }
    const auto a = testing::directory_contents(mono);
    const auto b = testing::directory_contents(staged);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].first, b[i].first);
        EXPECT_EQ(a[i].second, b[i].second) << a[i].first;
    }
}

TEST(Cli, SameSeedSameBytes) {
    const auto dir = testing::audit_fixture("twice", 6);
    const std::string config = (dir / "config.json").string();
    ASSERT_EQ(cli({"audit", "--config", config, "--seed", "4", "--out", (dir / "a").string()}).code, kExitOk);
    ASSERT_EQ(cli({"audit", "--config", config, "--seed", "4", "--out", (dir / "b").string()}).code, kExitOk);
    EXPECT_EQ(testing::directory_contents(dir / "a"), testing::directory_contents(dir / "b"));
    ASSERT_EQ(cli({"audit", "--config", config, "--seed", "5", "--out", (dir / "c").string()}).code, kExitOk);
    EXPECT_NE(testing::directory_contents(dir / "a"), testing::directory_contents(dir / "c"));
}

TEST(Cli, ReportRerendersJson) {
    const auto dir = testing::audit_fixture("rerender", 4);
    ASSERT_EQ(cli({"audit", "--config", (dir / "config.json").string()}).code, kExitOk);
    const CliRun r = cli({"report", "--input", (dir / "out" / "report.json").string(), "--format", "csv"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.out, read_file(dir / "out" / "report.csv"));
}

TEST(Cli, IngestCsvWithSchema) {
    const auto dir = testing::fresh_dir("csv");
    write_file(dir / "c.csv", "name,label,body\nt1,Time,\"x = 1;\"\nt2,UC,y();\n");
    write_file(dir / "schema.json", R"({"id":"name","category":"label","code":"body"})");
    const CliRun r = cli({"ingest", "--input", (dir / "c.csv").string(), "--schema", (dir / "schema.json").string(),
                       "--out", (dir / "o").string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(read_file(dir / "o" / "corpus.jsonl"),
              "{\"id\":\"t1\",\"origin_id\":\"t1\",\"version\":0,\"category\":\"Time\",\"code\":\"x = 1;\"}\n"
              "{\"id\":\"t2\",\"origin_id\":\"t2\",\"version\":0,\"category\":\"UC\",\"code\":\"y();\"}\n");
}

TEST(Cli, EnvironmentSeedUsedWithoutFlag) {
    const auto dir = testing::audit_fixture("envseed", 4);
    const std::string config = (dir / "config.json").string();
    ::setenv("AUGAUDIT_SEED", "4", 1);
    ASSERT_EQ(cli({"audit", "--config", config, "--out", (dir / "env").string()}).code, kExitOk);
    ::unsetenv("AUGAUDIT_SEED");
    ASSERT_EQ(cli({"audit", "--config", config, "--seed", "4", "--out", (dir / "flag").string()}).code, kExitOk);
    EXPECT_EQ(testing::directory_contents(dir / "env"), testing::directory_contents(dir / "flag"));
}

}  // namespace
}  // namespace augaudit
