// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The augaudit Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "augaudit/augmentor.hpp"
#include "augaudit/classifier.hpp"
#include "augaudit/corpus.hpp"
#include "augaudit/corpus_io.hpp"
#include "augaudit/external.hpp"
#include "augaudit/report.hpp"
#include "augaudit/splitter.hpp"

namespace augaudit {

/*
 * One JSON document with sections corpus, augment, split, classifier,
 * leakage and output (all optional) plus an optional top-level "seed".
 * Unknown keys are rejected. Relative paths resolve against `base_dir`.
 */
struct RunConfig {
    std::filesystem::path base_dir;

    std::string corpus_path;  // as written in the config
    CorpusFormat corpus_format = CorpusFormat::Auto;
    Schema schema;
    LabelPolicy labels;

    bool augment = true;
    MutationConfig mutation;

    double test_fraction = kDefaultTestFraction;
    bool shared_split = true;  // Exp1 and Exp2 draw from one origin split
    bool run_exp1 = true;
    bool run_exp2 = true;
    std::map<std::string, std::size_t> expected_test2;  // optional reference sizes

    ClassifierConfig classifier;

    double leak_threshold = kDefaultLeakThreshold;
    std::size_t shingle_width = kDefaultShingleWidth;
    bool lint = false;  // audit exits non-zero on unexpected leaks

    std::string out_dir = "augaudit-out";
    std::vector<ReportFormat> formats{ReportFormat::Json, ReportFormat::Csv, ReportFormat::PlotData};
    bool weighted_f1 = false;

    std::optional<std::uint64_t> seed;

    std::filesystem::path resolve(const std::string& path) const;
};

/// Throws ConfigError with the offending key.
RunConfig parse_run_config(std::string_view json_text, const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

/// Canonical echo of every setting that affects results; excludes the seed
/// and the output directory.
std::string canonical_config(const RunConfig& config);

/// 16 hex digits of fnv1a64(canonical_config).
std::string config_hash(const RunConfig& config);

/// --seed, then AUGAUDIT_SEED, then the config's seed, then 0.
std::uint64_t resolve_seed(std::optional<std::uint64_t> cli_seed, const RunConfig& config);

std::uint64_t parse_seed(std::string_view text);

struct RunContext {
    RunConfig config;
    std::uint64_t seed = 0;
    std::string config_hash;
    std::filesystem::path out_dir;

    std::uint64_t augment_seed() const;
    std::uint64_t split_seed() const;
    std::uint64_t exp2_split_seed() const;
};

RunContext make_context(RunConfig config, std::optional<std::uint64_t> cli_seed = {},
                        std::optional<std::filesystem::path> out_override = {});

// Stages. Each is usable on its own; run_pipeline composes them.

Corpus stage_ingest(const RunContext& ctx, const std::optional<std::filesystem::path>& input = {});
AugmentResult stage_augment(const RunContext& ctx, const Corpus& corpus);
/// Plans in fixed order: exp1 phase A, exp1 phase B, exp2 (as enabled).
std::vector<SplitPlan> stage_split(const RunContext& ctx, const Corpus& corpus);
std::vector<IntegrityReport> stage_integrity(const Corpus& corpus, const std::vector<SplitPlan>& plans);
std::vector<LeakScan> stage_leakcheck(const RunContext& ctx, const Corpus& corpus,
                                      const std::vector<SplitPlan>& plans);
CentroidModel stage_train(const Corpus& corpus, const SplitPlan& plan);

/// Predictions for every evaluation set of `plan`, keyed by evaluation name.
/// The built-in backend needs `model`; the external backend ignores it.
std::map<std::string, std::vector<PredictionRecord>> stage_predict(const RunContext& ctx,
                                                                   const Corpus& corpus,
                                                                   const SplitPlan& plan,
                                                                   const CentroidModel* model);

/// Cases of one plan set, in the plan's order.
std::vector<TestCase> plan_cases(const Corpus& corpus, const SplitPlan& plan, std::string_view set);

struct AugmentSummary {
    bool ran = false;
    std::size_t variants_added = 0;
    std::vector<SkipRecord> skips;
};

using PredictionSets = std::map<std::string, std::vector<PredictionRecord>>;

/// Scores every evaluation set and collects gaps, findings and warnings.
BiasAuditReport assemble_report(const RunContext& ctx, const Corpus& corpus,
                                const AugmentSummary& augment, const std::vector<SplitPlan>& plans,
                                std::vector<IntegrityReport> integrity, std::vector<LeakScan> leakage,
                                const PredictionSets& predictions);

// Artifact names and formats.

/// "exp1_phaseA", "exp1_phaseB" or "exp2".
std::string plan_stem(Protocol protocol);
/// "<stem>.<set>", e.g. "exp2.test1".
std::string evaluation_name(Protocol protocol, std::string_view set);
/// Evaluation name with '.' replaced by '_'.
std::string artifact_key(std::string_view evaluation_name);

std::string plan_to_json(const SplitPlan& plan, const RunContext& ctx);
SplitPlan plan_from_json(std::string_view text);
std::string model_artifact(const CentroidModel& model, Protocol protocol, const RunContext& ctx);
std::string augment_summary_json(const AugmentSummary& summary, const RunContext& ctx);
AugmentSummary augment_summary_from_json(std::string_view text, std::string_view skips_jsonl);
std::string integrity_artifact(const std::vector<IntegrityReport>& reports, const RunContext& ctx);

/// Writes report files for the configured formats plus manifest.json, which
/// lists every known artifact in the directory with its FNV-1a hash.
void write_report_files(const RunContext& ctx, const BiasAuditReport& report,
                        const std::vector<ReportFormat>& formats);

/// Reads the stage artifacts in `dir` and rebuilds the report.
BiasAuditReport report_from_artifacts(const RunContext& ctx, const std::filesystem::path& dir);

/// Runs every stage and writes all artifacts under ctx.out_dir. Stage
/// failures surface as StageError naming the stage.
BiasAuditReport run_pipeline(const RunContext& ctx);

}  // namespace augaudit
