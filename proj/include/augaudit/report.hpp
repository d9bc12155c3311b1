// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The augaudit Authors

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "augaudit/augmentor.hpp"
#include "augaudit/leakage.hpp"
#include "augaudit/metrics.hpp"
#include "augaudit/splitter.hpp"

namespace augaudit {

inline constexpr std::string_view kReportSchema = "augaudit/1";

/// Scores of one evaluation set, e.g. "exp2.test1".
struct EvaluationResult {
    std::string name;
    std::string protocol;
    std::string set;
    std::size_t train_size = 0;
    ConfusionTable confusion;
    ScoreTable f1;
    double macro_f1 = 0.0;
    double weighted_f1 = 0.0;
    std::size_t degenerate_predictions = 0;
};

/// Compares two evaluation sets; gaps are set2 - set1.
struct GapSection {
    std::string name;
    std::string set1;
    std::string set2;
    GapTable table;
};

struct LeakScan {
    std::string protocol;
    std::string train_set;
    std::string test_set;
    /// The protocol puts these groups on both sides on purpose (Exp2 test2).
    bool expected = false;
    LeakReport report;
};

struct BiasAuditReport {
    std::string config_hash;
    std::uint64_t seed = 0;
    std::string config_json = "{}";  // canonical echo of the run config
    bool include_weighted = false;
    std::vector<EvaluationResult> evaluations;
    std::vector<GapSection> gaps;
    std::vector<IntegrityReport> integrity;
    std::vector<LeakScan> leakage;
    std::vector<SkipRecord> augmentation_skips;
    std::size_t variants_added = 0;
    std::vector<std::string> warnings;

    /// Leak findings outside expected scans.
    std::size_t unexpected_leaks() const;
};

enum class ReportFormat { Json, Csv, PlotData };

ReportFormat parse_report_format(std::string_view name);
std::string_view to_string(ReportFormat format) noexcept;
std::string_view file_name(ReportFormat format) noexcept;

/// Fills f1 / macro / weighted from the confusion table.
EvaluationResult make_evaluation(std::string name, std::string protocol, std::string set,
                                 std::size_t train_size, ConfusionTable table,
                                 std::size_t degenerate = 0);

/// Throws MetricsError when any stored average, gap or F1 differs from its
/// recomputation from the report's own rows.
void check_report_consistency(const BiasAuditReport& report);

/*
 * json: the full canonical report.
 * csv: one block per gap section, blocks separated by a blank line:
 *   Category,<set1>,<set2>,Difference / rows / Average row, integer percent.
 * plotdata: one block per gap section: category,<set1>,<set2> raw F1.
 * Every render runs check_report_consistency first.
 */
std::string render_report(const BiasAuditReport& report, ReportFormat format);

BiasAuditReport report_from_json(std::string_view text);

std::string integrity_to_json(const std::vector<IntegrityReport>& reports);

}  // namespace augaudit
