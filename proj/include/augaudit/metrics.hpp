// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The augaudit Authors

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace augaudit {

struct LabeledId {
    std::string id;
    std::string category;
};

/// Square count matrix indexed by (gold, predicted) over a label order.
class ConfusionTable {
public:
    ConfusionTable() = default;
    explicit ConfusionTable(std::vector<std::string> labels);

    const std::vector<std::string>& labels() const noexcept { return labels_; }
    std::size_t size() const noexcept { return labels_.size(); }

    std::size_t at(std::size_t gold, std::size_t predicted) const;
    std::size_t& at(std::size_t gold, std::size_t predicted);
    std::size_t at(std::string_view gold, std::string_view predicted) const;
    std::size_t index_of(std::string_view label) const;

    std::size_t total() const noexcept;
    std::size_t gold_count(std::size_t label) const;       // row sum
    std::size_t predicted_count(std::size_t label) const;  // column sum

    friend bool operator==(const ConfusionTable&, const ConfusionTable&) = default;

private:
    std::vector<std::string> labels_;
    std::vector<std::size_t> cells_;
};

/// Gold and predicted must cover the same ids. With an empty `labels`, the
/// label order is every category seen, sorted.
ConfusionTable confusion(const std::vector<LabeledId>& gold, const std::vector<LabeledId>& predicted,
                         const std::vector<std::string>& labels = {});

struct CategoryScore {
    std::string category;
    double value = 0.0;

    friend bool operator==(const CategoryScore&, const CategoryScore&) = default;
};

/// Per-category values in label order.
using ScoreTable = std::vector<CategoryScore>;

/// One-vs-rest F1. A zero denominator makes precision, recall or F1 zero.
ScoreTable f1_per_category(const ConfusionTable& table);

/// Unweighted mean. Throws MetricsError on an empty table.
double macro_f1(const ScoreTable& scores);

/// Mean of per-category F1 weighted by gold support (0 when there is none).
double weighted_f1(const ConfusionTable& table);

struct GapRow {
    std::string category;
    double set1 = 0.0;
    double set2 = 0.0;
    double gap = 0.0;  // set2 - set1; positive favours set2

    friend bool operator==(const GapRow&, const GapRow&) = default;
};

struct GapTable {
    std::vector<GapRow> rows;
    double set1_average = 0.0;
    double set2_average = 0.0;
    double average_gap = 0.0;

    friend bool operator==(const GapTable&, const GapTable&) = default;
};

/// Requires both tables to name the same categories; rows follow `set1`.
GapTable bias_gap(const ScoreTable& set1, const ScoreTable& set2);

/// Mean used for every average in a gap table (0 for no rows).
double mean_of(const std::vector<double>& values);

/// Integer percent, rounded half up (towards +infinity).
long long percent(double fraction);

/// "+8", "0", "-5".
std::string signed_percent(double fraction);

}  // namespace augaudit
