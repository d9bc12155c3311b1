// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The augaudit Authors

#include "augaudit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "augaudit/error.hpp"

namespace augaudit {

ConfusionTable::ConfusionTable(std::vector<std::string> labels)
    : labels_(std::move(labels)), cells_(labels_.size() * labels_.size(), 0) {}

std::size_t ConfusionTable::at(std::size_t gold, std::size_t predicted) const {
    if (gold >= size() || predicted >= size()) throw MetricsError("confusion index out of range");
    return cells_[gold * size() + predicted];
}

std::size_t& ConfusionTable::at(std::size_t gold, std::size_t predicted) {
    if (gold >= size() || predicted >= size()) throw MetricsError("confusion index out of range");
    return cells_[gold * size() + predicted];
}

std::size_t ConfusionTable::index_of(std::string_view label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw MetricsError("unknown label '" + std::string(label) + "'");
    return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t ConfusionTable::at(std::string_view gold, std::string_view predicted) const {
    return at(index_of(gold), index_of(predicted));
}

std::size_t ConfusionTable::total() const noexcept {
    std::size_t sum = 0;
    for (auto c : cells_) sum += c;
    return sum;
}

std::size_t ConfusionTable::gold_count(std::size_t label) const {
    std::size_t sum = 0;
    for (std::size_t p = 0; p < size(); ++p) sum += at(label, p);
    return sum;
}

std::size_t ConfusionTable::predicted_count(std::size_t label) const {
    std::size_t sum = 0;
    for (std::size_t g = 0; g < size(); ++g) sum += at(g, label);
    return sum;
}

ConfusionTable confusion(const std::vector<LabeledId>& gold, const std::vector<LabeledId>& predicted,
                         const std::vector<std::string>& labels) {
    std::map<std::string_view, std::string_view> pred_by_id;
    for (const auto& p : predicted) {
        if (!pred_by_id.emplace(p.id, p.category).second) {
            throw MetricsError("id mismatch: '" + p.id + "' predicted twice");
        }
    }
    std::set<std::string_view> gold_ids;
    for (const auto& g : gold) {
        if (!gold_ids.insert(g.id).second) throw MetricsError("id mismatch: '" + g.id + "' listed twice");
        if (pred_by_id.count(g.id) == 0) throw MetricsError("id mismatch: no prediction for '" + g.id + "'");
    }
    if (gold_ids.size() != pred_by_id.size()) {
        for (const auto& [id, _] : pred_by_id) {
            if (gold_ids.count(id) == 0) {
                throw MetricsError("id mismatch: prediction for unknown id '" + std::string(id) + "'");
            }
        }
    }

    std::vector<std::string> order = labels;
    if (order.empty()) {
        std::set<std::string> seen;
        for (const auto& g : gold) seen.insert(g.category);
        for (const auto& p : predicted) seen.insert(p.category);
        order.assign(seen.begin(), seen.end());
    }
    ConfusionTable table(std::move(order));
    for (const auto& g : gold) {
        ++table.at(table.index_of(g.category), table.index_of(pred_by_id.at(g.id)));
    }
    return table;
}

ScoreTable f1_per_category(const ConfusionTable& table) {
    ScoreTable scores;
    for (std::size_t c = 0; c < table.size(); ++c) {
        const auto tp = static_cast<double>(table.at(c, c));
        const auto fp = static_cast<double>(table.predicted_count(c)) - tp;
        const auto fn = static_cast<double>(table.gold_count(c)) - tp;
        const double precision = tp + fp > 0 ? tp / (tp + fp) : 0.0;
        const double recall = tp + fn > 0 ? tp / (tp + fn) : 0.0;
        const double f1 =
            precision + recall > 0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
        scores.push_back({table.labels()[c], f1});
    }
    return scores;
}

double mean_of(const std::vector<double>& values) {
    if (values.empty()) return 0.0;
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

double macro_f1(const ScoreTable& scores) {
    if (scores.empty()) throw MetricsError("macro F1 of an empty score table");
    std::vector<double> values;
    for (const auto& s : scores) values.push_back(s.value);
    return mean_of(values);
}

double weighted_f1(const ConfusionTable& table) {
    const auto scores = f1_per_category(table);
    const auto total = static_cast<double>(table.total());
    if (total == 0) return 0.0;
    double sum = 0.0;
    for (std::size_t c = 0; c < table.size(); ++c) {
        sum += scores[c].value * static_cast<double>(table.gold_count(c));
    }
    return sum / total;
}

GapTable bias_gap(const ScoreTable& set1, const ScoreTable& set2) {
    std::map<std::string_view, double> second;
    for (const auto& s : set2) second.emplace(s.category, s.value);
    if (second.size() != set2.size() || set1.size() != set2.size()) {
        throw MetricsError("label mismatch between evaluation sets");
    }
    GapTable table;
    std::vector<double> a, b, gaps;
    for (const auto& s : set1) {
        auto it = second.find(s.category);
        if (it == second.end()) {
            throw MetricsError("label mismatch: '" + s.category + "' missing from second set");
        }
        table.rows.push_back({s.category, s.value, it->second, it->second - s.value});
        a.push_back(s.value);
        b.push_back(it->second);
        gaps.push_back(it->second - s.value);
    }
    table.set1_average = mean_of(a);
    table.set2_average = mean_of(b);
    table.average_gap = mean_of(gaps);
    return table;
}

long long percent(double fraction) {
    // the epsilon absorbs representation error such as 0.07999999999999996
    return static_cast<long long>(std::floor(fraction * 100.0 + 0.5 + 1e-9));
}

std::string signed_percent(double fraction) {
    const long long p = percent(fraction);
    return p > 0 ? "+" + std::to_string(p) : std::to_string(p);
}

}  // namespace augaudit
