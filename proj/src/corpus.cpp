// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The augaudit Authors

#include "augaudit/corpus.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "augaudit/error.hpp"
#include "augaudit/splitter.hpp"

namespace augaudit {

const std::vector<std::string>& flakycat_labels() {
    static const std::vector<std::string> labels{"Async", "UC", "Conc", "Time", "TOD"};
    return labels;
}

std::string_view to_string(ViolationKind kind) noexcept {
    switch (kind) {
        case ViolationKind::EmptyId: return "empty_id";
        case ViolationKind::DuplicateId: return "duplicate_id";
        case ViolationKind::NegativeVersion: return "negative_version";
        case ViolationKind::OriginMismatch: return "origin_mismatch";
        case ViolationKind::DanglingVariant: return "dangling_variant";
        case ViolationKind::NestedVariant: return "nested_variant";
        case ViolationKind::UnknownCategory: return "unknown_category";
        case ViolationKind::CategoryMismatch: return "category_mismatch";
    }
    return "unknown";
}

Corpus Corpus::assemble(std::vector<TestCase> cases, const LabelPolicy& policy) {
    Corpus corpus;
    std::stable_sort(cases.begin(), cases.end(),
                     [](const TestCase& a, const TestCase& b) { return a.id < b.id; });
    corpus.cases_ = std::move(cases);
    corpus.closed_ = policy.closed;

    for (std::size_t i = 0; i < corpus.cases_.size(); ++i) {
        corpus.index_.emplace(corpus.cases_[i].id, i);  // first occurrence wins
    }

    corpus.labels_ = policy.labels;
    if (!policy.closed) {
        std::set<std::string> extra;
        for (const auto& c : corpus.cases_) {
            if (std::find(corpus.labels_.begin(), corpus.labels_.end(), c.category) ==
                corpus.labels_.end()) {
                extra.insert(c.category);
            }
        }
        corpus.labels_.insert(corpus.labels_.end(), extra.begin(), extra.end());
    }

    for (const auto& c : corpus.cases_) {
        if (c.version == 0) corpus.provenance_[c.id];
    }
    std::vector<const TestCase*> variants;
    for (const auto& c : corpus.cases_) {
        if (c.version >= 1) variants.push_back(&c);
    }
    std::stable_sort(variants.begin(), variants.end(), [](const TestCase* a, const TestCase* b) {
        return a->version < b->version;
    });
    for (const TestCase* v : variants) {
        auto it = corpus.provenance_.find(v->origin_id);
        if (it != corpus.provenance_.end()) it->second.push_back(v->id);
    }
    return corpus;
}

Corpus Corpus::build(std::vector<TestCase> cases, const LabelPolicy& policy) {
    Corpus corpus = assemble(std::move(cases), policy);
    const ValidationReport report = validate_corpus(corpus);
    if (!report.ok()) {
        const Violation& first = report.violations.front();
        throw CorpusError(first.message);
    }
    return corpus;
}

const TestCase* Corpus::find(std::string_view id) const {
    auto it = index_.find(id);
    return it == index_.end() ? nullptr : &cases_[it->second];
}

const TestCase& Corpus::at(std::string_view id) const {
    if (const TestCase* c = find(id)) return *c;
    throw CorpusError("unknown case id '" + std::string(id) + "'");
}

std::vector<std::string> Corpus::labels_present() const {
    std::set<std::string_view> seen;
    for (const auto& c : cases_) seen.insert(c.category);
    std::vector<std::string> out;
    for (const auto& label : labels_) {
        if (seen.count(label) != 0) out.push_back(label);
    }
    return out;
}

const std::vector<std::string>& Corpus::variants_of(std::string_view origin_id) const {
    static const std::vector<std::string> none;
    auto it = provenance_.find(origin_id);
    return it == provenance_.end() ? none : it->second;
}

std::vector<std::string> Corpus::original_ids() const {
    std::vector<std::string> ids;
    for (const auto& c : cases_) {
        if (c.version == 0) ids.push_back(c.id);
    }
    return ids;
}

int Corpus::max_version() const noexcept {
    int v = 0;
    for (const auto& c : cases_) v = std::max(v, c.version);
    return v;
}

ValidationReport validate_corpus(const Corpus& corpus) {
    ValidationReport report;
    auto add = [&](ViolationKind kind, const TestCase& c, std::string message) {
        report.violations.push_back({kind, c.id, std::move(message)});
    };
    const auto& labels = corpus.labels();
    const auto& cases = corpus.cases();

    for (std::size_t i = 0; i < cases.size(); ++i) {
        const TestCase& c = cases[i];
        if (c.id.empty()) {
            add(ViolationKind::EmptyId, c, "case with empty id");
            continue;
        }
        if (i > 0 && cases[i - 1].id == c.id) {
            add(ViolationKind::DuplicateId, c, "duplicate id '" + c.id + "'");
            continue;
        }
        if (c.version < 0) {
            add(ViolationKind::NegativeVersion, c,
                "case '" + c.id + "' has negative version " + std::to_string(c.version));
            continue;
        }
        if (std::find(labels.begin(), labels.end(), c.category) == labels.end()) {
            add(ViolationKind::UnknownCategory, c,
                "case '" + c.id + "' has unknown category '" + c.category + "'");
        }
        if (c.version == 0) {
            if (c.origin_id != c.id) {
                add(ViolationKind::OriginMismatch, c,
                    "original '" + c.id + "' has origin_id '" + c.origin_id + "'");
            }
            continue;
        }
        const TestCase* origin = corpus.find(c.origin_id);
        if (origin == nullptr) {
            add(ViolationKind::DanglingVariant, c,
                "dangling variant '" + c.id + "': origin '" + c.origin_id + "' not found");
        } else if (origin->version != 0) {
            add(ViolationKind::NestedVariant, c,
                "variant '" + c.id + "' derives from variant '" + origin->id + "'");
        } else if (origin->category != c.category) {
            add(ViolationKind::CategoryMismatch, c,
                "variant '" + c.id + "' has category '" + c.category + "' but origin '" +
                    origin->id + "' has '" + origin->category + "'");
        }
    }
    return report;
}

Corpus register_variant(const Corpus& corpus, TestCase variant) {
    if (variant.version < 1) {
        throw CorpusError("variant '" + variant.id + "' must have version >= 1");
    }
    if (corpus.contains(variant.id)) {
        throw CorpusError("id collision: '" + variant.id + "' already exists");
    }
    const TestCase* origin = corpus.find(variant.origin_id);
    if (origin == nullptr) {
        throw CorpusError("dangling variant '" + variant.id + "': origin '" + variant.origin_id +
                          "' not found");
    }
    if (origin->version != 0) {
        throw CorpusError("variant '" + variant.id + "' derives from variant '" + origin->id + "'");
    }
    if (variant.category.empty()) {
        variant.category = origin->category;
    } else if (variant.category != origin->category) {
        throw CorpusError("category mismatch: variant '" + variant.id + "' is '" + variant.category +
                          "' but origin '" + origin->id + "' is '" + origin->category + "'");
    }
    std::vector<TestCase> cases = corpus.cases();
    cases.push_back(std::move(variant));
    return Corpus::build(std::move(cases), corpus.policy());
}

CountsTable::CountsTable(std::vector<std::string> categories, std::vector<std::string> sets,
                         int max_version)
    : categories_(std::move(categories)),
      sets_(std::move(sets)),
      max_version_(std::max(0, max_version)),
      cells_(categories_.size() * sets_.size() * static_cast<std::size_t>(max_version_ + 1), 0) {}

std::size_t CountsTable::offset(std::size_t category, std::size_t set, int version) const {
    if (category >= categories_.size() || set >= sets_.size() || version < 0 ||
        version > max_version_) {
        throw CorpusError("counts table index out of range");
    }
    const auto versions = static_cast<std::size_t>(max_version_ + 1);
    return (category * sets_.size() + set) * versions + static_cast<std::size_t>(version);
}

std::size_t CountsTable::index_of(const std::vector<std::string>& names,
                                  std::string_view name) const {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw CorpusError("counts table has no row/column '" + std::string(name) + "'");
    return static_cast<std::size_t>(it - names.begin());
}

std::size_t CountsTable::at(std::size_t category, std::size_t set, int version) const {
    return cells_[offset(category, set, version)];
}

std::size_t& CountsTable::at(std::size_t category, std::size_t set, int version) {
    return cells_[offset(category, set, version)];
}

std::size_t CountsTable::at(std::string_view category, std::string_view set, int version) const {
    return at(index_of(categories_, category), index_of(sets_, set), version);
}

std::size_t CountsTable::row_total(std::size_t category, std::size_t set) const {
    std::size_t total = 0;
    for (int v = 0; v <= max_version_; ++v) total += at(category, set, v);
    return total;
}

std::size_t CountsTable::column_total(std::size_t set, int version) const {
    std::size_t total = 0;
    for (std::size_t c = 0; c < categories_.size(); ++c) total += at(c, set, version);
    return total;
}

std::size_t CountsTable::set_total(std::size_t set) const {
    std::size_t total = 0;
    for (std::size_t c = 0; c < categories_.size(); ++c) total += row_total(c, set);
    return total;
}

std::size_t CountsTable::grand_total() const {
    return std::accumulate(cells_.begin(), cells_.end(), std::size_t{0});
}

std::string CountsTable::to_csv() const {
    std::ostringstream out;
    out << "Category";
    for (const auto& s : sets_) {
        out << ',' << s << " Total";
        for (int v = 0; v <= max_version_; ++v) out << ',' << s << " v" << v;
    }
    out << '\n';
    auto row = [&](auto&& label, auto&& total_of, auto&& cell_of) {
        out << label;
        for (std::size_t s = 0; s < sets_.size(); ++s) {
            out << ',' << total_of(s);
            for (int v = 0; v <= max_version_; ++v) out << ',' << cell_of(s, v);
        }
        out << '\n';
    };
    for (std::size_t c = 0; c < categories_.size(); ++c) {
        row(categories_[c], [&](std::size_t s) { return row_total(c, s); },
            [&](std::size_t s, int v) { return at(c, s, v); });
    }
    row("Total", [&](std::size_t s) { return set_total(s); },
        [&](std::size_t s, int v) { return column_total(s, v); });
    return out.str();
}

namespace {

std::size_t label_index(const Corpus& corpus, const std::string& category) {
    const auto& labels = corpus.labels();
    auto it = std::find(labels.begin(), labels.end(), category);
    if (it == labels.end()) throw CorpusError("category '" + category + "' not in label set");
    return static_cast<std::size_t>(it - labels.begin());
}

}  // namespace

CountsTable category_counts(const Corpus& corpus) {
    CountsTable table(corpus.labels(), {"all"}, corpus.max_version());
    for (const auto& c : corpus.cases()) {
        ++table.at(label_index(corpus, c.category), 0, c.version);
    }
    return table;
}

CountsTable category_counts(const Corpus& corpus, const SplitPlan& partition) {
    std::vector<std::string> set_names;
    for (const auto& [name, ids] : partition.sets()) set_names.push_back(name);
    CountsTable table(corpus.labels(), set_names, corpus.max_version());
    for (std::size_t s = 0; s < partition.sets().size(); ++s) {
        for (const auto& id : partition.sets()[s].second) {
            const TestCase* c = corpus.find(id);
            if (c == nullptr) {
                throw CorpusError("partition references unknown id '" + id + "'");
            }
            ++table.at(label_index(corpus, c->category), s, c->version);
        }
    }
    return table;
}

}  // namespace augaudit
