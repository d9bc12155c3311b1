// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The augaudit Authors

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace augaudit {

class SplitPlan;

/// One code sample. version 0 is an original; versions >= 1 are augmented
/// variants whose origin_id names the original they were derived from.
struct TestCase {
    std::string id;
    std::string origin_id;
    int version = 0;
    std::string category;
    std::string code;

    bool is_original() const noexcept { return version == 0; }

    friend bool operator==(const TestCase&, const TestCase&) = default;
};

/// The five FlakyCat root-cause categories, in table order.
const std::vector<std::string>& flakycat_labels();

/// Which labels a corpus accepts. An open policy appends any category seen
/// in the data (lexicographically) after the configured ones.
struct LabelPolicy {
    std::vector<std::string> labels;
    bool closed = false;

    static LabelPolicy open() { return {}; }
    static LabelPolicy flakycat(bool closed = false) { return {flakycat_labels(), closed}; }
};

enum class ViolationKind {
    EmptyId,
    DuplicateId,
    NegativeVersion,
    OriginMismatch,    // version 0 with origin_id != id
    DanglingVariant,   // origin_id names no case
    NestedVariant,     // origin is itself a variant
    UnknownCategory,
    CategoryMismatch,  // variant category differs from its origin
};

std::string_view to_string(ViolationKind kind) noexcept;

struct Violation {
    ViolationKind kind;
    std::string case_id;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
};

/*
 * Immutable collection of test cases in canonical (lexicographic id) order,
 * plus the label set and the origin -> variants provenance registry.
 *
 * `assemble` stores whatever it is given; use `validate_corpus` to inspect
 * it or `Corpus::build` to get a corpus that is guaranteed valid.
 */
class Corpus {
public:
    Corpus() = default;

    static Corpus assemble(std::vector<TestCase> cases, const LabelPolicy& policy = {});

    /// Assembles and throws CorpusError on the first invariant violation.
    static Corpus build(std::vector<TestCase> cases, const LabelPolicy& policy = {});

    const std::vector<TestCase>& cases() const noexcept { return cases_; }
    std::size_t size() const noexcept { return cases_.size(); }
    bool empty() const noexcept { return cases_.empty(); }

    const TestCase* find(std::string_view id) const;
    const TestCase& at(std::string_view id) const;
    bool contains(std::string_view id) const { return find(id) != nullptr; }

    const std::vector<std::string>& labels() const noexcept { return labels_; }
    bool closed_labels() const noexcept { return closed_; }
    LabelPolicy policy() const { return {labels_, closed_}; }

    /// Labels that at least one case carries, in label order.
    std::vector<std::string> labels_present() const;

    /// origin id -> variant ids ordered by (version, id). Every original has
    /// an entry, possibly empty.
    const std::map<std::string, std::vector<std::string>, std::less<>>& provenance() const noexcept {
        return provenance_;
    }
    const std::vector<std::string>& variants_of(std::string_view origin_id) const;

    /// Ids of version-0 cases in canonical order.
    std::vector<std::string> original_ids() const;

    int max_version() const noexcept;

private:
    std::vector<TestCase> cases_;
    std::map<std::string, std::size_t, std::less<>> index_;
    std::vector<std::string> labels_;
    bool closed_ = false;
    std::map<std::string, std::vector<std::string>, std::less<>> provenance_;
};

ValidationReport validate_corpus(const Corpus& corpus);

/// Adds one variant. A variant with an empty category inherits its origin's.
Corpus register_variant(const Corpus& corpus, TestCase variant);

/// Case counts by category x set x version.
class CountsTable {
public:
    CountsTable(std::vector<std::string> categories, std::vector<std::string> sets, int max_version);

    const std::vector<std::string>& categories() const noexcept { return categories_; }
    const std::vector<std::string>& sets() const noexcept { return sets_; }
    int max_version() const noexcept { return max_version_; }

    std::size_t at(std::size_t category, std::size_t set, int version) const;
    std::size_t& at(std::size_t category, std::size_t set, int version);
    std::size_t at(std::string_view category, std::string_view set, int version) const;

    std::size_t row_total(std::size_t category, std::size_t set) const;
    std::size_t column_total(std::size_t set, int version) const;
    std::size_t set_total(std::size_t set) const;
    std::size_t grand_total() const;

    /// CSV shaped like a file-count table: Category, then per set Total, v0..vN.
    std::string to_csv() const;

private:
    std::size_t offset(std::size_t category, std::size_t set, int version) const;
    std::size_t index_of(const std::vector<std::string>& names, std::string_view name) const;

    std::vector<std::string> categories_;
    std::vector<std::string> sets_;
    int max_version_;
    std::vector<std::size_t> cells_;
};

/// Without a partition there is one set named "all".
CountsTable category_counts(const Corpus& corpus);
CountsTable category_counts(const Corpus& corpus, const SplitPlan& partition);

}  // namespace augaudit
