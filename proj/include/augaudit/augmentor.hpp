// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The augaudit Authors

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "augaudit/corpus.hpp"
#include "augaudit/rng.hpp"
#include "augaudit/tokenizer.hpp"

namespace augaudit {

struct IntRange {
    int min = 0;
    int max = 0;

    bool contains(int v) const noexcept { return v >= min && v <= max; }
    friend bool operator==(const IntRange&, const IntRange&) = default;
};

/// Identifiers tied to timing and synchronization; never renamed.
const std::set<std::string, std::less<>>& default_protected_identifiers();

struct MutationConfig {
    bool enable_rename_locals = true;
    bool enable_rename_test_method = true;
    bool enable_replace_strings = true;
    bool enable_replace_numbers = false;
    bool enable_insert_unused = true;
    IntRange insert_count_range{1, 2};
    std::set<std::string, std::less<>> protected_identifiers = default_protected_identifiers();
    IntRange random_word_length_range{5, 10};
    int variants_per_original = 2;
    /// Glob (only '*' is special) naming the test method when no @Test is present.
    std::string test_method_pattern = "test*";

    /// Throws AugmentError when a range is empty or a count is negative.
    void validate() const;

    friend bool operator==(const MutationConfig&, const MutationConfig&) = default;
};

/// Rename every listed occurrence of identifier `from` to `to`.
struct RenameEdit {
    std::string from;
    std::string to;
    std::vector<Span> occurrences;

    friend bool operator==(const RenameEdit&, const RenameEdit&) = default;
};

/// Replace a literal token (string, or number when enabled).
struct ReplaceEdit {
    Span span;
    std::string original;
    std::string replacement;

    friend bool operator==(const ReplaceEdit&, const ReplaceEdit&) = default;
};

/// Insert an unused declaration at a statement boundary.
struct InsertEdit {
    std::size_t offset = 0;
    std::string text;

    friend bool operator==(const InsertEdit&, const InsertEdit&) = default;
};

using Edit = std::variant<RenameEdit, ReplaceEdit, InsertEdit>;

struct MutationPlan {
    std::string case_id;
    int variant_index = 0;
    std::uint64_t source_hash = 0;  // fnv1a64 of the code the plan was built for
    std::vector<Edit> edits;

    std::size_t insert_count() const;
    bool empty() const noexcept { return edits.empty(); }

    friend bool operator==(const MutationPlan&, const MutationPlan&) = default;
};

/// Lexical facts about one source that drive mutation eligibility.
struct SourceAnalysis {
    std::vector<Token> tokens;
    std::vector<std::size_t> significant;  // indices into tokens
    /// Renamable locals in order of first occurrence.
    std::vector<std::string> eligible_locals;
    /// Token index of the test method's name, if one was found.
    std::optional<std::size_t> test_method_name;
    /// Byte offsets after which a declaration may be inserted.
    std::vector<std::size_t> insertion_points;
    /// Per token: identifier followed by '(' that is not a method declaration.
    std::vector<bool> call_position;
};

/// Requires a cleanly lexed token sequence.
SourceAnalysis analyze_source(std::vector<Token> tokens, const MutationConfig& config);

/*
 * Lowercase alphabetic word with length in `length_range`, not a Java
 * keyword and not in `forbidden`. Draws one length and then one letter per
 * position from `rng` per attempt; throws AugmentError after 1000 attempts.
 */
std::string fresh_word(SplitMix64& rng, IntRange length_range,
                       const std::set<std::string, std::less<>>& forbidden);

/*
 * Deterministic in (global_seed, case.id, variant_index). Random draws happen
 * in this order: one word per eligible local (first-occurrence order), one
 * for the test method, one per literal replacement (source order), then the
 * insertion count and, per insertion, a boundary index, a word and a digit.
 * Throws TokenizeError when the case does not lex.
 */
MutationPlan plan_mutations(const TestCase& test_case, const MutationConfig& config,
                            int variant_index, std::uint64_t global_seed);

/// Id given to variant `index` of `origin_id`.
std::string variant_id(std::string_view origin_id, int index);

/// Throws AugmentError when the plan does not match the case's code.
TestCase apply_mutations(const TestCase& test_case, const MutationPlan& plan);

struct SkipRecord {
    std::string id;
    std::string reason;

    friend bool operator==(const SkipRecord&, const SkipRecord&) = default;
};

struct AugmentResult {
    Corpus corpus;
    std::vector<SkipRecord> skips;
    std::size_t variants_added = 0;
};

/// Adds `variants_per_original` variants to every original. Cases that fail
/// to lex or plan are skipped and recorded; nothing here is fatal except an
/// invalid config.
AugmentResult augment_corpus(const Corpus& corpus, const MutationConfig& config,
                             std::uint64_t global_seed);

/// Skip log as JSONL, one {"id","reason"} object per line.
std::string skips_to_jsonl(const std::vector<SkipRecord>& skips);

bool glob_match(std::string_view pattern, std::string_view text) noexcept;

}  // namespace augaudit
