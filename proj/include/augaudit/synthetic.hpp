// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The augaudit Authors

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "augaudit/corpus.hpp"
#include "augaudit/rng.hpp"

namespace augaudit {

/*
 * Seeded generator of Java-like JUnit test methods. Each category owns a
 * vocabulary of call names and types; every case also mixes in words shared
 * by all categories. Each original gets a few made-up "origin words" used
 * only as call names and type names, which augmentation never renames, so
 * its variants keep them.
 */
struct SyntheticOptions {
    std::vector<std::string> labels = flakycat_labels();
    std::size_t originals_per_label = 30;
    int statements_min = 6;
    int statements_max = 12;
    std::size_t origin_words = 4;
    double category_share = 0.5;  // chance a call/type name comes from the category vocabulary
    double origin_share = 0.2;    // chance it is one of the origin words
    double setup_method_share = 0.3;
};

/// One original test method for `category`. Consumes draws from `rng`.
std::string synthetic_code(SplitMix64& rng, const std::string& category,
                           const std::vector<std::string>& origin_words,
                           const SyntheticOptions& options);

/// Made-up lowercase words unlikely to collide with any vocabulary.
std::vector<std::string> synthetic_origin_words(SplitMix64& rng, std::size_t count);

/// Originals only, ids "<label>_<nnn>" (label lowercased), canonical order.
Corpus synthetic_corpus(const SyntheticOptions& options, std::uint64_t seed);

/// Vocabulary of one category. Categories outside the FlakyCat preset get
/// words derived from a hash of their name.
std::vector<std::string> synthetic_vocabulary(const std::string& category);

}  // namespace augaudit
