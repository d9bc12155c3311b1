// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The augaudit Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "augaudit/corpus.hpp"
#include "augaudit/tokenizer.hpp"

namespace augaudit {

inline constexpr std::size_t kDefaultShingleWidth = 5;
inline constexpr double kDefaultLeakThreshold = 0.8;

/// Set of hashed w-token windows over the normalized token stream.
struct Fingerprint {
    std::string case_id;
    std::size_t width = kDefaultShingleWidth;
    std::vector<std::uint64_t> shingles;  // sorted, unique
};

/// Identifiers -> ID, string literals -> STR, numbers -> NUM; whitespace and
/// comments dropped; everything else kept verbatim.
std::vector<std::string> normalize_tokens(const std::vector<Token>& tokens);

/// Shingles are FNV-1a 64 over w consecutive normalized tokens joined by 0x1F.
Fingerprint fingerprint(const TestCase& test_case, std::size_t width = kDefaultShingleWidth);
Fingerprint fingerprint_tokens(std::string case_id, const std::vector<std::string>& normalized,
                               std::size_t width);

/// Jaccard index. Two empty sets score 1 only for the same case id.
double similarity(const Fingerprint& a, const Fingerprint& b);

struct LeakFinding {
    std::string a;  // train side
    std::string b;  // test side
    double similarity = 0.0;
    bool provenance_leak = false;  // same origin group

    friend bool operator==(const LeakFinding&, const LeakFinding&) = default;
};

struct LeakReport {
    std::vector<LeakFinding> findings;  // similarity desc, then (a, b)
    std::size_t pairs_compared = 0;
    std::size_t pairs_pruned = 0;

    bool empty() const noexcept { return findings.empty(); }
};

/*
 * Every (train, test) pair whose similarity reaches `threshold`, plus every
 * pair sharing an origin group whatever its similarity. Pairs whose set
 * sizes bound the Jaccard index below the threshold are not scored.
 */
LeakReport detect_leaks(const std::vector<std::string>& train, const std::vector<std::string>& test,
                        const Corpus& corpus, double threshold = kDefaultLeakThreshold,
                        std::size_t width = kDefaultShingleWidth);

/// One {"a","b","similarity","provenance_leak"} object per line.
std::string leaks_to_jsonl(const LeakReport& report);

}  // namespace augaudit
