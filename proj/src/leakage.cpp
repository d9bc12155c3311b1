// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The augaudit Authors

#include "augaudit/leakage.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

#include "augaudit/error.hpp"
#include "augaudit/rng.hpp"
#include "parallel.hpp"

namespace augaudit {

std::vector<std::string> normalize_tokens(const std::vector<Token>& tokens) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) {
        switch (t.kind) {
            case TokenKind::Whitespace:
            case TokenKind::Comment:
                break;
            case TokenKind::Identifier: out.emplace_back("ID"); break;
            case TokenKind::StringLiteral: out.emplace_back("STR"); break;
            case TokenKind::Number: out.emplace_back("NUM"); break;
            default: out.push_back(t.text);
        }
    }
    return out;
}

Fingerprint fingerprint_tokens(std::string case_id, const std::vector<std::string>& normalized,
                               std::size_t width) {
    if (width < 1) throw LeakageError("shingle width must be >= 1");
    Fingerprint fp{std::move(case_id), width, {}};
    if (normalized.size() < width) return fp;
    fp.shingles.reserve(normalized.size() - width + 1);
    for (std::size_t i = 0; i + width <= normalized.size(); ++i) {
        std::uint64_t h = kFnvOffset;
        for (std::size_t j = 0; j < width; ++j) {
            if (j > 0) h = fnv1a64("\x1f", h);
            h = fnv1a64(normalized[i + j], h);
        }
        fp.shingles.push_back(h);
    }
    std::sort(fp.shingles.begin(), fp.shingles.end());
    fp.shingles.erase(std::unique(fp.shingles.begin(), fp.shingles.end()), fp.shingles.end());
    return fp;
}

Fingerprint fingerprint(const TestCase& test_case, std::size_t width) {
    // An unlexable case fingerprints its single raw token, which still
    // matches an identical copy.
    const TokenStream lexed = tokenize(test_case.code);
    return fingerprint_tokens(test_case.id, normalize_tokens(lexed.tokens), width);
}

double similarity(const Fingerprint& a, const Fingerprint& b) {
    if (a.width != b.width) {
        throw LeakageError("fingerprints use different widths (" + std::to_string(a.width) + " vs " +
                           std::to_string(b.width) + ")");
    }
    if (a.shingles.empty() && b.shingles.empty()) return a.case_id == b.case_id ? 1.0 : 0.0;
    std::size_t common = 0;
    auto i = a.shingles.begin();
    auto j = b.shingles.begin();
    while (i != a.shingles.end() && j != b.shingles.end()) {
        if (*i < *j) {
            ++i;
        } else if (*j < *i) {
            ++j;
        } else {
            ++common;
            ++i;
            ++j;
        }
    }
    const std::size_t unioned = a.shingles.size() + b.shingles.size() - common;
    return static_cast<double>(common) / static_cast<double>(unioned);
}

LeakReport detect_leaks(const std::vector<std::string>& train, const std::vector<std::string>& test,
                        const Corpus& corpus, double threshold, std::size_t width) {
    if (!(threshold > 0.0 && threshold <= 1.0)) {
        throw LeakageError("threshold must lie in (0, 1], got " + std::to_string(threshold));
    }
    auto resolve = [&](const std::vector<std::string>& ids) {
        std::vector<const TestCase*> cases;
        cases.reserve(ids.size());
        for (const auto& id : ids) {
            const TestCase* c = corpus.find(id);
            if (c == nullptr) throw LeakageError("unknown id '" + id + "'");
            cases.push_back(c);
        }
        return cases;
    };
    const auto train_cases = resolve(train);
    const auto test_cases = resolve(test);

    std::vector<Fingerprint> train_fp(train_cases.size());
    std::vector<Fingerprint> test_fp(test_cases.size());
    detail::parallel_for(train_cases.size(),
                         [&](std::size_t i) { train_fp[i] = fingerprint(*train_cases[i], width); });
    detail::parallel_for(test_cases.size(),
                         [&](std::size_t i) { test_fp[i] = fingerprint(*test_cases[i], width); });

    struct Partial {
        std::vector<LeakFinding> findings;
        std::size_t compared = 0;
        std::size_t pruned = 0;
    };
    std::vector<Partial> rows(train_cases.size());
    detail::parallel_for(train_cases.size(), [&](std::size_t i) {
        Partial& row = rows[i];
        const auto& fa = train_fp[i];
        for (std::size_t j = 0; j < test_cases.size(); ++j) {
            const auto& fb = test_fp[j];
            const bool same_group = train_cases[i]->origin_id == test_cases[j]->origin_id;
            const auto small = std::min(fa.shingles.size(), fb.shingles.size());
            const auto large = std::max(fa.shingles.size(), fb.shingles.size());
            // Jaccard <= small / large
            if (!same_group && large > 0 &&
                static_cast<double>(small) < threshold * static_cast<double>(large)) {
                ++row.pruned;
                continue;
            }
            ++row.compared;
            const double s = similarity(fa, fb);
            if (s >= threshold || same_group) {
                row.findings.push_back({train_cases[i]->id, test_cases[j]->id, s, same_group});
            }
        }
    });

    LeakReport report;
    for (auto& row : rows) {
        report.pairs_compared += row.compared;
        report.pairs_pruned += row.pruned;
        std::move(row.findings.begin(), row.findings.end(), std::back_inserter(report.findings));
    }
    std::sort(report.findings.begin(), report.findings.end(),
              [](const LeakFinding& x, const LeakFinding& y) {
                  if (x.similarity != y.similarity) return x.similarity > y.similarity;
                  if (x.a != y.a) return x.a < y.a;
                  return x.b < y.b;
              });
    return report;
}

std::string leaks_to_jsonl(const LeakReport& report) {
    std::string out;
    for (const auto& f : report.findings) {
        nlohmann::ordered_json rec;
        rec["a"] = f.a;
        rec["b"] = f.b;
        rec["similarity"] = f.similarity;
        rec["provenance_leak"] = f.provenance_leak;
        out += rec.dump();
        out += '\n';
    }
    return out;
}

}  // namespace augaudit
