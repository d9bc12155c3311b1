// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The augaudit Authors

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "augaudit/corpus.hpp"

namespace augaudit {

inline constexpr double kDefaultTestFraction = 0.2;

/// Partition of the original (version-0) cases.
struct OriginSplit {
    std::set<std::string> train_origins;
    std::set<std::string> test_origins;
    std::uint64_t seed = 0;
    double test_fraction = kDefaultTestFraction;
};

enum class Protocol { Exp1PhaseA, Exp1PhaseB, Exp2 };

std::string_view to_string(Protocol protocol) noexcept;
Protocol parse_protocol(std::string_view name);

/// Named id sets produced by one protocol. Set order is fixed by the
/// protocol: (train, test) for experiment 1, (train, test1, test2) for
/// experiment 2. Ids inside each set are in canonical order.
class SplitPlan {
public:
    using NamedSet = std::pair<std::string, std::vector<std::string>>;

    SplitPlan(Protocol protocol, std::vector<NamedSet> sets, std::uint64_t seed, double fraction);

    Protocol protocol() const noexcept { return protocol_; }
    const std::vector<NamedSet>& sets() const noexcept { return sets_; }
    std::vector<NamedSet>& mutable_sets() noexcept { return sets_; }
    std::uint64_t seed() const noexcept { return seed_; }
    double fraction() const noexcept { return fraction_; }

    bool has_set(std::string_view name) const;
    const std::vector<std::string>& set(std::string_view name) const;
    std::vector<std::string> set_names() const;

    /// Every set except "train".
    std::vector<std::string> evaluation_set_names() const;

    friend bool operator==(const SplitPlan&, const SplitPlan&) = default;

private:
    Protocol protocol_;
    std::vector<NamedSet> sets_;
    std::uint64_t seed_;
    double fraction_;
};

/// Number of test origins drawn from a category of size n.
std::size_t stratified_test_count(std::size_t n, double fraction);

/// Stratified random partition of the originals, one stream per category.
OriginSplit split_originals(const Corpus& corpus, double test_fraction, std::uint64_t seed);

struct Experiment1 {
    SplitPlan phase_a;
    SplitPlan phase_b;
};

Experiment1 build_experiment1(const Corpus& corpus, const OriginSplit& split);
SplitPlan build_experiment2(const Corpus& corpus, const OriginSplit& split);

enum class IntegrityKind {
    UnknownId,
    DuplicateMembership,   // id listed in two sets (or twice) of one plan
    GroupSpansSplits,      // experiment 1: origin group on both sides
    VariantInPhaseA,
    Test1OriginInTrain,    // experiment 2
    Test2OriginNotInTrain,
    OriginalInTest2,
    VariantInTrainOrTest1,
};

std::string_view to_string(IntegrityKind kind) noexcept;

struct IntegrityFinding {
    IntegrityKind kind;
    std::string origin_id;
    std::string case_id;
    std::string message;
};

struct IntegrityReport {
    Protocol protocol;
    std::vector<IntegrityFinding> findings;

    bool ok() const noexcept { return findings.empty(); }
};

IntegrityReport verify_group_integrity(const SplitPlan& plan, const Corpus& corpus);

/// Compares achievable test2 sizes per category with externally reported
/// ones. Returns one warning per category whose expected size differs,
/// noting when it exceeds what variants of training origins can supply.
std::vector<std::string> compare_test2_counts(const SplitPlan& plan, const Corpus& corpus,
                                              const std::map<std::string, std::size_t>& expected);

}  // namespace augaudit
