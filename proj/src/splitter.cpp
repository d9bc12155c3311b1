// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The augaudit Authors

#include "augaudit/splitter.hpp"

#include <algorithm>
#include <cmath>

#include "augaudit/error.hpp"
#include "augaudit/rng.hpp"

namespace augaudit {

std::string_view to_string(Protocol protocol) noexcept {
    switch (protocol) {
        case Protocol::Exp1PhaseA: return "Exp1-PhaseA";
        case Protocol::Exp1PhaseB: return "Exp1-PhaseB";
        case Protocol::Exp2: return "Exp2";
    }
    return "unknown";
}

Protocol parse_protocol(std::string_view name) {
    if (name == "Exp1-PhaseA") return Protocol::Exp1PhaseA;
    if (name == "Exp1-PhaseB") return Protocol::Exp1PhaseB;
    if (name == "Exp2") return Protocol::Exp2;
    throw SplitError("unknown protocol '" + std::string(name) + "'");
}

std::string_view to_string(IntegrityKind kind) noexcept {
    switch (kind) {
        case IntegrityKind::UnknownId: return "unknown_id";
        case IntegrityKind::DuplicateMembership: return "duplicate_membership";
        case IntegrityKind::GroupSpansSplits: return "group_spans_splits";
        case IntegrityKind::VariantInPhaseA: return "variant_in_phase_a";
        case IntegrityKind::Test1OriginInTrain: return "test1_origin_in_train";
        case IntegrityKind::Test2OriginNotInTrain: return "test2_origin_not_in_train";
        case IntegrityKind::OriginalInTest2: return "original_in_test2";
        case IntegrityKind::VariantInTrainOrTest1: return "variant_in_train_or_test1";
    }
    return "unknown";
}

SplitPlan::SplitPlan(Protocol protocol, std::vector<NamedSet> sets, std::uint64_t seed,
                     double fraction)
    : protocol_(protocol), sets_(std::move(sets)), seed_(seed), fraction_(fraction) {
    for (auto& [name, ids] : sets_) std::sort(ids.begin(), ids.end());
}

bool SplitPlan::has_set(std::string_view name) const {
    return std::any_of(sets_.begin(), sets_.end(), [&](const NamedSet& s) { return s.first == name; });
}

const std::vector<std::string>& SplitPlan::set(std::string_view name) const {
    for (const auto& s : sets_) {
        if (s.first == name) return s.second;
    }
    throw SplitError("plan " + std::string(to_string(protocol_)) + " has no set '" +
                     std::string(name) + "'");
}

std::vector<std::string> SplitPlan::set_names() const {
    std::vector<std::string> names;
    for (const auto& s : sets_) names.push_back(s.first);
    return names;
}

std::vector<std::string> SplitPlan::evaluation_set_names() const {
    std::vector<std::string> names;
    for (const auto& s : sets_) {
        if (s.first != "train") names.push_back(s.first);
    }
    return names;
}

std::size_t stratified_test_count(std::size_t n, double fraction) {
    const auto rounded = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
    return std::max<std::size_t>(1, rounded);
}

OriginSplit split_originals(const Corpus& corpus, double test_fraction, std::uint64_t seed) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw SplitError("test fraction must lie in (0, 1), got " + std::to_string(test_fraction));
    }
    OriginSplit split;
    split.seed = seed;
    split.test_fraction = test_fraction;

    for (const auto& label : corpus.labels()) {
        std::vector<std::string> members;
        for (const auto& c : corpus.cases()) {
            if (c.version == 0 && c.category == label) members.push_back(c.id);
        }
        if (members.empty()) continue;
        if (members.size() < 2) {
            throw SplitError("category '" + label + "' has " + std::to_string(members.size()) +
                             " original(s); at least 2 are required");
        }
        const std::size_t n_test = stratified_test_count(members.size(), test_fraction);
        if (n_test >= members.size()) {
            throw SplitError("fraction " + std::to_string(test_fraction) + " puts every original of '" +
                             label + "' into the test set");
        }
        // Fisher-Yates over the canonical order, one stream per category.
        SplitMix64 rng(seed ^ fnv1a64(label));
        for (std::size_t i = members.size() - 1; i > 0; --i) {
            std::swap(members[i], members[rng.index(i + 1)]);
        }
        split.test_origins.insert(members.begin(), members.begin() + static_cast<std::ptrdiff_t>(n_test));
        split.train_origins.insert(members.begin() + static_cast<std::ptrdiff_t>(n_test), members.end());
    }
    return split;
}

namespace {

void check_split(const Corpus& corpus, const OriginSplit& split) {
    for (const auto* side : {&split.train_origins, &split.test_origins}) {
        for (const auto& id : *side) {
            const TestCase* c = corpus.find(id);
            if (c == nullptr) throw SplitError("split references unknown id '" + id + "'");
            if (c->version != 0) throw SplitError("split origin '" + id + "' is not an original");
        }
    }
    for (const auto& id : split.train_origins) {
        if (split.test_origins.count(id) != 0) {
            throw SplitError("origin '" + id + "' is on both sides of the split");
        }
    }
}

std::vector<std::string> with_variants(const Corpus& corpus, const std::set<std::string>& origins) {
    std::vector<std::string> ids(origins.begin(), origins.end());
    for (const auto& o : origins) {
        const auto& vs = corpus.variants_of(o);
        ids.insert(ids.end(), vs.begin(), vs.end());
    }
    return ids;
}

std::vector<std::string> variants_only(const Corpus& corpus, const std::set<std::string>& origins) {
    std::vector<std::string> ids;
    for (const auto& o : origins) {
        const auto& vs = corpus.variants_of(o);
        ids.insert(ids.end(), vs.begin(), vs.end());
    }
    return ids;
}

}  // namespace

Experiment1 build_experiment1(const Corpus& corpus, const OriginSplit& split) {
    check_split(corpus, split);
    std::vector<std::string> train(split.train_origins.begin(), split.train_origins.end());
    std::vector<std::string> test(split.test_origins.begin(), split.test_origins.end());
    return Experiment1{
        SplitPlan(Protocol::Exp1PhaseA, {{"train", train}, {"test", test}}, split.seed,
                  split.test_fraction),
        SplitPlan(Protocol::Exp1PhaseB,
                  {{"train", with_variants(corpus, split.train_origins)},
                   {"test", with_variants(corpus, split.test_origins)}},
                  split.seed, split.test_fraction),
    };
}

SplitPlan build_experiment2(const Corpus& corpus, const OriginSplit& split) {
    check_split(corpus, split);
    return SplitPlan(Protocol::Exp2,
                     {{"train", {split.train_origins.begin(), split.train_origins.end()}},
                      {"test1", {split.test_origins.begin(), split.test_origins.end()}},
                      {"test2", variants_only(corpus, split.train_origins)}},
                     split.seed, split.test_fraction);
}

IntegrityReport verify_group_integrity(const SplitPlan& plan, const Corpus& corpus) {
    IntegrityReport report{plan.protocol(), {}};
    auto add = [&](IntegrityKind kind, std::string origin, std::string id, std::string message) {
        report.findings.push_back({kind, std::move(origin), std::move(id), std::move(message)});
    };

    // membership: id -> set index; flags ids listed more than once
    std::map<std::string, std::size_t, std::less<>> where;
    for (std::size_t s = 0; s < plan.sets().size(); ++s) {
        const auto& [name, ids] = plan.sets()[s];
        for (const auto& id : ids) {
            const TestCase* c = corpus.find(id);
            if (c == nullptr) {
                add(IntegrityKind::UnknownId, "", id, "set '" + name + "' lists unknown id '" + id + "'");
                continue;
            }
            auto [it, fresh] = where.emplace(id, s);
            if (!fresh) {
                add(IntegrityKind::DuplicateMembership, c->origin_id, id,
                    "id '" + id + "' appears in '" + plan.sets()[it->second].first + "' and '" + name + "'");
            }
        }
    }

    auto members = [&](std::string_view set_name) -> const std::vector<std::string>& {
        static const std::vector<std::string> none;
        return plan.has_set(set_name) ? plan.set(set_name) : none;
    };

    if (plan.protocol() == Protocol::Exp1PhaseA || plan.protocol() == Protocol::Exp1PhaseB) {
        std::map<std::string, std::set<std::string>> sides;  // origin -> set names
        for (const auto& [name, ids] : plan.sets()) {
            for (const auto& id : ids) {
                const TestCase* c = corpus.find(id);
                if (c == nullptr) continue;
                sides[c->origin_id].insert(name);
                if (plan.protocol() == Protocol::Exp1PhaseA && c->version != 0) {
                    add(IntegrityKind::VariantInPhaseA, c->origin_id, id,
                        "phase A set '" + name + "' contains variant '" + id + "'");
                }
            }
        }
        for (const auto& [origin, names] : sides) {
            if (names.size() > 1) {
                std::string joined;
                for (const auto& n : names) joined += (joined.empty() ? "" : ", ") + n;
                add(IntegrityKind::GroupSpansSplits, origin, origin,
                    "origin group '" + origin + "' spans sets " + joined);
            }
        }
        return report;
    }

    std::set<std::string, std::less<>> train_origins;
    for (const auto& id : members("train")) {
        const TestCase* c = corpus.find(id);
        if (c == nullptr) continue;
        if (c->version != 0) {
            add(IntegrityKind::VariantInTrainOrTest1, c->origin_id, id,
                "variant '" + id + "' in train");
        } else {
            train_origins.insert(c->id);
        }
    }
    for (const auto& id : members("test1")) {
        const TestCase* c = corpus.find(id);
        if (c == nullptr) continue;
        if (c->version != 0) {
            add(IntegrityKind::VariantInTrainOrTest1, c->origin_id, id, "variant '" + id + "' in test1");
        } else if (train_origins.count(c->origin_id) != 0) {
            add(IntegrityKind::Test1OriginInTrain, c->origin_id, id,
                "test1 origin '" + c->origin_id + "' is also in train");
        }
    }
    for (const auto& id : members("test2")) {
        const TestCase* c = corpus.find(id);
        if (c == nullptr) continue;
        if (c->version == 0) {
            add(IntegrityKind::OriginalInTest2, c->origin_id, id, "original '" + id + "' in test2");
        } else if (train_origins.count(c->origin_id) == 0) {
            add(IntegrityKind::Test2OriginNotInTrain, c->origin_id, id,
                "test2 member '" + id + "' has origin '" + c->origin_id + "' outside train");
        }
    }
    return report;
}

std::vector<std::string> compare_test2_counts(const SplitPlan& plan, const Corpus& corpus,
                                              const std::map<std::string, std::size_t>& expected) {
    if (plan.protocol() != Protocol::Exp2) {
        throw SplitError("test2 comparison requires an Exp2 plan");
    }
    std::map<std::string, std::size_t> actual;
    std::map<std::string, std::size_t> train_origins;
    for (const auto& id : plan.set("test2")) ++actual[corpus.at(id).category];
    for (const auto& id : plan.set("train")) ++train_origins[corpus.at(id).category];

    const int per_origin = std::max(1, corpus.max_version());
    std::vector<std::string> warnings;
    for (const auto& [category, want] : expected) {
        const std::size_t have = actual[category];
        if (want == have) continue;
        std::string msg = "test2 '" + category + "': expected " + std::to_string(want) + ", built " +
                          std::to_string(have);
        const std::size_t ceiling = train_origins[category] * static_cast<std::size_t>(per_origin);
        if (want > ceiling) {
            msg += "; exceeds the " + std::to_string(ceiling) + " variants that " +
                   std::to_string(train_origins[category]) +
                   " training origins can supply, so the reference set must include variants of "
                   "non-training origins";
        }
        warnings.push_back(std::move(msg));
    }
    return warnings;
}

}  // namespace augaudit
