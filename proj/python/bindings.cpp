// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The augaudit Authors

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "augaudit/augmentor.hpp"
#include "augaudit/classifier.hpp"
#include "augaudit/corpus.hpp"
#include "augaudit/corpus_io.hpp"
#include "augaudit/error.hpp"
#include "augaudit/leakage.hpp"
#include "augaudit/metrics.hpp"
#include "augaudit/pipeline.hpp"
#include "augaudit/report.hpp"
#include "augaudit/rng.hpp"
#include "augaudit/splitter.hpp"
#include "augaudit/synthetic.hpp"
#include "augaudit/tokenizer.hpp"

namespace py = pybind11;
using namespace augaudit;

namespace {

std::string kind_name(TokenKind k) { return std::string(to_string(k)); }

py::dict plan_dict(const SplitPlan& plan) {
    py::dict sets;
    for (const auto& [name, ids] : plan.sets()) sets[py::str(name)] = ids;
    py::dict d;
    d["protocol"] = std::string(to_string(plan.protocol()));
    d["sets"] = sets;
    d["seed"] = plan.seed();
    d["fraction"] = plan.fraction();
    return d;
}

ScoreTable scores_from(const std::vector<std::pair<std::string, double>>& items) {
    ScoreTable t;
    for (const auto& [k, v] : items) t.push_back({k, v});
    return t;
}

std::vector<std::pair<std::string, double>> scores_to(const ScoreTable& t) {
    std::vector<std::pair<std::string, double>> out;
    for (const auto& s : t) out.emplace_back(s.category, s.value);
    return out;
}

}  // namespace

PYBIND11_MODULE(_augaudit, m) {
    m.doc() = "Augmented-data bias audit: corpus, augmentation, splits, leakage, baseline classifier, metrics";
    m.attr("__version__") = "0.1.0";

    py::register_exception<Error>(m, "AugauditError", PyExc_RuntimeError);

    m.def("fnv1a64", [](const std::string& s) { return fnv1a64(s); });

    py::class_<SplitMix64>(m, "SplitMix64")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def("next", &SplitMix64::next)
        .def("uniform", &SplitMix64::uniform, py::arg("lo"), py::arg("hi"))
        .def_property_readonly("state", &SplitMix64::state);

    py::class_<TestCase>(m, "TestCase")
        .def(py::init([](std::string id, std::string origin_id, int version, std::string category,
                         std::string code) {
                 if (origin_id.empty()) origin_id = id;
                 return TestCase{std::move(id), std::move(origin_id), version, std::move(category),
                                 std::move(code)};
             }),
             py::arg("id"), py::arg("origin_id") = "", py::arg("version") = 0, py::arg("category") = "",
             py::arg("code") = "")
        .def_readwrite("id", &TestCase::id)
        .def_readwrite("origin_id", &TestCase::origin_id)
        .def_readwrite("version", &TestCase::version)
        .def_readwrite("category", &TestCase::category)
        .def_readwrite("code", &TestCase::code)
        .def("__eq__", [](const TestCase& a, const TestCase& b) { return a == b; })
        .def("__repr__", [](const TestCase& c) {
            return "TestCase(id='" + c.id + "', version=" + std::to_string(c.version) + ", category='" +
                   c.category + "')";
        });

    py::class_<Corpus>(m, "Corpus")
        .def(py::init([](std::vector<TestCase> cases, std::vector<std::string> labels, bool closed) {
                 return Corpus::build(std::move(cases), LabelPolicy{std::move(labels), closed});
             }),
             py::arg("cases"), py::arg("labels") = flakycat_labels(), py::arg("closed") = false)
        .def("__len__", &Corpus::size)
        .def_property_readonly("cases", &Corpus::cases)
        .def_property_readonly("labels", &Corpus::labels)
        .def("find", [](const Corpus& c, const std::string& id) -> std::optional<TestCase> {
            if (const auto* p = c.find(id)) return *p;
            return std::nullopt;
        })
        .def("provenance", [](const Corpus& c) {
            std::map<std::string, std::vector<std::string>> out(c.provenance().begin(), c.provenance().end());
            return out;
        })
        .def("original_ids", &Corpus::original_ids);

    m.def("validate_corpus", [](const Corpus& c) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& v : validate_corpus(c).violations) out.emplace_back(std::string(to_string(v.kind)), v.message);
        return out;
    });
    m.def("register_variant", &register_variant, py::arg("corpus"), py::arg("variant"));
    m.def(
        "parse_corpus_jsonl",
        [](const std::string& text) { return parse_corpus_jsonl(text, Schema{}, LabelPolicy::flakycat(false)); },
        py::arg("text"));
    m.def("export_corpus", &export_corpus);
    m.def("category_counts_csv", [](const Corpus& c) { return category_counts(c).to_csv(); });

    m.def("tokenize", [](const std::string& code) {
        std::vector<std::tuple<std::string, std::string, std::size_t, std::size_t>> out;
        for (const auto& t : tokenize(code).tokens) out.emplace_back(kind_name(t.kind), t.text, t.span.start, t.span.end);
        return out;
    });

    py::class_<MutationConfig>(m, "MutationConfig")
        .def(py::init<>())
        .def_readwrite("enable_rename_locals", &MutationConfig::enable_rename_locals)
        .def_readwrite("enable_rename_test_method", &MutationConfig::enable_rename_test_method)
        .def_readwrite("enable_replace_strings", &MutationConfig::enable_replace_strings)
        .def_readwrite("enable_replace_numbers", &MutationConfig::enable_replace_numbers)
        .def_readwrite("enable_insert_unused", &MutationConfig::enable_insert_unused)
        .def_property(
            "insert_count_range",
            [](const MutationConfig& c) { return std::make_pair(c.insert_count_range.min, c.insert_count_range.max); },
            [](MutationConfig& c, std::pair<int, int> r) { c.insert_count_range = {r.first, r.second}; })
        .def_readwrite("variants_per_original", &MutationConfig::variants_per_original)
        .def_readwrite("test_method_pattern", &MutationConfig::test_method_pattern);

    m.def(
        "mutate",
        [](const TestCase& c, const MutationConfig& config, int variant_index, std::uint64_t seed) {
            return apply_mutations(c, plan_mutations(c, config, variant_index, seed));
        },
        py::arg("case"), py::arg("config"), py::arg("variant_index"), py::arg("seed"));
    m.def(
        "augment_corpus",
        [](const Corpus& corpus, const MutationConfig& config, std::uint64_t seed) {
            auto r = augment_corpus(corpus, config, seed);
            std::vector<std::pair<std::string, std::string>> skips;
            for (const auto& s : r.skips) skips.emplace_back(s.id, s.reason);
            return py::make_tuple(std::move(r.corpus), skips);
        },
        py::arg("corpus"), py::arg("config"), py::arg("seed"));

    m.def(
        "split_originals",
        [](const Corpus& corpus, double fraction, std::uint64_t seed) {
            const auto s = split_originals(corpus, fraction, seed);
            return py::make_tuple(std::vector<std::string>(s.train_origins.begin(), s.train_origins.end()),
                                  std::vector<std::string>(s.test_origins.begin(), s.test_origins.end()));
        },
        py::arg("corpus"), py::arg("fraction") = kDefaultTestFraction, py::arg("seed") = 0);
    m.def(
        "build_plans",
        [](const Corpus& corpus, double fraction, std::uint64_t seed) {
            const auto s = split_originals(corpus, fraction, seed);
            const auto e1 = build_experiment1(corpus, s);
            py::list plans;
            plans.append(plan_dict(e1.phase_a));
            plans.append(plan_dict(e1.phase_b));
            plans.append(plan_dict(build_experiment2(corpus, s)));
            return plans;
        },
        py::arg("corpus"), py::arg("fraction") = kDefaultTestFraction, py::arg("seed") = 0,
        "Exp1 phase A, Exp1 phase B and Exp2 plans built from one origin split.");
    m.def(
        "integrity_violations",
        [](const Corpus& corpus, const std::string& protocol, const std::vector<std::pair<std::string, std::vector<std::string>>>& sets) {
            const SplitPlan plan(parse_protocol(protocol), sets, 0, kDefaultTestFraction);
            std::vector<std::string> out;
            for (const auto& f : verify_group_integrity(plan, corpus).findings) out.push_back(f.message);
            return out;
        },
        py::arg("corpus"), py::arg("protocol"), py::arg("sets"));

    m.def(
        "similarity",
        [](const std::string& a, const std::string& b, std::size_t w) {
            return similarity(fingerprint(TestCase{"a", "a", 0, "", a}, w), fingerprint(TestCase{"b", "b", 0, "", b}, w));
        },
        py::arg("a"), py::arg("b"), py::arg("w") = kDefaultShingleWidth);
    m.def(
        "detect_leaks",
        [](const std::vector<std::string>& train, const std::vector<std::string>& test, const Corpus& corpus,
           double threshold, std::size_t w) {
            py::list out;
            for (const auto& f : detect_leaks(train, test, corpus, threshold, w).findings) {
                py::dict d;
                d["a"] = f.a;
                d["b"] = f.b;
                d["similarity"] = f.similarity;
                d["provenance_leak"] = f.provenance_leak;
                out.append(d);
            }
            return out;
        },
        py::arg("train"), py::arg("test"), py::arg("corpus"), py::arg("threshold") = kDefaultLeakThreshold,
        py::arg("w") = kDefaultShingleWidth);

    m.def("featurize", [](const std::string& code) {
        const auto f = featurize_code(code);
        return std::map<std::string, std::size_t>(f.begin(), f.end());
    });

    py::class_<CentroidModel>(m, "CentroidModel")
        .def_readonly("labels", &CentroidModel::labels)
        .def("predict", [](const CentroidModel& model, const std::string& code) {
            const auto p = predict_features(model, featurize_code(code));
            return py::make_tuple(p.category, p.degenerate);
        })
        .def("to_json", &model_to_json);
    m.def(
        "train",
        [](const std::vector<TestCase>& cases, const std::vector<std::string>& order) { return train(cases, order); },
        py::arg("cases"), py::arg("label_order") = std::vector<std::string>{});

    m.def(
        "f1_per_category",
        [](const std::vector<std::pair<std::string, std::string>>& gold,
           const std::vector<std::pair<std::string, std::string>>& predicted, const std::vector<std::string>& labels) {
            std::vector<LabeledId> g, p;
            for (const auto& [id, c] : gold) g.push_back({id, c});
            for (const auto& [id, c] : predicted) p.push_back({id, c});
            return scores_to(f1_per_category(confusion(g, p, labels)));
        },
        py::arg("gold"), py::arg("predicted"), py::arg("labels") = std::vector<std::string>{});
    m.def("macro_f1", [](const std::vector<std::pair<std::string, double>>& s) { return macro_f1(scores_from(s)); });
    m.def(
        "gap_table_csv",
        [](const std::vector<std::pair<std::string, double>>& set1, const std::vector<std::pair<std::string, double>>& set2) {
            BiasAuditReport r;
            r.gaps.push_back({"gap", "Set1", "Set2", bias_gap(scores_from(set1), scores_from(set2))});
            return render_report(r, ReportFormat::Csv);
        },
        py::arg("set1"), py::arg("set2"), "Category,Set1,Set2,Difference table with an Average row.");
    m.def("percent", &percent);
    m.def("signed_percent", &signed_percent);

    m.def(
        "synthetic_corpus",
        [](std::size_t per_label, std::uint64_t seed) {
            SyntheticOptions o;
            o.originals_per_label = per_label;
            return synthetic_corpus(o, seed);
        },
        py::arg("per_label") = 30, py::arg("seed") = 1);

    m.def(
        "run_audit",
        [](const std::string& config_path, std::optional<std::uint64_t> seed, std::optional<std::string> out) {
            std::optional<std::filesystem::path> out_dir;
            if (out) out_dir = *out;
            const auto ctx = make_context(load_run_config(config_path), seed, out_dir);
            py::gil_scoped_release release;
            return render_report(run_pipeline(ctx), ReportFormat::Json);
        },
        py::arg("config"), py::arg("seed") = py::none(), py::arg("out") = py::none(),
        "Runs the full pipeline and returns the JSON report.");
}
