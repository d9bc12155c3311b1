// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The augaudit Authors

#include "augaudit/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <set>

#include <json.hpp>

#include "augaudit/error.hpp"
#include "augaudit/leakage.hpp"
#include "augaudit/rng.hpp"

namespace augaudit {

namespace fs = std::filesystem;

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

void reject_unknown(const json& section, std::string_view where, std::initializer_list<std::string_view> keys) {
    if (!section.is_object()) throw ConfigError("config section '" + std::string(where) + "' must be an object");
    for (const auto& [key, _] : section.items()) {
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            throw ConfigError("unknown config key '" + std::string(where) + "." + key + "'");
        }
    }
}

template <typename T>
void read(const json& section, std::string_view where, const char* key, T& out) {
    if (!section.contains(key)) return;
    try {
        out = section.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("config key '" + std::string(where) + "." + key + "' has the wrong type");
    }
}

IntRange read_range(const json& section, std::string_view where, const char* key, IntRange fallback) {
    if (!section.contains(key)) return fallback;
    const auto& v = section.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer()) {
        throw ConfigError("config key '" + std::string(where) + "." + key + "' must be [min, max]");
    }
    return {v[0].get<int>(), v[1].get<int>()};
}

std::string_view format_name(CorpusFormat f) {
    switch (f) {
        case CorpusFormat::Auto: return "auto";
        case CorpusFormat::Jsonl: return "jsonl";
        case CorpusFormat::Csv: return "csv";
    }
    return "auto";
}

CorpusFormat parse_format(const std::string& s) {
    if (s == "auto") return CorpusFormat::Auto;
    if (s == "jsonl") return CorpusFormat::Jsonl;
    if (s == "csv") return CorpusFormat::Csv;
    throw ConfigError("unknown corpus format '" + s + "'");
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

void parse_corpus_section(const json& s, RunConfig& c) {
    reject_unknown(s, "corpus", {"path", "format", "schema", "schema_file", "labels", "closed_labels"});
    read(s, "corpus", "path", c.corpus_path);
    if (s.contains("format")) {
        std::string f;
        read(s, "corpus", "format", f);
        c.corpus_format = parse_format(f);
    }
    if (s.contains("schema") && s.contains("schema_file")) {
        throw ConfigError("config sets both corpus.schema and corpus.schema_file");
    }
    if (s.contains("schema")) c.schema = parse_schema(s.at("schema").dump());
    if (s.contains("schema_file")) {
        std::string file;
        read(s, "corpus", "schema_file", file);
        const auto path = c.resolve(file);
        if (!fs::exists(path)) throw ConfigError("schema file not found: " + path.string());
        c.schema = parse_schema(read_file(path));
    }
    if (s.contains("labels")) {
        const auto& l = s.at("labels");
        if (l.is_string() && l.get<std::string>() == "flakycat") {
            c.labels.labels = flakycat_labels();
        } else if (l.is_string() && l.get<std::string>() == "open") {
            c.labels.labels.clear();
        } else {
            read(s, "corpus", "labels", c.labels.labels);
        }
    }
    read(s, "corpus", "closed_labels", c.labels.closed);
    if (c.labels.closed && c.labels.labels.empty()) {
        throw ConfigError("corpus.closed_labels needs a non-empty label list");
    }
}

void parse_augment_section(const json& s, RunConfig& c) {
    reject_unknown(s, "augment",
                   {"enabled", "rename_locals", "rename_test_method", "replace_strings", "replace_numbers",
                    "insert_unused", "insert_count", "word_length", "variants_per_original",
                    "protected_identifiers", "test_method_pattern"});
    auto& m = c.mutation;
    read(s, "augment", "enabled", c.augment);
    read(s, "augment", "rename_locals", m.enable_rename_locals);
    read(s, "augment", "rename_test_method", m.enable_rename_test_method);
    read(s, "augment", "replace_strings", m.enable_replace_strings);
    read(s, "augment", "replace_numbers", m.enable_replace_numbers);
    read(s, "augment", "insert_unused", m.enable_insert_unused);
    m.insert_count_range = read_range(s, "augment", "insert_count", m.insert_count_range);
    m.random_word_length_range = read_range(s, "augment", "word_length", m.random_word_length_range);
    read(s, "augment", "variants_per_original", m.variants_per_original);
    if (s.contains("protected_identifiers")) {
        std::vector<std::string> ids;
        read(s, "augment", "protected_identifiers", ids);
        m.protected_identifiers = {ids.begin(), ids.end()};
    }
    read(s, "augment", "test_method_pattern", m.test_method_pattern);
    try {
        m.validate();
    } catch (const AugmentError& e) {
        throw ConfigError(std::string("augment: ") + e.what());
    }
}

void parse_split_section(const json& s, RunConfig& c) {
    reject_unknown(s, "split", {"test_fraction", "shared", "protocols", "expected_test2"});
    read(s, "split", "test_fraction", c.test_fraction);
    if (!(c.test_fraction > 0.0 && c.test_fraction < 1.0)) {
        throw ConfigError("split.test_fraction must lie in (0, 1)");
    }
    read(s, "split", "shared", c.shared_split);
    if (s.contains("protocols")) {
        std::vector<std::string> protocols;
        read(s, "split", "protocols", protocols);
        c.run_exp1 = c.run_exp2 = false;
        for (const auto& p : protocols) {
            if (p == "exp1") {
                c.run_exp1 = true;
            } else if (p == "exp2") {
                c.run_exp2 = true;
            } else {
                throw ConfigError("unknown protocol '" + p + "' (expected exp1 or exp2)");
            }
        }
        if (!c.run_exp1 && !c.run_exp2) throw ConfigError("split.protocols selects no experiment");
    }
    read(s, "split", "expected_test2", c.expected_test2);
}

void parse_classifier_section(const json& s, RunConfig& c) {
    reject_unknown(s, "classifier",
                   {"backend", "command", "learning_rate", "batch_size", "epochs", "optimizer"});
    auto& k = c.classifier;
    if (s.contains("backend")) {
        std::string b;
        read(s, "classifier", "backend", b);
        if (b == "builtin") {
            k.backend = Backend::Builtin;
        } else if (b == "external") {
            k.backend = Backend::External;
        } else {
            throw ConfigError("unknown classifier backend '" + b + "'");
        }
    }
    read(s, "classifier", "command", k.external_command);
    read(s, "classifier", "learning_rate", k.learning_rate);
    read(s, "classifier", "batch_size", k.batch_size);
    read(s, "classifier", "epochs", k.epochs);
    read(s, "classifier", "optimizer", k.optimizer);
    k.validate();
}

void parse_leakage_section(const json& s, RunConfig& c) {
    reject_unknown(s, "leakage", {"threshold", "shingle_width", "lint"});
    read(s, "leakage", "threshold", c.leak_threshold);
    read(s, "leakage", "shingle_width", c.shingle_width);
    read(s, "leakage", "lint", c.lint);
    if (!(c.leak_threshold > 0.0 && c.leak_threshold <= 1.0)) {
        throw ConfigError("leakage.threshold must lie in (0, 1]");
    }
    if (c.shingle_width == 0) throw ConfigError("leakage.shingle_width must be at least 1");
}

void parse_output_section(const json& s, RunConfig& c) {
    reject_unknown(s, "output", {"dir", "formats", "weighted_f1"});
    read(s, "output", "dir", c.out_dir);
    if (s.contains("formats")) {
        std::vector<std::string> names;
        read(s, "output", "formats", names);
        c.formats.clear();
        for (const auto& n : names) {
            try {
                c.formats.push_back(parse_report_format(n));
            } catch (const MetricsError& e) {
                throw ConfigError(e.what());
            }
        }
    }
    read(s, "output", "weighted_f1", c.weighted_f1);
}

ojson with_provenance(const RunContext& ctx) {
    ojson j;
    j["config_hash"] = ctx.config_hash;
    j["seed"] = ctx.seed;
    return j;
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

template <typename F>
auto in_stage(const char* stage, F&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(stage, e.what());
    }
}

bool known_artifact(const std::string& name) {
    static const std::set<std::string> fixed = {"corpus.jsonl",  "augment.json", "augment_skips.jsonl",
                                                "integrity.json", "report.json",  "report.csv",
                                                "report_plot.csv"};
    if (fixed.count(name) != 0) return true;
    auto has = [&](std::string_view prefix, std::string_view suffix) {
        return name.size() > prefix.size() + suffix.size() && name.starts_with(prefix) &&
               name.ends_with(suffix);
    };
    return has("split_", ".json") || has("leaks_", ".jsonl") || has("model_", ".json") ||
           has("predictions_", ".jsonl");
}

}  // namespace

fs::path RunConfig::resolve(const std::string& path) const {
    fs::path p(path);
    if (p.is_absolute() || base_dir.empty()) return p;
    return base_dir / p;
}

RunConfig parse_run_config(std::string_view json_text, const fs::path& base_dir) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    reject_unknown(root, "config", {"seed", "corpus", "augment", "split", "classifier", "leakage", "output"});

    RunConfig c;
    c.base_dir = base_dir;
    c.labels = LabelPolicy::flakycat(false);
    if (root.contains("seed")) {
        const auto& s = root.at("seed");
        if (s.is_number_unsigned()) {
            c.seed = s.get<std::uint64_t>();
        } else if (s.is_string()) {
            c.seed = parse_seed(s.get<std::string>());
        } else {
            throw ConfigError("config key 'seed' must be a non-negative integer");
        }
    }
    if (root.contains("corpus")) parse_corpus_section(root.at("corpus"), c);
    if (root.contains("augment")) parse_augment_section(root.at("augment"), c);
    if (root.contains("split")) parse_split_section(root.at("split"), c);
    if (root.contains("classifier")) parse_classifier_section(root.at("classifier"), c);
    if (root.contains("leakage")) parse_leakage_section(root.at("leakage"), c);
    if (root.contains("output")) parse_output_section(root.at("output"), c);
    return c;
}

RunConfig load_run_config(const fs::path& path) {
    if (!fs::exists(path)) throw ConfigError("config file not found: " + path.string());
    return parse_run_config(read_file(path), path.parent_path());
}

std::string canonical_config(const RunConfig& c) {
    ojson j;
    ojson corpus;
    corpus["path"] = c.corpus_path;
    corpus["format"] = format_name(c.corpus_format);
    corpus["schema"] = {{"id", c.schema.id},
                        {"origin_id", c.schema.origin_id},
                        {"version", c.schema.version},
                        {"category", c.schema.category},
                        {"code", c.schema.code}};
    corpus["labels"] = c.labels.labels;
    corpus["closed_labels"] = c.labels.closed;
    j["corpus"] = std::move(corpus);

    const auto& m = c.mutation;
    ojson aug;
    aug["enabled"] = c.augment;
    aug["rename_locals"] = m.enable_rename_locals;
    aug["rename_test_method"] = m.enable_rename_test_method;
    aug["replace_strings"] = m.enable_replace_strings;
    aug["replace_numbers"] = m.enable_replace_numbers;
    aug["insert_unused"] = m.enable_insert_unused;
    aug["insert_count"] = {m.insert_count_range.min, m.insert_count_range.max};
    aug["word_length"] = {m.random_word_length_range.min, m.random_word_length_range.max};
    aug["variants_per_original"] = m.variants_per_original;
    aug["protected_identifiers"] = std::vector<std::string>(m.protected_identifiers.begin(),
                                                            m.protected_identifiers.end());
    aug["test_method_pattern"] = m.test_method_pattern;
    j["augment"] = std::move(aug);

    ojson split;
    split["test_fraction"] = c.test_fraction;
    split["shared"] = c.shared_split;
    std::vector<std::string> protocols;
    if (c.run_exp1) protocols.emplace_back("exp1");
    if (c.run_exp2) protocols.emplace_back("exp2");
    split["protocols"] = protocols;
    split["expected_test2"] = ojson::object();
    for (const auto& [k, v] : c.expected_test2) split["expected_test2"][k] = v;
    j["split"] = std::move(split);

    ojson cls;
    cls["backend"] = c.classifier.backend == Backend::Builtin ? "builtin" : "external";
    cls["command"] = c.classifier.external_command;
    cls["learning_rate"] = c.classifier.learning_rate;
    cls["batch_size"] = c.classifier.batch_size;
    cls["epochs"] = c.classifier.epochs;
    cls["optimizer"] = c.classifier.optimizer;
    j["classifier"] = std::move(cls);

    ojson leak;
    leak["threshold"] = c.leak_threshold;
    leak["shingle_width"] = c.shingle_width;
    leak["lint"] = c.lint;
    j["leakage"] = std::move(leak);

    ojson out;
    std::vector<std::string> formats;
    for (auto f : c.formats) formats.emplace_back(to_string(f));
    out["formats"] = formats;
    out["weighted_f1"] = c.weighted_f1;
    j["output"] = std::move(out);
    return j.dump();
}

std::string config_hash(const RunConfig& config) { return hex64(fnv1a64(canonical_config(config))); }

std::uint64_t parse_seed(std::string_view text) {
    std::uint64_t v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (text.empty() || ec != std::errc() || ptr != end) {
        throw ConfigError("seed '" + std::string(text) + "' is not an unsigned 64-bit integer");
    }
    return v;
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> cli_seed, const RunConfig& config) {
    if (cli_seed) return *cli_seed;
    if (const char* env = std::getenv("AUGAUDIT_SEED"); env != nullptr && *env != '\0') {
        return parse_seed(env);
    }
    return config.seed.value_or(0);
}

std::uint64_t RunContext::augment_seed() const { return derive_seed(seed, "augment"); }
std::uint64_t RunContext::split_seed() const { return derive_seed(seed, "split"); }
std::uint64_t RunContext::exp2_split_seed() const { return derive_seed(seed, "split-exp2"); }

RunContext make_context(RunConfig config, std::optional<std::uint64_t> cli_seed,
                        std::optional<fs::path> out_override) {
    RunContext ctx;
    ctx.seed = resolve_seed(cli_seed, config);
    ctx.config_hash = config_hash(config);
    ctx.out_dir = out_override ? *out_override : config.resolve(config.out_dir);
    ctx.config = std::move(config);
    return ctx;
}

Corpus stage_ingest(const RunContext& ctx, const std::optional<fs::path>& input) {
    fs::path path;
    if (input) {
        path = *input;
    } else {
        if (ctx.config.corpus_path.empty()) throw ConfigError("corpus.path is not set");
        path = ctx.config.resolve(ctx.config.corpus_path);
    }
    if (!fs::exists(path)) throw CorpusError("corpus file not found: " + path.string());
    return ingest_corpus(path, ctx.config.schema, ctx.config.labels, ctx.config.corpus_format);
}

AugmentResult stage_augment(const RunContext& ctx, const Corpus& corpus) {
    if (!ctx.config.augment) return {corpus, {}, 0};
    return augment_corpus(corpus, ctx.config.mutation, ctx.augment_seed());
}

std::vector<SplitPlan> stage_split(const RunContext& ctx, const Corpus& corpus) {
    std::vector<SplitPlan> plans;
    const OriginSplit split = split_originals(corpus, ctx.config.test_fraction, ctx.split_seed());
    if (ctx.config.run_exp1) {
        auto exp1 = build_experiment1(corpus, split);
        plans.push_back(std::move(exp1.phase_a));
        plans.push_back(std::move(exp1.phase_b));
    }
    if (ctx.config.run_exp2) {
        if (ctx.config.shared_split) {
            plans.push_back(build_experiment2(corpus, split));
        } else {
            plans.push_back(build_experiment2(
                corpus, split_originals(corpus, ctx.config.test_fraction, ctx.exp2_split_seed())));
        }
    }
    return plans;
}

std::vector<IntegrityReport> stage_integrity(const Corpus& corpus, const std::vector<SplitPlan>& plans) {
    std::vector<IntegrityReport> out;
    for (const auto& p : plans) out.push_back(verify_group_integrity(p, corpus));
    return out;
}

std::vector<LeakScan> stage_leakcheck(const RunContext& ctx, const Corpus& corpus,
                                      const std::vector<SplitPlan>& plans) {
    std::vector<LeakScan> scans;
    for (const auto& p : plans) {
        for (const auto& set : p.evaluation_set_names()) {
            LeakScan scan;
            scan.protocol = std::string(to_string(p.protocol()));
            scan.train_set = "train";
            scan.test_set = set;
            scan.expected = p.protocol() == Protocol::Exp2 && set == "test2";
            scan.report = detect_leaks(p.set("train"), p.set(set), corpus, ctx.config.leak_threshold,
                                       ctx.config.shingle_width);
            scans.push_back(std::move(scan));
        }
    }
    return scans;
}

std::vector<TestCase> plan_cases(const Corpus& corpus, const SplitPlan& plan, std::string_view set) {
    std::vector<TestCase> cases;
    for (const auto& id : plan.set(set)) {
        const TestCase* c = corpus.find(id);
        if (c == nullptr) throw SplitError("plan set '" + std::string(set) + "' names unknown id '" + id + "'");
        cases.push_back(*c);
    }
    return cases;
}

CentroidModel stage_train(const Corpus& corpus, const SplitPlan& plan) {
    return train(plan_cases(corpus, plan, "train"), corpus.labels());
}

PredictionSets stage_predict(const RunContext& ctx, const Corpus& corpus, const SplitPlan& plan,
                             const CentroidModel* model) {
    PredictionSets out;
    const bool external = ctx.config.classifier.backend == Backend::External;
    if (!external && model == nullptr) throw ClassifierError("built-in backend needs a trained model");
    std::vector<TestCase> train_cases;
    if (external) train_cases = plan_cases(corpus, plan, "train");
    for (const auto& set : plan.evaluation_set_names()) {
        const auto cases = plan_cases(corpus, plan, set);
        std::vector<PredictionRecord> records;
        if (external) {
            records = run_external(ctx.config.classifier, train_cases, cases);
        } else {
            for (const auto& c : cases) records.push_back({c.id, predict(*model, c).category});
        }
        out.emplace(evaluation_name(plan.protocol(), set), std::move(records));
    }
    return out;
}

BiasAuditReport assemble_report(const RunContext& ctx, const Corpus& corpus, const AugmentSummary& augment,
                                const std::vector<SplitPlan>& plans, std::vector<IntegrityReport> integrity,
                                std::vector<LeakScan> leakage, const PredictionSets& predictions) {
    BiasAuditReport r;
    r.config_hash = ctx.config_hash;
    r.seed = ctx.seed;
    r.config_json = canonical_config(ctx.config);
    r.include_weighted = ctx.config.weighted_f1;
    r.augmentation_skips = augment.skips;
    r.variants_added = augment.variants_added;
    r.integrity = std::move(integrity);
    r.leakage = std::move(leakage);

    const auto labels = corpus.labels_present();
    const bool builtin = ctx.config.classifier.backend == Backend::Builtin;
    for (const auto& plan : plans) {
        const std::size_t train_size = plan.set("train").size();
        for (const auto& set : plan.evaluation_set_names()) {
            const auto name = evaluation_name(plan.protocol(), set);
            auto it = predictions.find(name);
            if (it == predictions.end()) throw MetricsError("no predictions for evaluation set '" + name + "'");
            std::vector<LabeledId> gold, pred;
            std::size_t degenerate = 0;
            for (const auto& c : plan_cases(corpus, plan, set)) {
                gold.push_back({c.id, c.category});
                if (builtin && featurize(c).empty()) ++degenerate;
            }
            for (const auto& p : it->second) pred.push_back({p.id, p.category});
            r.evaluations.push_back(make_evaluation(name, std::string(to_string(plan.protocol())), set,
                                                    train_size, confusion(gold, pred, labels), degenerate));
        }
    }

    auto find_eval = [&](const std::string& name) -> const EvaluationResult* {
        for (const auto& e : r.evaluations) {
            if (e.name == name) return &e;
        }
        return nullptr;
    };
    auto add_gap = [&](std::string name, const std::string& a, const std::string& b) {
        const auto* ea = find_eval(a);
        const auto* eb = find_eval(b);
        if (ea == nullptr || eb == nullptr) return;
        r.gaps.push_back({std::move(name), a, b, bias_gap(ea->f1, eb->f1)});
    };
    add_gap("exp1", evaluation_name(Protocol::Exp1PhaseA, "test"), evaluation_name(Protocol::Exp1PhaseB, "test"));
    add_gap("exp2", evaluation_name(Protocol::Exp2, "test1"), evaluation_name(Protocol::Exp2, "test2"));

    for (const auto& ir : r.integrity) {
        if (!ir.ok()) {
            r.warnings.push_back(std::string(to_string(ir.protocol)) + ": " + std::to_string(ir.findings.size()) +
                                 " group-integrity violation(s)");
        }
    }
    if (!ctx.config.expected_test2.empty()) {
        for (const auto& plan : plans) {
            if (plan.protocol() != Protocol::Exp2) continue;
            for (auto& w : compare_test2_counts(plan, corpus, ctx.config.expected_test2)) {
                r.warnings.push_back(std::move(w));
            }
        }
    }
    return r;
}

std::string plan_stem(Protocol protocol) {
    switch (protocol) {
        case Protocol::Exp1PhaseA: return "exp1_phaseA";
        case Protocol::Exp1PhaseB: return "exp1_phaseB";
        case Protocol::Exp2: return "exp2";
    }
    return "unknown";
}

std::string evaluation_name(Protocol protocol, std::string_view set) {
    return plan_stem(protocol) + "." + std::string(set);
}

std::string artifact_key(std::string_view evaluation_name) {
    std::string key(evaluation_name);
    std::replace(key.begin(), key.end(), '.', '_');
    return key;
}

std::string plan_to_json(const SplitPlan& plan, const RunContext& ctx) {
    ojson j;
    j["protocol"] = to_string(plan.protocol());
    ojson sets = ojson::object();
    for (const auto& [name, ids] : plan.sets()) sets[name] = ids;
    j["sets"] = std::move(sets);
    j["seed"] = plan.seed();
    j["fraction"] = plan.fraction();
    j["config_hash"] = ctx.config_hash;
    j["run_seed"] = ctx.seed;
    return dump(j);
}

SplitPlan plan_from_json(std::string_view text) {
    try {
        const auto j = ojson::parse(text);
        std::vector<SplitPlan::NamedSet> sets;
        for (const auto& [name, ids] : j.at("sets").items()) {
            sets.emplace_back(name, ids.get<std::vector<std::string>>());
        }
        return SplitPlan(parse_protocol(j.at("protocol").get<std::string>()), std::move(sets),
                         j.at("seed").get<std::uint64_t>(), j.at("fraction").get<double>());
    } catch (const nlohmann::json::exception& e) {
        throw SplitError(std::string("malformed split plan JSON: ") + e.what());
    }
}

std::string model_artifact(const CentroidModel& model, Protocol protocol, const RunContext& ctx) {
    const auto m = ojson::parse(model_to_json(model));
    ojson j;
    j["protocol"] = to_string(protocol);
    j["config_hash"] = ctx.config_hash;
    j["seed"] = ctx.seed;
    j["labels"] = m.at("labels");
    j["centroids"] = m.at("centroids");
    return j.dump() + "\n";
}

std::string augment_summary_json(const AugmentSummary& summary, const RunContext& ctx) {
    ojson j = with_provenance(ctx);
    j["ran"] = summary.ran;
    j["augment_seed"] = ctx.augment_seed();
    j["variants_added"] = summary.variants_added;
    j["skipped"] = summary.skips.size();
    return dump(j);
}

AugmentSummary augment_summary_from_json(std::string_view text, std::string_view skips_jsonl) {
    AugmentSummary s;
    try {
        const auto j = json::parse(text);
        s.ran = j.at("ran").get<bool>();
        s.variants_added = j.at("variants_added").get<std::size_t>();
        std::size_t line_no = 0;
        std::size_t pos = 0;
        while (pos < skips_jsonl.size()) {
            auto end = skips_jsonl.find('\n', pos);
            if (end == std::string_view::npos) end = skips_jsonl.size();
            const auto line = skips_jsonl.substr(pos, end - pos);
            pos = end + 1;
            ++line_no;
            if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
            const auto rec = json::parse(line);
            s.skips.push_back({rec.at("id").get<std::string>(), rec.at("reason").get<std::string>()});
        }
    } catch (const json::exception& e) {
        throw AugmentError(std::string("malformed augmentation summary: ") + e.what());
    }
    return s;
}

std::string integrity_artifact(const std::vector<IntegrityReport>& reports, const RunContext& ctx) {
    ojson j = with_provenance(ctx);
    j["reports"] = ojson::parse(integrity_to_json(reports));
    return dump(j);
}

void write_report_files(const RunContext& ctx, const BiasAuditReport& report,
                        const std::vector<ReportFormat>& formats) {
    for (auto f : formats) write_file(ctx.out_dir / file_name(f), render_report(report, f));

    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(ctx.out_dir)) {
        if (!entry.is_regular_file()) continue;
        const auto name = entry.path().filename().string();
        if (known_artifact(name)) names.push_back(name);
    }
    std::sort(names.begin(), names.end());
    ojson j;
    j["schema"] = kReportSchema;
    j["config_hash"] = ctx.config_hash;
    j["seed"] = ctx.seed;
    ojson files = ojson::object();
    for (const auto& n : names) files[n] = hex64(fnv1a64(read_file(ctx.out_dir / n)));
    j["files"] = std::move(files);
    write_file(ctx.out_dir / "manifest.json", dump(j));
}

BiasAuditReport report_from_artifacts(const RunContext& ctx, const fs::path& dir) {
    const auto corpus_path = dir / "corpus.jsonl";
    if (!fs::exists(corpus_path)) throw CorpusError("missing artifact " + corpus_path.string());
    const Corpus corpus = ingest_corpus(corpus_path, Schema{}, ctx.config.labels, CorpusFormat::Jsonl);

    AugmentSummary augment;
    if (fs::exists(dir / "augment.json")) {
        const auto skips = fs::exists(dir / "augment_skips.jsonl") ? read_file(dir / "augment_skips.jsonl") : "";
        augment = augment_summary_from_json(read_file(dir / "augment.json"), skips);
    }

    std::vector<SplitPlan> plans;
    for (auto p : {Protocol::Exp1PhaseA, Protocol::Exp1PhaseB, Protocol::Exp2}) {
        const auto path = dir / ("split_" + plan_stem(p) + ".json");
        if (fs::exists(path)) plans.push_back(plan_from_json(read_file(path)));
    }
    if (plans.empty()) throw SplitError("no split plans in " + dir.string());

    PredictionSets predictions;
    for (const auto& plan : plans) {
        for (const auto& set : plan.evaluation_set_names()) {
            const auto name = evaluation_name(plan.protocol(), set);
            const auto path = dir / ("predictions_" + artifact_key(name) + ".jsonl");
            if (!fs::exists(path)) throw ClassifierError("missing artifact " + path.string());
            predictions.emplace(name, predictions_from_jsonl(read_file(path)));
        }
    }
    return assemble_report(ctx, corpus, augment, plans, stage_integrity(corpus, plans),
                           stage_leakcheck(ctx, corpus, plans), predictions);
}

BiasAuditReport run_pipeline(const RunContext& ctx) {
    const auto& out = ctx.out_dir;
    const Corpus ingested = in_stage("ingest", [&] { return stage_ingest(ctx); });

    AugmentSummary summary;
    const Corpus corpus = in_stage("augment", [&] {
        auto result = stage_augment(ctx, ingested);
        summary.ran = ctx.config.augment;
        summary.variants_added = result.variants_added;
        summary.skips = result.skips;
        write_file(out / "corpus.jsonl", export_corpus(result.corpus));
        write_file(out / "augment.json", augment_summary_json(summary, ctx));
        write_file(out / "augment_skips.jsonl", skips_to_jsonl(summary.skips));
        return std::move(result.corpus);
    });

    std::vector<IntegrityReport> integrity;
    const auto plans = in_stage("split", [&] {
        auto p = stage_split(ctx, corpus);
        for (const auto& plan : p) {
            write_file(out / ("split_" + plan_stem(plan.protocol()) + ".json"), plan_to_json(plan, ctx));
        }
        integrity = stage_integrity(corpus, p);
        write_file(out / "integrity.json", integrity_artifact(integrity, ctx));
        return p;
    });

    auto leakage = in_stage("leakcheck", [&] {
        auto scans = stage_leakcheck(ctx, corpus, plans);
        for (const auto& s : scans) {
            const auto name = evaluation_name(parse_protocol(s.protocol), s.test_set);
            write_file(out / ("leaks_" + artifact_key(name) + ".jsonl"), leaks_to_jsonl(s.report));
        }
        return scans;
    });

    std::vector<CentroidModel> models;
    if (ctx.config.classifier.backend == Backend::Builtin) {
        in_stage("train", [&] {
            for (const auto& plan : plans) {
                models.push_back(stage_train(corpus, plan));
                write_file(out / ("model_" + plan_stem(plan.protocol()) + ".json"),
                           model_artifact(models.back(), plan.protocol(), ctx));
            }
            return 0;
        });
    }

    PredictionSets predictions = in_stage("evaluate", [&] {
        PredictionSets all;
        for (std::size_t i = 0; i < plans.size(); ++i) {
            auto sets = stage_predict(ctx, corpus, plans[i], models.empty() ? nullptr : &models[i]);
            for (auto& [name, records] : sets) {
                write_file(out / ("predictions_" + artifact_key(name) + ".jsonl"), predictions_to_jsonl(records));
                all.emplace(name, std::move(records));
            }
        }
        return all;
    });

    return in_stage("report", [&] {
        auto report = assemble_report(ctx, corpus, summary, plans, std::move(integrity), std::move(leakage),
                                      predictions);
        write_report_files(ctx, report, ctx.config.formats);
        return report;
    });
}

}  // namespace augaudit
