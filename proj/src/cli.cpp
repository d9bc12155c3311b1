// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The augaudit Authors

#include "augaudit/cli.hpp"

#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "augaudit/error.hpp"
#include "augaudit/leakage.hpp"
#include "augaudit/pipeline.hpp"

namespace augaudit {

namespace fs = std::filesystem;

namespace {

struct Options {
    std::string config;
    std::string seed;
    std::string out;
    std::string format;
    std::string protocol;
    std::string input;
    std::string schema;
    std::string model;
    std::vector<std::string> plans;
};

class UsageError : public Error {
public:
    using Error::Error;
};

RunContext context_from(const Options& o) {
    RunConfig config = o.config.empty() ? parse_run_config("{}") : load_run_config(o.config);
    if (!o.schema.empty()) {
        if (!fs::exists(o.schema)) throw ConfigError("schema file not found: " + o.schema);
        config.schema = parse_schema(read_file(o.schema));
    }
    if (o.protocol == "exp1") {
        config.run_exp1 = true;
        config.run_exp2 = false;
    } else if (o.protocol == "exp2") {
        config.run_exp1 = false;
        config.run_exp2 = true;
    } else if (o.protocol == "both") {
        config.run_exp1 = config.run_exp2 = true;
    }
    std::optional<std::uint64_t> seed;
    if (!o.seed.empty()) {
        try {
            seed = parse_seed(o.seed);
        } catch (const ConfigError& e) {
            throw UsageError(e.what());
        }
    }
    std::optional<fs::path> out;
    if (!o.out.empty()) out = fs::path(o.out);
    return make_context(std::move(config), seed, out);
}

/// --input if given, else the corpus artifact in the output directory when
/// it exists, else the corpus named by the config.
Corpus load_stage_corpus(const RunContext& ctx, const Options& o) {
    if (!o.input.empty()) return stage_ingest(ctx, fs::path(o.input));
    if (fs::exists(ctx.out_dir / "corpus.jsonl")) {
        return ingest_corpus(ctx.out_dir / "corpus.jsonl", Schema{}, ctx.config.labels, CorpusFormat::Jsonl);
    }
    return stage_ingest(ctx);
}

std::vector<SplitPlan> load_plans(const RunContext& ctx, const Options& o) {
    std::vector<SplitPlan> plans;
    if (!o.plans.empty()) {
        for (const auto& p : o.plans) {
            if (!fs::exists(p)) throw SplitError("plan file not found: " + p);
            plans.push_back(plan_from_json(read_file(p)));
        }
        return plans;
    }
    for (auto p : {Protocol::Exp1PhaseA, Protocol::Exp1PhaseB, Protocol::Exp2}) {
        const auto path = ctx.out_dir / ("split_" + plan_stem(p) + ".json");
        if (fs::exists(path)) plans.push_back(plan_from_json(read_file(path)));
    }
    if (plans.empty()) throw SplitError("no plans given and none found in " + ctx.out_dir.string());
    return plans;
}

void print_counts(std::ostream& out, const Corpus& corpus) { out << category_counts(corpus).to_csv(); }

int cmd_ingest(const Options& o, std::ostream& out) {
    const auto ctx = context_from(o);
    const Corpus corpus = o.input.empty() ? stage_ingest(ctx) : stage_ingest(ctx, fs::path(o.input));
    write_file(ctx.out_dir / "corpus.jsonl", export_corpus(corpus));
    print_counts(out, corpus);
    return kExitOk;
}

int cmd_augment(const Options& o, std::ostream& out) {
    const auto ctx = context_from(o);
    const Corpus corpus = load_stage_corpus(ctx, o);
    auto result = stage_augment(ctx, corpus);
    AugmentSummary summary{ctx.config.augment, result.variants_added, result.skips};
    write_file(ctx.out_dir / "corpus.jsonl", export_corpus(result.corpus));
    write_file(ctx.out_dir / "augment.json", augment_summary_json(summary, ctx));
    write_file(ctx.out_dir / "augment_skips.jsonl", skips_to_jsonl(summary.skips));
    out << "variants added: " << summary.variants_added << ", skipped: " << summary.skips.size() << "\n";
    print_counts(out, result.corpus);
    return kExitOk;
}

int cmd_split(const Options& o, std::ostream& out) {
    const auto ctx = context_from(o);
    const Corpus corpus = load_stage_corpus(ctx, o);
    const auto plans = stage_split(ctx, corpus);
    for (const auto& plan : plans) {
        write_file(ctx.out_dir / ("split_" + plan_stem(plan.protocol()) + ".json"), plan_to_json(plan, ctx));
    }
    const auto integrity = stage_integrity(corpus, plans);
    write_file(ctx.out_dir / "integrity.json", integrity_artifact(integrity, ctx));
    for (std::size_t i = 0; i < plans.size(); ++i) {
        out << to_string(plans[i].protocol()) << ':';
        for (const auto& [name, ids] : plans[i].sets()) out << ' ' << name << '=' << ids.size();
        out << ", violations=" << integrity[i].findings.size() << '\n';
    }
    return kExitOk;
}

int cmd_leakcheck(const Options& o, std::ostream& out) {
    const auto ctx = context_from(o);
    const Corpus corpus = load_stage_corpus(ctx, o);
    const auto plans = load_plans(ctx, o);
    const auto scans = stage_leakcheck(ctx, corpus, plans);
    std::size_t unexpected = 0;
    for (const auto& s : scans) {
        const auto name = evaluation_name(parse_protocol(s.protocol), s.test_set);
        if (!o.out.empty()) {
            write_file(ctx.out_dir / ("leaks_" + artifact_key(name) + ".jsonl"), leaks_to_jsonl(s.report));
        }
        if (s.expected) continue;  // variants of training origins are test2 by design
        unexpected += s.report.findings.size();
        out << leaks_to_jsonl(s.report);
    }
    return unexpected == 0 ? kExitOk : kExitLeaks;
}

int cmd_train(const Options& o, std::ostream& out) {
    const auto ctx = context_from(o);
    if (ctx.config.classifier.backend != Backend::Builtin) {
        throw ClassifierError("the external backend trains inside 'evaluate'; nothing to do for 'train'");
    }
    const Corpus corpus = load_stage_corpus(ctx, o);
    for (const auto& plan : load_plans(ctx, o)) {
        const auto model = stage_train(corpus, plan);
        const auto path = ctx.out_dir / ("model_" + plan_stem(plan.protocol()) + ".json");
        write_file(path, model_artifact(model, plan.protocol(), ctx));
        out << to_string(plan.protocol()) << ": " << model.labels.size() << " centroid(s) -> " << path.string()
            << '\n';
    }
    return kExitOk;
}

int cmd_evaluate(const Options& o, std::ostream& out) {
    const auto ctx = context_from(o);
    const Corpus corpus = load_stage_corpus(ctx, o);
    const auto plans = load_plans(ctx, o);
    if (!o.model.empty() && plans.size() != 1) throw UsageError("--model needs exactly one --plan");
    const auto labels = corpus.labels_present();
    for (const auto& plan : plans) {
        std::optional<CentroidModel> model;
        if (ctx.config.classifier.backend == Backend::Builtin) {
            const fs::path path =
                o.model.empty() ? ctx.out_dir / ("model_" + plan_stem(plan.protocol()) + ".json") : fs::path(o.model);
            if (!fs::exists(path)) throw ClassifierError("model file not found: " + path.string());
            model = model_from_json(read_file(path));
        }
        for (const auto& [name, records] : stage_predict(ctx, corpus, plan, model ? &*model : nullptr)) {
            write_file(ctx.out_dir / ("predictions_" + artifact_key(name) + ".jsonl"), predictions_to_jsonl(records));
            std::vector<LabeledId> gold, pred;
            const auto set = name.substr(name.find('.') + 1);
            for (const auto& id : plan.set(set)) gold.push_back({id, corpus.at(id).category});
            for (const auto& r : records) pred.push_back({r.id, r.category});
            const auto scores = f1_per_category(confusion(gold, pred, labels));
            out << name << ": macro F1 " << std::fixed << std::setprecision(4)
                << (scores.empty() ? 0.0 : macro_f1(scores)) << '\n';
            out.unsetf(std::ios::floatfield);
        }
    }
    return kExitOk;
}

int cmd_audit(const Options& o, std::ostream& out) {
    const auto ctx = context_from(o);
    const auto report = run_pipeline(ctx);
    const auto format = o.format.empty() ? ReportFormat::Csv : parse_report_format(o.format);
    out << render_report(report, format);
    if (ctx.config.lint && report.unexpected_leaks() > 0) return kExitLeaks;
    return kExitOk;
}

int cmd_report(const Options& o, std::ostream& out) {
    const auto ctx = context_from(o);
    if (!o.input.empty() && fs::is_regular_file(o.input)) {
        const auto report = report_from_json(read_file(o.input));
        out << render_report(report, o.format.empty() ? ReportFormat::Json : parse_report_format(o.format));
        return kExitOk;
    }
    const fs::path dir = o.input.empty() ? ctx.out_dir : fs::path(o.input);
    const auto report = report_from_artifacts(ctx, dir);
    fs::create_directories(ctx.out_dir);
    write_report_files(ctx, report, ctx.config.formats);
    out << render_report(report, o.format.empty() ? ReportFormat::Csv : parse_report_format(o.format));
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Audit augmentation-induced bias in labeled test-code datasets", "augaudit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "augaudit 0.1.0");

    Options o;
    const std::vector<std::string> formats{"json", "csv", "plotdata"};
    auto common = [&](CLI::App* sub, bool with_format) {
        sub->add_option("--config", o.config, "JSON run configuration")->check(CLI::ExistingFile);
        sub->add_option("--seed", o.seed, "64-bit seed (overrides AUGAUDIT_SEED and the config)");
        sub->add_option("--out", o.out, "output directory");
        sub->add_option("--protocol", o.protocol, "experiments to run")
            ->check(CLI::IsMember({"exp1", "exp2", "both"}));
        if (with_format) sub->add_option("--format", o.format, "report format")->check(CLI::IsMember(formats));
    };

    auto* ingest = app.add_subcommand("ingest", "read a JSONL/CSV corpus and write it canonically");
    common(ingest, false);
    ingest->add_option("--input", o.input, "corpus file (defaults to corpus.path)");
    ingest->add_option("--schema", o.schema, "JSON map of field -> source column");

    auto* augment = app.add_subcommand("augment", "add mutation-based variants to every original");
    common(augment, false);
    augment->add_option("--input", o.input, "corpus file");

    auto* split = app.add_subcommand("split", "build the experiment split plans and check group integrity");
    common(split, false);
    split->add_option("--input", o.input, "corpus file");

    auto* leak = app.add_subcommand("leakcheck", "find near-duplicates and shared origins across splits");
    common(leak, false);
    leak->add_option("--input", o.input, "corpus file");
    leak->add_option("--plan", o.plans, "split plan file (repeatable)");

    auto* train_cmd = app.add_subcommand("train", "fit the nearest-centroid baseline on each plan's train set");
    common(train_cmd, false);
    train_cmd->add_option("--input", o.input, "corpus file");
    train_cmd->add_option("--plan", o.plans, "split plan file (repeatable)");

    auto* evaluate = app.add_subcommand("evaluate", "predict every evaluation set of each plan");
    common(evaluate, false);
    evaluate->add_option("--input", o.input, "corpus file");
    evaluate->add_option("--plan", o.plans, "split plan file (repeatable)");
    evaluate->add_option("--model", o.model, "model file for a single plan");

    auto* audit = app.add_subcommand("audit", "run the whole pipeline");
    common(audit, true);

    auto* report = app.add_subcommand("report", "rebuild the report from stage artifacts or re-render a report");
    common(report, true);
    report->add_option("--input", o.input, "artifact directory or report.json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        const auto* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        if (name == "ingest") return cmd_ingest(o, out);
        if (name == "augment") return cmd_augment(o, out);
        if (name == "split") return cmd_split(o, out);
        if (name == "leakcheck") return cmd_leakcheck(o, out);
        if (name == "train") return cmd_train(o, out);
        if (name == "evaluate") return cmd_evaluate(o, out);
        if (name == "audit") return cmd_audit(o, out);
        return cmd_report(o, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"augaudit"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace augaudit
