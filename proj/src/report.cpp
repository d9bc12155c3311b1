// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The augaudit Authors

#include "augaudit/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "augaudit/error.hpp"

namespace augaudit {

namespace {

using ojson = nlohmann::ordered_json;

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

ojson scores_json(const ScoreTable& scores) {
    ojson j = ojson::object();
    for (const auto& s : scores) j[s.category] = s.value;
    return j;
}

ojson confusion_json(const ConfusionTable& t) {
    ojson rows = ojson::array();
    for (std::size_t g = 0; g < t.size(); ++g) {
        ojson row = ojson::array();
        for (std::size_t p = 0; p < t.size(); ++p) row.push_back(t.at(g, p));
        rows.push_back(std::move(row));
    }
    return rows;
}

ojson integrity_json(const IntegrityReport& r) {
    ojson j;
    j["protocol"] = to_string(r.protocol);
    ojson findings = ojson::array();
    for (const auto& f : r.findings) {
        ojson fj;
        fj["kind"] = to_string(f.kind);
        fj["origin_id"] = f.origin_id;
        fj["case_id"] = f.case_id;
        fj["message"] = f.message;
        findings.push_back(std::move(fj));
    }
    j["violations"] = std::move(findings);
    return j;
}

IntegrityKind parse_integrity_kind(std::string_view s) {
    for (auto k : {IntegrityKind::UnknownId, IntegrityKind::DuplicateMembership,
                   IntegrityKind::GroupSpansSplits, IntegrityKind::VariantInPhaseA,
                   IntegrityKind::Test1OriginInTrain, IntegrityKind::Test2OriginNotInTrain,
                   IntegrityKind::OriginalInTest2, IntegrityKind::VariantInTrainOrTest1}) {
        if (to_string(k) == s) return k;
    }
    throw MetricsError("unknown integrity kind '" + std::string(s) + "'");
}

ojson report_json(const BiasAuditReport& report) {
    ojson j;
    j["schema"] = kReportSchema;
    j["config_hash"] = report.config_hash;
    j["seed"] = report.seed;
    j["config"] = ojson::parse(report.config_json);

    ojson evals = ojson::array();
    for (const auto& e : report.evaluations) {
        ojson ej;
        ej["name"] = e.name;
        ej["protocol"] = e.protocol;
        ej["set"] = e.set;
        ej["train_size"] = e.train_size;
        ej["size"] = e.confusion.total();
        ej["labels"] = e.confusion.labels();
        ej["f1"] = scores_json(e.f1);
        ej["macro_f1"] = e.macro_f1;
        if (report.include_weighted) ej["weighted_f1"] = e.weighted_f1;
        ej["degenerate_predictions"] = e.degenerate_predictions;
        ej["confusion"] = confusion_json(e.confusion);
        evals.push_back(std::move(ej));
    }
    j["evaluations"] = std::move(evals);

    ojson gaps = ojson::array();
    for (const auto& g : report.gaps) {
        ojson gj;
        gj["name"] = g.name;
        gj["set1"] = g.set1;
        gj["set2"] = g.set2;
        ojson rows = ojson::array();
        for (const auto& r : g.table.rows) {
            ojson rj;
            rj["category"] = r.category;
            rj["set1"] = r.set1;
            rj["set2"] = r.set2;
            rj["gap"] = r.gap;
            rows.push_back(std::move(rj));
        }
        gj["rows"] = std::move(rows);
        gj["set1_average"] = g.table.set1_average;
        gj["set2_average"] = g.table.set2_average;
        gj["average_gap"] = g.table.average_gap;
        gaps.push_back(std::move(gj));
    }
    j["gaps"] = std::move(gaps);

    ojson integrity = ojson::array();
    for (const auto& r : report.integrity) integrity.push_back(integrity_json(r));
    j["integrity"] = std::move(integrity);

    ojson leakage = ojson::array();
    for (const auto& scan : report.leakage) {
        ojson lj;
        lj["protocol"] = scan.protocol;
        lj["train_set"] = scan.train_set;
        lj["test_set"] = scan.test_set;
        lj["expected"] = scan.expected;
        lj["pairs_compared"] = scan.report.pairs_compared;
        lj["pairs_pruned"] = scan.report.pairs_pruned;
        ojson findings = ojson::array();
        for (const auto& f : scan.report.findings) {
            ojson fj;
            fj["a"] = f.a;
            fj["b"] = f.b;
            fj["similarity"] = f.similarity;
            fj["provenance_leak"] = f.provenance_leak;
            findings.push_back(std::move(fj));
        }
        lj["findings"] = std::move(findings);
        leakage.push_back(std::move(lj));
    }
    j["leakage"] = std::move(leakage);

    ojson aug;
    aug["variants_added"] = report.variants_added;
    ojson skips = ojson::array();
    for (const auto& s : report.augmentation_skips) {
        ojson sj;
        sj["id"] = s.id;
        sj["reason"] = s.reason;
        skips.push_back(std::move(sj));
    }
    aug["skips"] = std::move(skips);
    j["augmentation"] = std::move(aug);
    j["warnings"] = report.warnings;
    return j;
}

}  // namespace

std::size_t BiasAuditReport::unexpected_leaks() const {
    std::size_t n = 0;
    for (const auto& scan : leakage) {
        if (!scan.expected) n += scan.report.findings.size();
    }
    return n;
}

ReportFormat parse_report_format(std::string_view name) {
    if (name == "json") return ReportFormat::Json;
    if (name == "csv") return ReportFormat::Csv;
    if (name == "plotdata") return ReportFormat::PlotData;
    throw MetricsError("unknown report format '" + std::string(name) + "'");
}

std::string_view to_string(ReportFormat format) noexcept {
    switch (format) {
        case ReportFormat::Json: return "json";
        case ReportFormat::Csv: return "csv";
        case ReportFormat::PlotData: return "plotdata";
    }
    return "unknown";
}

std::string_view file_name(ReportFormat format) noexcept {
    switch (format) {
        case ReportFormat::Json: return "report.json";
        case ReportFormat::Csv: return "report.csv";
        case ReportFormat::PlotData: return "report_plot.csv";
    }
    return "report";
}

EvaluationResult make_evaluation(std::string name, std::string protocol, std::string set,
                                 std::size_t train_size, ConfusionTable table, std::size_t degenerate) {
    EvaluationResult e;
    e.name = std::move(name);
    e.protocol = std::move(protocol);
    e.set = std::move(set);
    e.train_size = train_size;
    e.f1 = f1_per_category(table);
    e.macro_f1 = e.f1.empty() ? 0.0 : macro_f1(e.f1);
    e.weighted_f1 = weighted_f1(table);
    e.confusion = std::move(table);
    e.degenerate_predictions = degenerate;
    return e;
}

void check_report_consistency(const BiasAuditReport& report) {
    for (const auto& e : report.evaluations) {
        if (f1_per_category(e.confusion) != e.f1) {
            throw MetricsError("report inconsistent: F1 of '" + e.name + "' does not match its confusion table");
        }
        const double macro = e.f1.empty() ? 0.0 : macro_f1(e.f1);
        if (macro != e.macro_f1) {
            throw MetricsError("report inconsistent: macro F1 of '" + e.name + "'");
        }
    }
    for (const auto& g : report.gaps) {
        std::vector<double> a, b, d;
        for (const auto& r : g.table.rows) {
            if (r.gap != r.set2 - r.set1) {
                throw MetricsError("report inconsistent: gap of '" + r.category + "' in '" + g.name + "'");
            }
            a.push_back(r.set1);
            b.push_back(r.set2);
            d.push_back(r.gap);
        }
        if (mean_of(a) != g.table.set1_average || mean_of(b) != g.table.set2_average ||
            mean_of(d) != g.table.average_gap) {
            throw MetricsError("report inconsistent: averages of '" + g.name + "'");
        }
    }
}

std::string render_report(const BiasAuditReport& report, ReportFormat format) {
    check_report_consistency(report);
    switch (format) {
        case ReportFormat::Json:
            return report_json(report).dump(2) + "\n";
        case ReportFormat::Csv: {
            std::ostringstream out;
            if (report.gaps.empty()) {
                out << "Category,Set1,Set2,Difference\n";
                return out.str();
            }
            for (std::size_t i = 0; i < report.gaps.size(); ++i) {
                const auto& g = report.gaps[i];
                if (i > 0) out << '\n';
                out << "Category," << csv_field(g.set1) << ',' << csv_field(g.set2) << ",Difference\n";
                if (g.table.rows.empty()) continue;
                for (const auto& r : g.table.rows) {
                    out << csv_field(r.category) << ',' << percent(r.set1) << ',' << percent(r.set2)
                        << ',' << signed_percent(r.gap) << '\n';
                }
                out << "Average," << percent(g.table.set1_average) << ','
                    << percent(g.table.set2_average) << ',' << signed_percent(g.table.average_gap)
                    << '\n';
            }
            return out.str();
        }
        case ReportFormat::PlotData: {
            std::ostringstream out;
            for (std::size_t i = 0; i < report.gaps.size(); ++i) {
                const auto& g = report.gaps[i];
                if (i > 0) out << '\n';
                out << "category," << csv_field(g.set1) << ',' << csv_field(g.set2) << '\n';
                for (const auto& r : g.table.rows) {
                    out << csv_field(r.category) << ',' << fixed6(r.set1) << ',' << fixed6(r.set2) << '\n';
                }
            }
            return out.str();
        }
    }
    throw MetricsError("unknown report format");
}

BiasAuditReport report_from_json(std::string_view text) {
    try {
        const auto j = ojson::parse(text);
        if (j.at("schema").get<std::string>() != kReportSchema) {
            throw MetricsError("unsupported report schema '" + j.at("schema").get<std::string>() + "'");
        }
        BiasAuditReport r;
        r.config_hash = j.at("config_hash").get<std::string>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.config_json = j.at("config").dump();
        for (const auto& ej : j.at("evaluations")) {
            ConfusionTable t(ej.at("labels").get<std::vector<std::string>>());
            const auto& rows = ej.at("confusion");
            for (std::size_t g = 0; g < t.size(); ++g) {
                for (std::size_t p = 0; p < t.size(); ++p) t.at(g, p) = rows.at(g).at(p).get<std::size_t>();
            }
            EvaluationResult e;
            e.name = ej.at("name").get<std::string>();
            e.protocol = ej.at("protocol").get<std::string>();
            e.set = ej.at("set").get<std::string>();
            e.train_size = ej.at("train_size").get<std::size_t>();
            for (const auto& [cat, v] : ej.at("f1").items()) e.f1.push_back({cat, v.get<double>()});
            e.macro_f1 = ej.at("macro_f1").get<double>();
            if (ej.contains("weighted_f1")) {
                r.include_weighted = true;
                e.weighted_f1 = ej.at("weighted_f1").get<double>();
            } else {
                e.weighted_f1 = weighted_f1(t);
            }
            e.degenerate_predictions = ej.at("degenerate_predictions").get<std::size_t>();
            e.confusion = std::move(t);
            r.evaluations.push_back(std::move(e));
        }
        for (const auto& gj : j.at("gaps")) {
            GapSection g;
            g.name = gj.at("name").get<std::string>();
            g.set1 = gj.at("set1").get<std::string>();
            g.set2 = gj.at("set2").get<std::string>();
            for (const auto& rj : gj.at("rows")) {
                g.table.rows.push_back({rj.at("category").get<std::string>(), rj.at("set1").get<double>(),
                                        rj.at("set2").get<double>(), rj.at("gap").get<double>()});
            }
            g.table.set1_average = gj.at("set1_average").get<double>();
            g.table.set2_average = gj.at("set2_average").get<double>();
            g.table.average_gap = gj.at("average_gap").get<double>();
            r.gaps.push_back(std::move(g));
        }
        for (const auto& ij : j.at("integrity")) {
            IntegrityReport ir{parse_protocol(ij.at("protocol").get<std::string>()), {}};
            for (const auto& fj : ij.at("violations")) {
                ir.findings.push_back({parse_integrity_kind(fj.at("kind").get<std::string>()),
                                       fj.at("origin_id").get<std::string>(),
                                       fj.at("case_id").get<std::string>(),
                                       fj.at("message").get<std::string>()});
            }
            r.integrity.push_back(std::move(ir));
        }
        for (const auto& lj : j.at("leakage")) {
            LeakScan scan;
            scan.protocol = lj.at("protocol").get<std::string>();
            scan.train_set = lj.at("train_set").get<std::string>();
            scan.test_set = lj.at("test_set").get<std::string>();
            scan.expected = lj.at("expected").get<bool>();
            scan.report.pairs_compared = lj.at("pairs_compared").get<std::size_t>();
            scan.report.pairs_pruned = lj.at("pairs_pruned").get<std::size_t>();
            for (const auto& fj : lj.at("findings")) {
                scan.report.findings.push_back({fj.at("a").get<std::string>(), fj.at("b").get<std::string>(),
                                                fj.at("similarity").get<double>(),
                                                fj.at("provenance_leak").get<bool>()});
            }
            r.leakage.push_back(std::move(scan));
        }
        const auto& aug = j.at("augmentation");
        r.variants_added = aug.at("variants_added").get<std::size_t>();
        for (const auto& sj : aug.at("skips")) {
            r.augmentation_skips.push_back({sj.at("id").get<std::string>(), sj.at("reason").get<std::string>()});
        }
        r.warnings = j.at("warnings").get<std::vector<std::string>>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw MetricsError(std::string("malformed report JSON: ") + e.what());
    }
}

std::string integrity_to_json(const std::vector<IntegrityReport>& reports) {
    ojson arr = ojson::array();
    for (const auto& r : reports) arr.push_back(integrity_json(r));
    return arr.dump(2) + "\n";
}

}  // namespace augaudit
