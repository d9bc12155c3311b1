// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The augaudit Authors

#include "augaudit/corpus_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "augaudit/error.hpp"

namespace augaudit {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

struct RawRecord {
    std::size_t line = 0;
    TestCase tc;
};

[[noreturn]] void malformed(std::size_t line, const std::string& what) {
    throw CorpusError("malformed row at line " + std::to_string(line) + ": " + what);
}

int parse_version_text(std::string_view text, std::size_t line) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        malformed(line, "version '" + std::string(text) + "' is not an integer");
    }
    return value;
}

// Validates with the assembled corpus and reports the line that introduced
// the first problem.
Corpus finish(std::vector<RawRecord> records, const LabelPolicy& policy) {
    std::map<std::string, std::vector<std::size_t>> lines;
    std::vector<TestCase> cases;
    cases.reserve(records.size());
    for (auto& r : records) {
        lines[r.tc.id].push_back(r.line);
        cases.push_back(std::move(r.tc));
    }
    Corpus corpus = Corpus::assemble(std::move(cases), policy);
    const ValidationReport report = validate_corpus(corpus);
    if (report.ok()) return corpus;

    const Violation& v = report.violations.front();
    std::size_t line = 0;
    if (auto it = lines.find(v.case_id); it != lines.end()) {
        line = v.kind == ViolationKind::DuplicateId && it->second.size() > 1 ? it->second[1]
                                                                             : it->second[0];
    }
    throw CorpusError(v.message + (line ? " (line " + std::to_string(line) + ")" : std::string()));
}

std::string json_field_string(const json& obj, const std::string& key, std::size_t line,
                              bool required) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
        if (required) malformed(line, "missing field '" + key + "'");
        return {};
    }
    if (!it->is_string()) malformed(line, "field '" + key + "' must be a string");
    return it->get<std::string>();
}

// RFC 4180 records; each record carries the line number it starts on.
std::vector<std::pair<std::size_t, std::vector<std::string>>> split_csv(std::string_view text) {
    std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
    std::vector<std::string> fields;
    std::string field;
    std::size_t line = 1;
    std::size_t row_line = 1;
    bool quoted = false;
    bool field_started = false;
    bool any = false;

    auto end_field = [&] {
        fields.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_row = [&] {
        end_field();
        if (!(fields.size() == 1 && fields[0].empty())) rows.emplace_back(row_line, std::move(fields));
        fields.clear();
        any = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (!any) {
            row_line = line;
            any = true;
        }
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') ++line;
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                if (field_started || !field.empty()) malformed(line, "stray quote in unquoted field");
                quoted = true;
                field_started = true;
                break;
            case ',':
                end_field();
                break;
            case '\r':
                if (i + 1 < text.size() && text[i + 1] == '\n') break;
                field.push_back(c);
                break;
            case '\n':
                end_row();
                ++line;
                break;
            default:
                field.push_back(c);
        }
    }
    if (quoted) malformed(row_line, "unterminated quoted field");
    if (any) end_row();
    return rows;
}

}  // namespace

Schema parse_schema(std::string_view json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("schema is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("schema must be a JSON object");
    Schema schema;
    for (auto& [field, column] : j.items()) {
        if (!column.is_string()) throw ConfigError("schema entry '" + field + "' must be a string");
        const auto name = column.get<std::string>();
        if (field == "id") schema.id = name;
        else if (field == "origin_id") schema.origin_id = name;
        else if (field == "version") schema.version = name;
        else if (field == "category") schema.category = name;
        else if (field == "code") schema.code = name;
        else throw ConfigError("schema names unknown field '" + field + "'");
    }
    return schema;
}

Corpus parse_corpus_jsonl(std::string_view text, const Schema& schema, const LabelPolicy& policy) {
    std::vector<RawRecord> records;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& e) {
            malformed(line_no, e.what());
        }
        if (!obj.is_object()) malformed(line_no, "record is not a JSON object");

        RawRecord r;
        r.line = line_no;
        r.tc.id = json_field_string(obj, schema.id, line_no, true);
        r.tc.category = json_field_string(obj, schema.category, line_no, true);
        r.tc.code = json_field_string(obj, schema.code, line_no, true);
        if (auto it = obj.find(schema.version); it != obj.end() && !it->is_null()) {
            if (it->is_number_integer()) {
                r.tc.version = it->get<int>();
            } else if (it->is_string()) {
                r.tc.version = parse_version_text(it->get<std::string>(), line_no);
            } else {
                malformed(line_no, "field '" + schema.version + "' must be an integer");
            }
        }
        r.tc.origin_id = json_field_string(obj, schema.origin_id, line_no, false);
        if (r.tc.origin_id.empty()) r.tc.origin_id = r.tc.id;
        records.push_back(std::move(r));
    }
    return finish(std::move(records), policy);
}

Corpus parse_corpus_csv(std::string_view text, const Schema& schema, const LabelPolicy& policy) {
    auto rows = split_csv(text);
    if (rows.empty()) return Corpus::assemble({}, policy);

    const auto& header = rows.front().second;
    auto column = [&](const std::string& name, bool required) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) return i;
        }
        if (required) malformed(rows.front().first, "header lacks column '" + name + "'");
        return std::nullopt;
    };
    const auto id_col = *column(schema.id, true);
    const auto cat_col = *column(schema.category, true);
    const auto code_col = *column(schema.code, true);
    const auto ver_col = column(schema.version, false);
    const auto origin_col = column(schema.origin_id, false);

    std::vector<RawRecord> records;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& [line, fields] = rows[r];
        if (fields.size() != header.size()) {
            malformed(line, "expected " + std::to_string(header.size()) + " fields, got " +
                                std::to_string(fields.size()));
        }
        RawRecord rec;
        rec.line = line;
        rec.tc.id = fields[id_col];
        rec.tc.category = fields[cat_col];
        rec.tc.code = fields[code_col];
        if (ver_col && !fields[*ver_col].empty()) {
            rec.tc.version = parse_version_text(fields[*ver_col], line);
        }
        if (origin_col) rec.tc.origin_id = fields[*origin_col];
        if (rec.tc.origin_id.empty()) rec.tc.origin_id = rec.tc.id;
        records.push_back(std::move(rec));
    }
    return finish(std::move(records), policy);
}

Corpus ingest_corpus(const std::filesystem::path& source, const Schema& schema,
                     const LabelPolicy& policy, CorpusFormat format) {
    const std::string text = read_file(source);
    if (format == CorpusFormat::Auto) {
        auto ext = source.extension().string();
        for (auto& ch : ext) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        format = ext == ".csv" ? CorpusFormat::Csv : CorpusFormat::Jsonl;
    }
    return format == CorpusFormat::Csv ? parse_corpus_csv(text, schema, policy)
                                       : parse_corpus_jsonl(text, schema, policy);
}

std::string export_corpus(const Corpus& corpus) {
    std::string out;
    for (const auto& c : corpus.cases()) {
        ordered_json rec;
        rec["id"] = c.id;
        rec["origin_id"] = c.origin_id;
        rec["version"] = c.version;
        rec["category"] = c.category;
        rec["code"] = c.code;
        out += rec.dump(-1, ' ', false, json::error_handler_t::strict);
        out += '\n';
    }
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error("write failed for '" + path.string() + "'");
}

}  // namespace augaudit
