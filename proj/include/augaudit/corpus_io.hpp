// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The augaudit Authors

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "augaudit/corpus.hpp"

namespace augaudit {

/// Source column/key name for each TestCase field.
struct Schema {
    std::string id = "id";
    std::string origin_id = "origin_id";
    std::string version = "version";
    std::string category = "category";
    std::string code = "code";
};

/// Reads a {"field": "column"} JSON object; unmentioned fields keep defaults.
Schema parse_schema(std::string_view json_text);

enum class CorpusFormat { Auto, Jsonl, Csv };

/// JSON-Lines or CSV (with header) into a validated corpus. Missing version
/// and origin_id default to 0 and the case's own id. Errors name the line.
Corpus ingest_corpus(const std::filesystem::path& source, const Schema& schema = {},
                     const LabelPolicy& policy = {}, CorpusFormat format = CorpusFormat::Auto);

Corpus parse_corpus_jsonl(std::string_view text, const Schema& schema = {},
                          const LabelPolicy& policy = {});
Corpus parse_corpus_csv(std::string_view text, const Schema& schema = {},
                        const LabelPolicy& policy = {});

/// Canonical JSONL: one record per case in id order, keys
/// id, origin_id, version, category, code.
std::string export_corpus(const Corpus& corpus);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace augaudit
