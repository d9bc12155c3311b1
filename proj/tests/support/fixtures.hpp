// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The augaudit Authors

#pragma once

#include <filesystem>
#include <string>

#include "augaudit/corpus_io.hpp"
#include "augaudit/synthetic.hpp"
#include "generators.hpp"

namespace augaudit::testing {

/// Directory holding corpus.jsonl (synthetic originals) and config.json
/// pointing at it with a relative path.
inline std::filesystem::path audit_fixture(const std::string& name, std::size_t per_label = 12,
                                           std::uint64_t corpus_seed = 3, const std::string& extra_sections = "") {
    const auto dir = fresh_dir(name);
    SyntheticOptions options;
    options.originals_per_label = per_label;
    write_file(dir / "corpus.jsonl", export_corpus(synthetic_corpus(options, corpus_seed)));
    std::string config = "{\n  \"corpus\": {\"path\": \"corpus.jsonl\"},\n  \"output\": {\"dir\": \"out\"}";
    if (!extra_sections.empty()) config += ",\n  " + extra_sections;
    config += "\n}\n";
    write_file(dir / "config.json", config);
    return dir;
}

}  // namespace augaudit::testing
