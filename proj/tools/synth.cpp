// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The augaudit Authors

// Writes a seeded synthetic corpus of Java-like test methods as JSONL.

#include <iostream>

#include <CLI11.hpp>

#include "augaudit/corpus_io.hpp"
#include "augaudit/synthetic.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Generate a synthetic labeled test-code corpus", "augaudit-synth"};
    std::uint64_t seed = 1;
    std::string out;
    augaudit::SyntheticOptions options;
    app.add_option("--seed", seed, "generator seed");
    app.add_option("--per-label", options.originals_per_label, "originals per category");
    app.add_option("--origin-words", options.origin_words, "made-up words per original");
    app.add_option("--out", out, "output file (stdout when omitted)");
    CLI11_PARSE(app, argc, argv);

    try {
        const auto text = augaudit::export_corpus(augaudit::synthetic_corpus(options, seed));
        if (out.empty()) {
            std::cout << text;
        } else {
            augaudit::write_file(out, text);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
