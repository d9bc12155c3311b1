// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The augaudit Authors

#pragma once

#include <string>
#include <vector>

#include "augaudit/classifier.hpp"
#include "augaudit/corpus.hpp"

namespace augaudit {

struct PredictionRecord {
    std::string id;
    std::string category;

    friend bool operator==(const PredictionRecord&, const PredictionRecord&) = default;
};

/// Records streamed to an external model: every training case
/// ({"role":"train", id, origin_id, version, category, code}) followed by
/// every evaluation case ({"role":"eval", id, origin_id, version, code};
/// gold labels are withheld).
std::string external_input(const std::vector<TestCase>& train_cases,
                           const std::vector<TestCase>& eval_cases);

/// Parses the model's output: one {"id","category"} object per line, any
/// order, exactly one per evaluation case. Returns records in eval order.
std::vector<PredictionRecord> parse_external_output(const std::string& output,
                                                    const std::vector<TestCase>& eval_cases);

/*
 * Runs `config.external_command` through /bin/sh, feeds external_input() on
 * stdin and parses stdout with parse_external_output(). Hyperparameters are
 * exported as AUGAUDIT_LEARNING_RATE, AUGAUDIT_BATCH_SIZE, AUGAUDIT_EPOCHS
 * and AUGAUDIT_OPTIMIZER. Throws ClassifierError on spawn failure, non-zero
 * exit, malformed output or an incomplete/duplicate/unknown prediction set.
 */
std::vector<PredictionRecord> run_external(const ClassifierConfig& config,
                                           const std::vector<TestCase>& train_cases,
                                           const std::vector<TestCase>& eval_cases);

/// Prediction file: {"id","category"} per line in the given order.
std::string predictions_to_jsonl(const std::vector<PredictionRecord>& predictions);
std::vector<PredictionRecord> predictions_from_jsonl(const std::string& text);

}  // namespace augaudit
