// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The augaudit Authors

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "augaudit/corpus.hpp"

namespace augaudit {

/// Sparse token counts. No zero entries.
using FeatureVector = std::map<std::string, std::size_t, std::less<>>;

/// Weighted sparse vector, as stored in a centroid.
using WeightVector = std::map<std::string, double, std::less<>>;

/*
 * Bag of tokens: identifier, keyword and number tokens by text, plus the
 * words ([A-Za-z0-9_] runs) inside string literals. Punctuation, whitespace,
 * comments, annotations and char literals are dropped. Case-sensitive.
 */
FeatureVector featurize(const TestCase& test_case);
FeatureVector featurize_code(std::string_view code);

enum class Backend { Builtin, External };

/// Hyperparameters are not used by the built-in model; they are recorded in
/// reports and handed to external backends.
struct ClassifierConfig {
    Backend backend = Backend::Builtin;
    std::string external_command;
    double learning_rate = 1e-5;
    int batch_size = 8;
    int epochs = 200;
    std::string optimizer = "adamw";

    void validate() const;
};

/// Nearest-centroid model over L2-normalized summed feature vectors.
struct CentroidModel {
    std::vector<std::string> labels;     // order breaks ties
    std::vector<WeightVector> centroids;  // parallel to labels

    const WeightVector& centroid(std::string_view label) const;
};

/// `label_order` fixes the order of the model's labels; categories missing
/// from it are appended lexicographically. Labels without training cases are
/// left out of the model.
CentroidModel train(const std::vector<TestCase>& cases,
                    const std::vector<std::string>& label_order = {});

struct Prediction {
    std::string category;
    bool degenerate = false;  // empty feature vector, first label returned
};

Prediction predict(const CentroidModel& model, const TestCase& test_case);
Prediction predict_features(const CentroidModel& model, const FeatureVector& features);

/// Cosine similarity of a count vector with a weight vector.
double cosine(const FeatureVector& features, const WeightVector& weights);

/// Model as JSON: {"labels":[...], "centroids":{label:{token:weight}}}.
std::string model_to_json(const CentroidModel& model);
CentroidModel model_from_json(std::string_view text);

}  // namespace augaudit
