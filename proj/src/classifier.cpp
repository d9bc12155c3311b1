// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The augaudit Authors

#include "augaudit/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "augaudit/error.hpp"
#include "augaudit/tokenizer.hpp"

namespace augaudit {

namespace {

bool word_char(char c) noexcept {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
}

void count_words(std::string_view text, FeatureVector& out) {
    std::string word;
    auto flush = [&] {
        if (!word.empty()) ++out[word];
        word.clear();
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '\\') {  // escape sequences separate words
            flush();
            ++i;
            continue;
        }
        if (word_char(c)) {
            word.push_back(c);
        } else {
            flush();
        }
    }
    flush();
}

std::string_view literal_body(std::string_view literal) {
    const std::size_t quote = literal.starts_with("\"\"\"") ? 3 : 1;
    if (literal.size() < 2 * quote) return {};
    return literal.substr(quote, literal.size() - 2 * quote);
}

double norm(const FeatureVector& v) {
    double sq = 0.0;
    for (const auto& [_, count] : v) sq += static_cast<double>(count) * static_cast<double>(count);
    return std::sqrt(sq);
}

double norm(const WeightVector& v) {
    double sq = 0.0;
    for (const auto& [_, w] : v) sq += w * w;
    return std::sqrt(sq);
}

}  // namespace

FeatureVector featurize_code(std::string_view code) {
    FeatureVector features;
    for (const auto& t : tokenize(code).tokens) {
        switch (t.kind) {
            case TokenKind::Identifier:
            case TokenKind::Keyword:
            case TokenKind::Number:
                ++features[t.text];
                break;
            case TokenKind::StringLiteral:
                count_words(literal_body(t.text), features);
                break;
            case TokenKind::Raw:
                count_words(t.text, features);
                break;
            default:
                break;
        }
    }
    return features;
}

FeatureVector featurize(const TestCase& test_case) { return featurize_code(test_case.code); }

void ClassifierConfig::validate() const {
    if (backend == Backend::External && external_command.empty()) {
        throw ConfigError("external classifier backend requires a command");
    }
}

const WeightVector& CentroidModel::centroid(std::string_view label) const {
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == label) return centroids[i];
    }
    throw ClassifierError("model has no label '" + std::string(label) + "'");
}

CentroidModel train(const std::vector<TestCase>& cases, const std::vector<std::string>& label_order) {
    if (cases.empty()) throw ClassifierError("empty training set");

    std::map<std::string, WeightVector, std::less<>> sums;
    for (const auto& c : cases) {
        WeightVector& sum = sums[c.category];
        for (const auto& [token, count] : featurize(c)) sum[token] += static_cast<double>(count);
    }

    std::vector<std::string> order;
    for (const auto& label : label_order) {
        if (sums.count(label) != 0 && std::find(order.begin(), order.end(), label) == order.end()) {
            order.push_back(label);
        }
    }
    for (const auto& [label, _] : sums) {
        if (std::find(order.begin(), order.end(), label) == order.end()) order.push_back(label);
    }

    CentroidModel model;
    for (const auto& label : order) {
        WeightVector centroid = sums.at(label);
        const double n = norm(centroid);
        if (n > 0.0) {
            for (auto& [_, w] : centroid) w /= n;
        } else {
            centroid.clear();
        }
        model.labels.push_back(label);
        model.centroids.push_back(std::move(centroid));
    }
    return model;
}

double cosine(const FeatureVector& features, const WeightVector& weights) {
    const double nx = norm(features);
    const double nw = norm(weights);
    if (nx == 0.0 || nw == 0.0) return 0.0;
    double dot = 0.0;
    for (const auto& [token, count] : features) {
        if (auto it = weights.find(token); it != weights.end()) {
            dot += static_cast<double>(count) * it->second;
        }
    }
    return dot / (nx * nw);
}

Prediction predict_features(const CentroidModel& model, const FeatureVector& features) {
    if (model.labels.empty()) throw ClassifierError("model has no labels");
    if (features.empty()) return {model.labels.front(), true};
    std::size_t best = 0;
    double best_score = cosine(features, model.centroids[0]);
    for (std::size_t i = 1; i < model.labels.size(); ++i) {
        const double s = cosine(features, model.centroids[i]);
        if (s > best_score) {
            best = i;
            best_score = s;
        }
    }
    return {model.labels[best], false};
}

Prediction predict(const CentroidModel& model, const TestCase& test_case) {
    return predict_features(model, featurize(test_case));
}

std::string model_to_json(const CentroidModel& model) {
    nlohmann::ordered_json j;
    j["labels"] = model.labels;
    nlohmann::ordered_json centroids = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < model.labels.size(); ++i) {
        nlohmann::ordered_json weights = nlohmann::ordered_json::object();
        for (const auto& [token, w] : model.centroids[i]) weights[token] = w;
        centroids[model.labels[i]] = std::move(weights);
    }
    j["centroids"] = std::move(centroids);
    return j.dump() + "\n";
}

CentroidModel model_from_json(std::string_view text) {
    try {
        const auto j = nlohmann::json::parse(text);
        CentroidModel model;
        model.labels = j.at("labels").get<std::vector<std::string>>();
        for (const auto& label : model.labels) {
            WeightVector weights;
            for (const auto& [token, w] : j.at("centroids").at(label).items()) {
                weights[token] = w.get<double>();
            }
            model.centroids.push_back(std::move(weights));
        }
        return model;
    } catch (const nlohmann::json::exception& e) {
        throw ClassifierError(std::string("malformed model JSON: ") + e.what());
    }
}

}  // namespace augaudit
