// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The augaudit Authors

#include "augaudit/synthetic.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>

#include "augaudit/error.hpp"
#include "augaudit/tokenizer.hpp"

namespace augaudit {

namespace {

using Words = std::vector<std::string>;

const std::map<std::string, Words>& preset_vocabulary() {
    static const std::map<std::string, Words> vocab = {
        {"Async", {"waitFor", "pollUntil", "submitTask", "onComplete", "awaitResult", "callback",
                   "schedule", "getFuture", "Executor", "CompletableFuture", "CountDownLatch",
                   "Callback"}},
        {"UC", {"iterator", "keySet", "values", "entrySet", "toArray", "stream", "sorted",
                "containsAll", "HashMap", "HashSet", "Iterator", "Collection"}},
        {"Conc", {"lock", "unlock", "synchronize", "incrementAndGet", "compareAndSet", "start",
                  "interrupt", "acquire", "AtomicInteger", "ReentrantLock", "Semaphore", "Runnable"}},
        {"Time", {"currentTimeMillis", "nanoTime", "now", "plusDays", "getHour", "format",
                  "truncatedTo", "elapsed", "LocalDateTime", "Instant", "Duration", "Clock"}},
        {"TOD", {"getInstance", "reset", "clearCache", "setProperty", "getProperty", "register",
                 "initialize", "restore", "Singleton", "Registry", "GlobalConfig", "StaticState"}},
    };
    return vocab;
}

const Words& common_vocabulary() {
    static const Words words = {"assertEquals", "assertTrue", "assertNotNull", "getValue", "setValue",
                                "size", "add", "get", "put", "create", "build", "verify", "process",
                                "handle", "check", "update", "List", "Map", "Helper", "Builder",
                                "Service", "Client", "Result", "Request"};
    return words;
}

const Words& local_names() {
    static const Words words = {"result", "value", "count", "item", "data", "expected", "actual",
                                "input", "output", "entry", "node", "buffer", "total", "index"};
    return words;
}

const Words& message_words() {
    static const Words words = {"should", "not", "be", "null", "expected", "value", "failed",
                                "timeout", "done", "ready", "missing", "ok"};
    return words;
}

bool is_type_name(const std::string& w) { return !w.empty() && std::isupper(static_cast<unsigned char>(w[0])); }

std::string capitalize(std::string w) {
    if (!w.empty()) w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
    return w;
}

std::string lower(std::string w) {
    for (char& c : w) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return w;
}

std::string hashed_word(std::uint64_t h) {
    SplitMix64 rng(h);
    std::string w;
    const auto len = rng.uniform(5, 9);
    for (int i = 0; i < len; ++i) w.push_back(static_cast<char>('a' + rng.index(26)));
    return w;
}

const std::string& pick(SplitMix64& rng, const Words& words) { return words[rng.index(words.size())]; }

/// Emits the body of one test method.
class Writer {
public:
    Writer(SplitMix64& rng, const Words& category_vocab, const Words& origin_words,
           const SyntheticOptions& options)
        : rng_(rng), options_(options) {
        for (const auto& w : category_vocab) (is_type_name(w) ? cat_types_ : cat_calls_).push_back(w);
        for (const auto& w : common_vocabulary()) (is_type_name(w) ? common_types_ : common_calls_).push_back(w);
        origin_calls_ = origin_words;
        for (const auto& w : origin_words) origin_types_.push_back(capitalize(w));
    }

    std::string call() { return name(cat_calls_, origin_calls_, common_calls_); }
    std::string type() { return name(cat_types_, origin_types_, common_types_); }

    std::string number() { return std::to_string(rng_.uniform(0, 500)); }

    std::string message() {
        std::string s = "\"";
        const auto n = rng_.uniform(1, 3);
        for (int i = 0; i < n; ++i) {
            if (i) s += ' ';
            s += pick(rng_, message_words());
        }
        return s + "\"";
    }

    std::string args() {
        const auto n = rng_.uniform(0, 2);
        std::string out;
        for (int i = 0; i < n; ++i) {
            if (i) out += ", ";
            switch (rng_.index(3)) {
                case 0: out += existing_or_number(); break;
                case 1: out += number(); break;
                default: out += message(); break;
            }
        }
        return out;
    }

    // Every draw is bound to a named local first: operands of `+` are
    // unsequenced, and the output must not depend on the compiler.
    std::string statement(const std::string& in) {
        switch (rng_.index(11)) {
            case 0: {
                const auto t = type();
                const auto v = declare_new();
                const auto a = args();
                return in + t + " " + v + " = new " + t + "(" + a + ");\n";
            }
            case 1: {
                const auto v = existing();
                const auto c = call();
                const auto a = args();
                return in + v + "." + c + "(" + a + ");\n";
            }
            case 2: {
                const auto c = call();
                const auto a = args();
                return in + c + "(" + a + ");\n";
            }
            case 3: {
                const auto n = number();
                const auto v = existing();
                const auto c = call();
                return in + "assertEquals(" + n + ", " + v + "." + c + "());\n";
            }
            case 4: {
                const auto v = declare_new();
                const auto n = number();
                return in + "int " + v + " = " + n + ";\n";
            }
            case 5: {
                const auto v = declare_new();
                const auto m = message();
                return in + "String " + v + " = " + m + ";\n";
            }
            case 6: {
                const auto n = number();
                const auto v = existing();
                const auto c = call();
                return in + "for (int i = 0; i < " + n + "; i++) {\n" + in + "    " + v + "." + c +
                       "(i);\n" + in + "}\n";
            }
            case 7: {
                const auto v = existing();
                const auto c = call();
                return in + "if (" + v + " != null) {\n" + in + "    " + c + "(" + v + ");\n" + in + "}\n";
            }
            case 8: {
                const auto v = existing();
                const auto c = call();
                const auto t = type();
                const auto m = message();
                return in + "try {\n" + in + "    " + v + "." + c + "();\n" + in + "} catch (" + t +
                       "Exception e) {\n" + in + "    fail(" + m + ");\n" + in + "}\n";
            }
            case 9: {
                const auto t = type();
                const auto c = call();
                const auto n = number();
                return in + t + "." + c + "(" + n + ");\n";
            }
            default: {
                const auto v = existing();
                const auto c = call();
                const auto a = args();
                return in + "assertTrue(" + v + "." + c + "(" + a + "));\n";
            }
        }
    }

private:
    std::string name(const Words& cat, const Words& origin, const Words& common) {
        const double u = rng_.unit();
        if (u < options_.category_share && !cat.empty()) return pick(rng_, cat);
        if (u < options_.category_share + options_.origin_share && !origin.empty()) return pick(rng_, origin);
        return pick(rng_, common);
    }

    std::string declare_new() {
        const auto& base = pick(rng_, local_names());
        std::string n = base;
        for (int k = 2; std::find(declared_.begin(), declared_.end(), n) != declared_.end(); ++k) {
            n = base + std::to_string(k);
        }
        declared_.push_back(n);
        return n;
    }

    // Uses of a not-yet-declared local fall back to a field-like reference.
    std::string existing() { return declared_.empty() ? "this" : pick(rng_, declared_); }
    std::string existing_or_number() { return declared_.empty() ? number() : pick(rng_, declared_); }

    SplitMix64& rng_;
    const SyntheticOptions& options_;
    Words cat_calls_, cat_types_, common_calls_, common_types_, origin_calls_, origin_types_;
    Words declared_;
};

}  // namespace

std::vector<std::string> synthetic_vocabulary(const std::string& category) {
    const auto& preset = preset_vocabulary();
    if (auto it = preset.find(category); it != preset.end()) return it->second;
    Words words;
    const std::uint64_t h = fnv1a64(category);
    for (std::uint64_t i = 0; i < 12; ++i) {
        auto w = hashed_word(h ^ (i * kGoldenGamma));
        words.push_back(i < 8 ? w : capitalize(w));
    }
    return words;
}

std::vector<std::string> synthetic_origin_words(SplitMix64& rng, std::size_t count) {
    std::vector<std::string> words;
    while (words.size() < count) {
        std::string w = "z";  // no vocabulary word starts with z
        const auto len = rng.uniform(5, 8);
        for (int i = 0; i < len; ++i) w.push_back(static_cast<char>('a' + rng.index(26)));
        if (is_java_keyword(w) || std::find(words.begin(), words.end(), w) != words.end()) continue;
        words.push_back(std::move(w));
    }
    return words;
}

std::string synthetic_code(SplitMix64& rng, const std::string& category,
                           const std::vector<std::string>& origin_words,
                           const SyntheticOptions& options) {
    if (options.statements_min < 1 || options.statements_min > options.statements_max) {
        throw ConfigError("synthetic statement range is empty");
    }
    const auto vocab = synthetic_vocabulary(category);
    std::string code;
    if (rng.unit() < options.setup_method_share) {
        Writer setup(rng, vocab, origin_words, options);
        code += "@Before\npublic void setUp() {\n";
        code += setup.statement("    ");
        code += "}\n\n";
    }
    Writer w(rng, vocab, origin_words, options);
    const auto stem = capitalize(pick(rng, local_names()));
    const std::string method = "test" + stem + capitalize(w.call());
    code += "@Test\npublic void " + method + "() throws Exception {\n";
    const auto n = rng.uniform(options.statements_min, options.statements_max);
    for (int i = 0; i < n; ++i) code += w.statement("    ");
    code += "}\n";
    return code;
}

Corpus synthetic_corpus(const SyntheticOptions& options, std::uint64_t seed) {
    std::vector<TestCase> cases;
    for (const auto& label : options.labels) {
        for (std::size_t i = 0; i < options.originals_per_label; ++i) {
            char num[16];
            std::snprintf(num, sizeof num, "%03zu", i);
            TestCase c;
            c.id = lower(label) + "_" + num;
            c.origin_id = c.id;
            c.version = 0;
            c.category = label;
            SplitMix64 rng(case_stream_seed(seed, c.id, 0));
            const auto words = synthetic_origin_words(rng, options.origin_words);
            c.code = synthetic_code(rng, label, words, options);
            cases.push_back(std::move(c));
        }
    }
    return Corpus::build(std::move(cases), LabelPolicy{options.labels, false});
}

}  // namespace augaudit
