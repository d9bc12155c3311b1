// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The augaudit Authors

#include "augaudit/augmentor.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

#include "augaudit/error.hpp"
#include "parallel.hpp"

namespace augaudit {

namespace {

constexpr int kFreshWordAttempts = 1000;

bool type_like(std::string_view name) noexcept {
    return !name.empty() && name.front() >= 'A' && name.front() <= 'Z';
}

bool is_test_annotation(std::string_view text) noexcept {
    return text == "@Test" || (text.size() > 5 && text.ends_with(".Test"));
}

// Walks the significant-token view of a source and derives the facts in
// SourceAnalysis. Indices named `k` are positions in `sig_`.
class Analyzer {
public:
    Analyzer(SourceAnalysis& out, const MutationConfig& config) : out_(out), config_(config) {
        for (std::size_t i = 0; i < out_.tokens.size(); ++i) {
            if (out_.tokens[i].significant()) out_.significant.push_back(i);
        }
        n_ = out_.significant.size();
        out_.call_position.assign(out_.tokens.size(), false);
    }

    void run() {
        match_brackets();
        find_methods();
        find_test_method();
        classify_identifiers();
        find_declarations();
        choose_locals();
        find_insertion_points();
    }

private:
    struct Method {
        std::size_t name;
        std::size_t body_open;
        std::size_t body_close;
    };

    const Token& tok(std::size_t k) const { return out_.tokens[out_.significant[k]]; }

    bool punct(std::size_t k, std::string_view p) const { return k < n_ && tok(k).is_punct(p); }

    bool ident(std::size_t k) const { return k < n_ && tok(k).kind == TokenKind::Identifier; }

    void match_brackets() {
        match_.assign(n_, kNone);
        std::vector<std::size_t> stack;
        for (std::size_t k = 0; k < n_; ++k) {
            const Token& t = tok(k);
            if (t.kind != TokenKind::Punctuation) continue;
            if (t.text == "(" || t.text == "{" || t.text == "[") {
                stack.push_back(k);
                continue;
            }
            const char open = t.text == ")" ? '(' : t.text == "}" ? '{' : t.text == "]" ? '[' : 0;
            if (open == 0 || stack.empty() || tok(stack.back()).text[0] != open) continue;
            match_[stack.back()] = k;
            match_[k] = stack.back();
            stack.pop_back();
        }
    }

    void find_methods() {
        for (std::size_t k = 0; k + 1 < n_; ++k) {
            if (!ident(k) || !punct(k + 1, "(") || match_[k + 1] == kNone) continue;
            if (k > 0 && (tok(k - 1).is(TokenKind::Keyword, "new") || punct(k - 1, ".") ||
                          punct(k - 1, "::"))) {
                continue;
            }
            std::size_t j = match_[k + 1] + 1;
            if (j < n_ && tok(j).is(TokenKind::Keyword, "throws")) {
                ++j;
                while (j < n_ && (ident(j) || punct(j, ".") || punct(j, ",") || punct(j, "<") ||
                                  punct(j, ">"))) {
                    ++j;
                }
            }
            if (!punct(j, "{") || match_[j] == kNone) continue;
            methods_.push_back({k, j, match_[j]});
            method_names_.insert(k);
        }
    }

    bool annotated_as_test(std::size_t name) const {
        std::size_t k = name;
        while (k > 0) {
            --k;
            const Token& t = tok(k);
            if (t.kind == TokenKind::Punctuation) {
                if (t.text == ";" || t.text == "{" || t.text == "}") return false;
                if (t.text == ")" && match_[k] != kNone) {
                    k = match_[k];
                    continue;
                }
            }
            if (t.kind == TokenKind::Annotation && is_test_annotation(t.text)) return true;
        }
        return false;
    }

    void find_test_method() {
        for (const Method& m : methods_) {
            if (annotated_as_test(m.name)) {
                test_method_ = m;
                break;
            }
        }
        if (!test_method_) {
            for (const Method& m : methods_) {
                if (glob_match(config_.test_method_pattern, tok(m.name).text)) {
                    test_method_ = m;
                    break;
                }
            }
        }
        if (test_method_) out_.test_method_name = out_.significant[test_method_->name];
    }

    void classify_identifiers() {
        in_annotation_args_.assign(n_, false);
        for (std::size_t k = 0; k + 1 < n_; ++k) {
            if (tok(k).kind == TokenKind::Annotation && punct(k + 1, "(") &&
                match_[k + 1] != kNone) {
                for (std::size_t j = k + 1; j <= match_[k + 1]; ++j) in_annotation_args_[j] = true;
            }
        }
        for (std::size_t k = 0; k < n_; ++k) {
            if (!ident(k)) continue;
            const std::string& name = tok(k).text;
            const bool call = punct(k + 1, "(") && method_names_.count(k) == 0;
            const bool member = k > 0 && (punct(k - 1, ".") || punct(k - 1, "::"));
            if (call) out_.call_position[out_.significant[k]] = true;
            if (call || member || in_annotation_args_[k] || method_names_.count(k) != 0) {
                pinned_.insert(name);
            }
        }
    }

    // True when the '>' at k closes a generic argument list opened after an
    // identifier, e.g. the last token of `Map<String, List<Integer>>`.
    bool closes_generic(std::size_t k) const {
        int depth = 0;
        for (std::size_t j = k + 1; j-- > 0;) {
            const Token& t = tok(j);
            if (t.is_punct(">")) {
                ++depth;
            } else if (t.is_punct("<")) {
                if (--depth == 0) return j > 0 && ident(j - 1);
            } else if (!(t.kind == TokenKind::Identifier || t.is_punct(",") || t.is_punct(".") ||
                         t.is_punct("?") || t.is_punct("[") || t.is_punct("]") ||
                         t.is(TokenKind::Keyword, "extends") || t.is(TokenKind::Keyword, "super") ||
                         (t.kind == TokenKind::Keyword && is_primitive_type(t.text)))) {
                return false;
            }
        }
        return false;
    }

    bool type_before(std::size_t k) const {
        if (k == 0) return false;
        const Token& prev = tok(k - 1);
        if (prev.kind == TokenKind::Keyword) return is_primitive_type(prev.text);
        if (prev.kind == TokenKind::Identifier) return true;
        if (prev.is_punct("]")) return k >= 2 && punct(k - 2, "[");
        if (prev.is_punct(">")) return closes_generic(k - 1);
        return false;
    }

    bool declarator_follows(std::size_t k) const {
        if (k + 1 >= n_) return false;
        const Token& next = tok(k + 1);
        if (next.kind != TokenKind::Punctuation) return false;
        if (next.text == "[") return punct(k + 2, "]");
        return next.text == "=" || next.text == ";" || next.text == "," || next.text == ":" ||
               next.text == ")";
    }

    bool inside_body(std::size_t k) const {
        if (methods_.empty()) return true;  // bare statement snippet
        return std::any_of(methods_.begin(), methods_.end(), [k](const Method& m) {
            return k > m.body_open && k < m.body_close;
        });
    }

    void find_declarations() {
        decl_.assign(n_, false);
        for (std::size_t k = 0; k < n_; ++k) {
            if (!ident(k) || !inside_body(k) || !type_before(k) || !declarator_follows(k)) continue;
            decl_[k] = true;
            const std::string& after = tok(k + 1).text;
            if (after != "=" && after != "," && after != "[") continue;
            // further declarators of the same statement: `int a = 1, b, c = 2;`
            int depth = 0;
            for (std::size_t j = k + 1; j < n_; ++j) {
                const Token& t = tok(j);
                if (t.kind != TokenKind::Punctuation) continue;
                if (t.text == "(" || t.text == "[" || t.text == "{") {
                    ++depth;
                } else if (t.text == ")" || t.text == "]" || t.text == "}") {
                    if (--depth < 0) break;
                } else if (depth == 0 && t.text == ";") {
                    break;
                } else if (depth == 0 && t.text == "," && ident(j + 1) && declarator_follows(j + 1) &&
                           tok(j + 2).text != ")" && tok(j + 2).text != ":") {
                    decl_[j + 1] = true;
                }
            }
        }
    }

    void choose_locals() {
        std::set<std::string, std::less<>> seen;
        const std::string test_name =
            test_method_ ? tok(test_method_->name).text : std::string();
        for (std::size_t k = 0; k < n_; ++k) {
            if (!ident(k)) continue;
            const std::string& name = tok(k).text;
            if (!seen.insert(name).second) continue;  // only the first occurrence decides
            if (!decl_[k] || type_like(name) || pinned_.count(name) != 0 ||
                config_.protected_identifiers.count(name) != 0 || name == test_name) {
                continue;
            }
            out_.eligible_locals.push_back(name);
        }
    }

    void find_insertion_points() {
        std::size_t first = 0;
        std::size_t last = n_;
        if (test_method_) {
            first = test_method_->body_open;
            last = test_method_->body_close;
            out_.insertion_points.push_back(tok(first).span.end);
            ++first;
        } else if (methods_.empty()) {
            out_.insertion_points.push_back(0);
        } else {
            return;
        }
        int braces = 0;
        int parens = 0;
        for (std::size_t k = first; k < last; ++k) {
            const Token& t = tok(k);
            if (t.kind != TokenKind::Punctuation) continue;
            if (t.text == "{") ++braces;
            else if (t.text == "}") --braces;
            else if (t.text == "(" || t.text == "[") ++parens;
            else if (t.text == ")" || t.text == "]") --parens;
            else if (t.text == ";" && braces == 0 && parens == 0) {
                if (k + 1 < n_ && tok(k + 1).is(TokenKind::Keyword, "else")) continue;
                out_.insertion_points.push_back(t.span.end);
            }
        }
    }

    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    SourceAnalysis& out_;
    const MutationConfig& config_;
    std::size_t n_ = 0;
    std::vector<std::size_t> match_;
    std::vector<Method> methods_;
    std::set<std::size_t> method_names_;
    std::optional<Method> test_method_;
    std::vector<bool> in_annotation_args_;
    std::set<std::string, std::less<>> pinned_;
    std::vector<bool> decl_;
};

std::string random_number_like(SplitMix64& rng, std::size_t digits) {
    std::string out;
    for (std::size_t i = 0; i < digits; ++i) {
        const auto lo = (i == 0 && digits > 1) ? 1 : 0;
        out.push_back(static_cast<char>('0' + rng.uniform(lo, 9)));
    }
    return out;
}

bool plain_decimal(std::string_view text) noexcept {
    return !text.empty() &&
           std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

const std::set<std::string, std::less<>>& default_protected_identifiers() {
    static const std::set<std::string, std::less<>> names{"Thread", "sleep",   "wait", "notify",
                                                          "Timeout", "await", "join"};
    return names;
}

void MutationConfig::validate() const {
    auto check = [](const IntRange& r, int floor, const char* name) {
        if (r.min < floor || r.max < r.min) {
            throw AugmentError(std::string(name) + " must satisfy " + std::to_string(floor) +
                               " <= min <= max, got (" + std::to_string(r.min) + ", " +
                               std::to_string(r.max) + ")");
        }
    };
    check(insert_count_range, 0, "insert_count_range");
    check(random_word_length_range, 1, "random_word_length_range");
    if (variants_per_original < 0) throw AugmentError("variants_per_original must be >= 0");
}

std::size_t MutationPlan::insert_count() const {
    return static_cast<std::size_t>(std::count_if(edits.begin(), edits.end(), [](const Edit& e) {
        return std::holds_alternative<InsertEdit>(e);
    }));
}

bool glob_match(std::string_view pattern, std::string_view text) noexcept {
    // iterative '*' matcher with single-star backtracking
    std::size_t p = 0, t = 0, star = std::string_view::npos, mark = 0;
    while (t < text.size()) {
        if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            mark = t;
        } else if (p < pattern.size() && pattern[p] == text[t]) {
            ++p;
            ++t;
        } else if (star != std::string_view::npos) {
            p = star + 1;
            t = ++mark;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*') ++p;
    return p == pattern.size();
}

SourceAnalysis analyze_source(std::vector<Token> tokens, const MutationConfig& config) {
    SourceAnalysis out;
    out.tokens = std::move(tokens);
    Analyzer(out, config).run();
    return out;
}

std::string fresh_word(SplitMix64& rng, IntRange length_range,
                       const std::set<std::string, std::less<>>& forbidden) {
    if (length_range.min < 1 || length_range.max < length_range.min) {
        throw AugmentError("fresh_word: empty length range");
    }
    for (int attempt = 0; attempt < kFreshWordAttempts; ++attempt) {
        const auto length = rng.uniform(length_range.min, length_range.max);
        std::string word;
        word.reserve(static_cast<std::size_t>(length));
        for (std::int64_t i = 0; i < length; ++i) {
            word.push_back(static_cast<char>('a' + rng.uniform(0, 25)));
        }
        if (!is_java_keyword(word) && forbidden.count(word) == 0) return word;
    }
    throw AugmentError("fresh_word: no admissible word after " +
                       std::to_string(kFreshWordAttempts) + " attempts");
}

MutationPlan plan_mutations(const TestCase& test_case, const MutationConfig& config,
                            int variant_index, std::uint64_t global_seed) {
    config.validate();
    TokenStream lexed = tokenize(test_case.code);
    if (!lexed.ok) throw TokenizeError("case '" + test_case.id + "': " + lexed.error);

    MutationPlan plan;
    plan.case_id = test_case.id;
    plan.variant_index = variant_index;
    plan.source_hash = fnv1a64(test_case.code);

    const SourceAnalysis analysis = analyze_source(std::move(lexed.tokens), config);
    const auto& tokens = analysis.tokens;

    SplitMix64 rng(case_stream_seed(global_seed, test_case.id,
                                    static_cast<std::uint64_t>(variant_index)));
    std::set<std::string, std::less<>> forbidden;
    for (const auto& t : tokens) {
        if (t.kind == TokenKind::Identifier || t.kind == TokenKind::Keyword) forbidden.insert(t.text);
    }
    auto draw = [&] {
        std::string w = fresh_word(rng, config.random_word_length_range, forbidden);
        forbidden.insert(w);
        return w;
    };

    if (config.enable_rename_locals) {
        for (const auto& name : analysis.eligible_locals) {
            RenameEdit edit{name, draw(), {}};
            for (const auto& t : tokens) {
                if (t.kind == TokenKind::Identifier && t.text == name) edit.occurrences.push_back(t.span);
            }
            plan.edits.emplace_back(std::move(edit));
        }
    }

    if (config.enable_rename_test_method && analysis.test_method_name) {
        const Token& decl = tokens[*analysis.test_method_name];
        plan.edits.emplace_back(RenameEdit{decl.text, draw(), {decl.span}});
    }

    if (config.enable_replace_strings || config.enable_replace_numbers) {
        for (const auto& t : tokens) {
            if (t.kind == TokenKind::StringLiteral && config.enable_replace_strings) {
                plan.edits.emplace_back(ReplaceEdit{t.span, t.text, "\"" + draw() + "\""});
            } else if (t.kind == TokenKind::Number && config.enable_replace_numbers &&
                       plain_decimal(t.text)) {
                plan.edits.emplace_back(
                    ReplaceEdit{t.span, t.text, random_number_like(rng, t.text.size())});
            }
        }
    }

    if (config.enable_insert_unused && !analysis.insertion_points.empty()) {
        const auto count = rng.uniform(config.insert_count_range.min, config.insert_count_range.max);
        for (std::int64_t i = 0; i < count; ++i) {
            const std::size_t at = analysis.insertion_points[rng.index(analysis.insertion_points.size())];
            const std::string word = draw();
            const auto value = rng.uniform(0, 9);
            plan.edits.emplace_back(InsertEdit{at, " int " + word + " = " + std::to_string(value) + ";"});
        }
    }
    return plan;
}

std::string variant_id(std::string_view origin_id, int index) {
    return std::string(origin_id) + "_v" + std::to_string(index);
}

TestCase apply_mutations(const TestCase& test_case, const MutationPlan& plan) {
    if (plan.case_id != test_case.id) {
        throw AugmentError("plan for '" + plan.case_id + "' applied to '" + test_case.id + "'");
    }
    if (plan.variant_index < 1) throw AugmentError("variant index must be >= 1");
    const std::string& code = test_case.code;
    if (plan.source_hash != fnv1a64(code)) {
        throw AugmentError("span mismatch: plan is stale for case '" + test_case.id + "'");
    }

    struct Piece {
        std::size_t start;
        std::size_t end;
        bool insert;
        std::size_t order;
        const std::string* text;
    };
    std::vector<Piece> pieces;
    auto span_check = [&](const Span& s, std::string_view expected) {
        if (s.end > code.size() || s.start > s.end ||
            std::string_view(code).substr(s.start, s.size()) != expected) {
            throw AugmentError("span mismatch in plan for '" + test_case.id + "' at offset " +
                               std::to_string(s.start));
        }
    };
    for (const Edit& edit : plan.edits) {
        if (const auto* r = std::get_if<RenameEdit>(&edit)) {
            for (const Span& s : r->occurrences) {
                span_check(s, r->from);
                pieces.push_back({s.start, s.end, false, pieces.size(), &r->to});
            }
        } else if (const auto* rep = std::get_if<ReplaceEdit>(&edit)) {
            span_check(rep->span, rep->original);
            pieces.push_back({rep->span.start, rep->span.end, false, pieces.size(), &rep->replacement});
        } else {
            const auto& ins = std::get<InsertEdit>(edit);
            if (ins.offset > code.size()) {
                throw AugmentError("span mismatch: insertion beyond end of '" + test_case.id + "'");
            }
            pieces.push_back({ins.offset, ins.offset, true, pieces.size(), &ins.text});
        }
    }
    std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
        if (a.start != b.start) return a.start < b.start;
        if (a.insert != b.insert) return a.insert;  // insertions land before a replacement at the same offset
        return a.order < b.order;
    });

    std::string result;
    result.reserve(code.size() + 64);
    std::size_t cursor = 0;
    for (const Piece& p : pieces) {
        if (p.start < cursor) {
            throw AugmentError("overlapping edits in plan for '" + test_case.id + "' at offset " +
                               std::to_string(p.start));
        }
        result.append(code, cursor, p.start - cursor);
        result += *p.text;
        cursor = p.end;
    }
    result.append(code, cursor, std::string::npos);

    return TestCase{variant_id(test_case.id, plan.variant_index), test_case.id, plan.variant_index,
                    test_case.category, std::move(result)};
}

AugmentResult augment_corpus(const Corpus& corpus, const MutationConfig& config,
                             std::uint64_t global_seed) {
    config.validate();
    AugmentResult result;
    const int k = config.variants_per_original;
    if (k == 0) {
        result.corpus = corpus;
        return result;
    }

    const std::vector<std::string> originals = corpus.original_ids();
    struct PerCase {
        std::vector<TestCase> variants;
        std::vector<SkipRecord> skips;
    };
    std::vector<PerCase> work(originals.size());

    detail::parallel_for(originals.size(), [&](std::size_t i) {
        const TestCase& origin = corpus.at(originals[i]);
        PerCase& slot = work[i];
        if (TokenStream lexed = tokenize(origin.code); !lexed.ok) {
            slot.skips.push_back({origin.id, "tokenize: " + lexed.error});
            return;
        }
        for (int v = 1; v <= k; ++v) {
            const std::string id = variant_id(origin.id, v);
            if (corpus.contains(id)) {
                slot.skips.push_back({id, "id collision: '" + id + "' already in corpus"});
                continue;
            }
            try {
                slot.variants.push_back(apply_mutations(origin, plan_mutations(origin, config, v, global_seed)));
            } catch (const Error& e) {
                slot.skips.push_back({id, e.what()});
            }
        }
    });

    std::vector<TestCase> cases = corpus.cases();
    for (auto& slot : work) {
        result.variants_added += slot.variants.size();
        std::move(slot.variants.begin(), slot.variants.end(), std::back_inserter(cases));
        std::move(slot.skips.begin(), slot.skips.end(), std::back_inserter(result.skips));
    }
    result.corpus = Corpus::build(std::move(cases), corpus.policy());
    return result;
}

std::string skips_to_jsonl(const std::vector<SkipRecord>& skips) {
    std::string out;
    for (const auto& s : skips) {
        nlohmann::ordered_json rec;
        rec["id"] = s.id;
        rec["reason"] = s.reason;
        out += rec.dump();
        out += '\n';
    }
    return out;
}

}  // namespace augaudit
