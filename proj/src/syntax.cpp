//
// Copyright (c) 2026, the aspbench authors
//
// This file is part of aspbench.
//
// Permission is hereby granted, free of charge, to any person obtaining a copy
// of this software and associated documentation files (the "Software"), to
// deal in the Software without restriction, including without limitation the
// rights to use, copy, modify, merge, publish, distribute, sublicense, and/or
// sell copies of the Software, and to permit persons to whom the Software is
// furnished to do so, subject to the following conditions:
//
// The above copyright notice and this permission notice shall be included in
// all copies or substantial portions of the Software.
//
// THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
// IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
// FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
// AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
// LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING
// FROM, OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS
// IN THE SOFTWARE.
//

#include <aspbench/digest.hpp>
#include <aspbench/error.hpp>
#include <aspbench/syntax.hpp>

#include "lexer.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace aspbench {

using detail::Tok;
using detail::Token;

bool is_identifier(std::string_view text) noexcept {
    std::size_t i = 0;
    while (i < text.size() && text[i] == '_') {
        ++i;
    }
    if (i >= text.size() || text[i] < 'a' || text[i] > 'z') {
        return false;
    }
    return std::all_of(text.begin() + static_cast<std::ptrdiff_t>(i), text.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '\'';
    });
}

PredicateSignature PredicateSignature::parse(std::string_view text) {
    while (!text.empty() && text.front() == ' ') {
        text.remove_prefix(1);
    }
    while (!text.empty() && text.back() == ' ') {
        text.remove_suffix(1);
    }
    auto slash = text.rfind('/');
    if (slash == std::string_view::npos) {
        throw InvalidIdentifier("expected name/arity, got '" + std::string(text) + "'");
    }
    PredicateSignature sig;
    sig.name = std::string(text.substr(0, slash));
    auto digits = text.substr(slash + 1);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), sig.arity);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || sig.arity < 0 || !is_identifier(sig.name)) {
        throw InvalidIdentifier("invalid predicate signature '" + std::string(text) + "'");
    }
    return sig;
}

SignatureSet parse_signatures(std::string_view text) {
    SignatureSet out;
    while (!text.empty()) {
        auto comma = text.find(',');
        auto item = text.substr(0, comma);
        if (item.find_first_not_of(" \t") != std::string_view::npos) {
            out.insert(PredicateSignature::parse(item));
        }
        if (comma == std::string_view::npos) {
            break;
        }
        text.remove_prefix(comma + 1);
    }
    return out;
}

std::string format_signatures(const SignatureSet& sigs) {
    std::string out;
    for (const auto& s : sigs) {
        if (!out.empty()) {
            out += ", ";
        }
        out += s.str();
    }
    return out;
}

std::string_view to_string(RuleKind kind) noexcept {
    switch (kind) {
        case RuleKind::fact: return "fact";
        case RuleKind::normal_rule: return "normal_rule";
        case RuleKind::choice_rule: return "choice_rule";
        case RuleKind::strong_constraint: return "strong_constraint";
        case RuleKind::weak_constraint: return "weak_constraint";
        case RuleKind::directive: return "directive";
        case RuleKind::comment: return "comment";
    }
    return "unknown";
}

namespace {

bool is_open(std::string_view p) { return p == "(" || p == "[" || p == "{"; }
bool is_close(std::string_view p) { return p == ")" || p == "]" || p == "}"; }
char closer_for(char open) { return open == '(' ? ')' : open == '[' ? ']' : '}'; }

std::optional<int> parse_int(std::string_view digits, bool negative) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
        return std::nullopt;
    }
    return negative ? -value : value;
}

// Priority after '@' at tokens[at]; non-numeric priorities count as 0.
int priority_after(const std::vector<Token>& toks, std::size_t at) {
    bool neg = false;
    std::size_t i = at + 1;
    if (i < toks.size() && toks[i].is("-")) {
        neg = true;
        ++i;
    }
    if (i < toks.size() && toks[i].kind == Tok::number) {
        return parse_int(toks[i].text, neg).value_or(0);
    }
    return 0;
}

std::size_t terminator_index(const std::vector<Token>& toks) {
    int depth = 0;
    for (std::size_t i = 0; i < toks.size(); ++i) {
        if (toks[i].kind != Tok::punct) {
            continue;
        }
        if (is_open(toks[i].text)) {
            ++depth;
        } else if (is_close(toks[i].text)) {
            --depth;
        } else if (depth == 0 && toks[i].text == ".") {
            return i;
        }
    }
    return toks.size();
}

int weak_level_of(const std::vector<Token>& toks) {
    auto term = terminator_index(toks);
    if (term + 1 >= toks.size() || !toks[term + 1].is("[")) {
        return 0;
    }
    int depth = 0;
    for (std::size_t i = term + 1; i < toks.size(); ++i) {
        const auto& t = toks[i];
        if (t.kind == Tok::punct && is_open(t.text)) {
            ++depth;
        } else if (t.kind == Tok::punct && is_close(t.text)) {
            if (--depth == 0) {
                break;
            }
        } else if (depth == 1 && t.is(",")) {
            break;
        } else if (depth == 1 && t.is("@")) {
            return priority_after(toks, i);
        }
    }
    return 0;
}

int minimize_level_of(const std::vector<Token>& toks) {
    std::optional<int> best;
    int depth = 0;
    for (std::size_t i = 0; i < toks.size(); ++i) {
        const auto& t = toks[i];
        if (t.kind == Tok::punct && is_open(t.text)) {
            ++depth;
        } else if (t.kind == Tok::punct && is_close(t.text)) {
            --depth;
        } else if (depth == 1 && t.is("@")) {
            int p = priority_after(toks, i);
            best = best ? std::max(*best, p) : p;
        }
    }
    return best.value_or(0);
}

struct Classified {
    RuleText rule;
    std::vector<std::pair<PredicateSignature, Occurrence>> occurrences;
};

Classified classify(std::string text, std::size_t rule_index) {
    Classified out;
    out.rule.text = std::move(text);
    auto& rule = out.rule;
    if (rule.text.starts_with("%")) {
        rule.kind = RuleKind::comment;
        return out;
    }
    auto toks = detail::tokenize(rule.text);
    if (toks.empty()) {
        rule.kind = RuleKind::comment;
        return out;
    }
    const auto& first = toks.front();
    auto term = terminator_index(toks);
    if (first.kind == Tok::hash) {
        rule.kind = RuleKind::directive;
        if (detail::is_aggregate_keyword(first.text)) {
            rule.minimize_level = minimize_level_of(toks);
        }
    } else if (first.is(":-")) {
        rule.kind = RuleKind::strong_constraint;
    } else if (first.is(":~")) {
        rule.kind = RuleKind::weak_constraint;
        rule.weak_level = weak_level_of(toks);
    } else {
        std::size_t body = term;
        int depth = 0;
        bool choice = false;
        bool complex_head = false;
        bool has_variable = false;
        for (std::size_t i = 0; i < term; ++i) {
            const auto& t = toks[i];
            if (t.kind == Tok::punct && is_open(t.text)) {
                if (depth == 0 && t.text == "{") {
                    choice = true;
                }
                ++depth;
            } else if (t.kind == Tok::punct && is_close(t.text)) {
                --depth;
            } else if (depth == 0 && t.is(":-")) {
                body = i;
                break;
            } else if (t.kind == Tok::hash && detail::is_aggregate_keyword(t.text)) {
                choice = true;
            } else if (depth == 0 && (t.is(";") || t.is("|") || t.is(":") || detail::is_comparison(t.text))) {
                complex_head = true;
            } else if (t.kind == Tok::variable) {
                has_variable = true;
            }
        }
        bool simple_atom = false;
        std::size_t i = 0;
        if (i < body && toks[i].is("-")) {
            ++i;
        }
        if (i < body && toks[i].kind == Tok::identifier && toks[i].text != "not") {
            std::size_t j = i + 1;
            if (j < body && toks[j].is("(")) {
                j = detail::matching_close(toks, j) + 1;
            }
            simple_atom = j == body;
        }
        if (choice) {
            rule.kind = RuleKind::choice_rule;
        } else if (body == term && simple_atom && !complex_head && !has_variable && term < toks.size()) {
            rule.kind = RuleKind::fact;
        } else {
            rule.kind = RuleKind::normal_rule;
        }
    }
    for (const auto& atom : detail::find_atoms(toks)) {
        const auto& name = toks[atom.name_token];
        PredicateSignature sig{std::string(name.text), atom.arity};
        if (rule.kind == RuleKind::fact && !rule.fact_signature) {
            rule.fact_signature = sig;
        }
        out.occurrences.emplace_back(std::move(sig), Occurrence{rule_index, name.offset, name.length});
    }
    return out;
}

// Splits source into statement and comment texts.
std::vector<std::string> segment(std::string_view source) {
    std::vector<std::string> out;
    detail::Lexer lex(source);
    for (auto tok = lex.next(); tok.kind != Tok::end; tok = lex.next()) {
        if (tok.kind == Tok::comment) {
            out.emplace_back(tok.text);
            continue;
        }
        const auto start = tok.offset;
        std::size_t end = 0;
        if (tok.kind == Tok::hash && tok.text == "#script") {
            auto close = source.find("#end", start);
            auto dot = close == std::string_view::npos ? close : source.find('.', close);
            if (dot == std::string_view::npos) {
                auto [l, c] = lex.location(start);
                throw LexError(l, c, "unterminated #script block");
            }
            end = dot + 1;
            lex.seek(end);
            out.emplace_back(source.substr(start, end - start));
            continue;
        }
        std::vector<std::pair<char, std::size_t>> stack;
        const bool weak = tok.is(":~");
        auto last_end = tok.offset + tok.length;
        while (true) {
            if (tok.kind == Tok::punct) {
                if (is_open(tok.text)) {
                    stack.emplace_back(tok.text.front(), tok.offset);
                } else if (is_close(tok.text)) {
                    if (stack.empty() || closer_for(stack.back().first) != tok.text.front()) {
                        auto [l, c] = lex.location(tok.offset);
                        throw LexError(l, c, "unbalanced '" + std::string(tok.text) + "'");
                    }
                    stack.pop_back();
                } else if (tok.text == "." && stack.empty()) {
                    end = tok.offset + 1;
                    break;
                }
            }
            if (tok.kind != Tok::comment) {
                last_end = tok.offset + tok.length;
            }
            tok = lex.next();
            if (tok.kind == Tok::end) {
                if (!stack.empty()) {
                    auto [l, c] = lex.location(stack.back().second);
                    throw LexError(l, c, std::string("unbalanced '") + stack.back().first + "'");
                }
                end = last_end;
                break;
            }
        }
        if (weak) {
            auto saved = lex.position();
            auto next = lex.next();
            while (next.kind == Tok::comment) {
                next = lex.next();
            }
            if (next.is("[")) {
                int depth = 0;
                for (; next.kind != Tok::end; next = lex.next()) {
                    if (next.kind != Tok::punct) {
                        continue;
                    }
                    if (is_open(next.text)) {
                        ++depth;
                    } else if (is_close(next.text) && --depth == 0) {
                        break;
                    }
                }
                if (next.kind == Tok::end) {
                    auto [l, c] = lex.location(saved);
                    throw LexError(l, c, "unbalanced '['");
                }
                end = next.offset + 1;
            } else {
                lex.seek(saved);
            }
        }
        out.emplace_back(source.substr(start, end - start));
    }
    return out;
}

} // namespace

Program Program::parse(std::string_view source) {
    Program prg;
    auto texts = segment(source);
    prg.rules_.reserve(texts.size());
    for (std::size_t i = 0; i < texts.size(); ++i) {
        auto c = classify(std::move(texts[i]), i);
        for (auto& [sig, occ] : c.occurrences) {
            prg.index_[sig].push_back(occ);
        }
        prg.rules_.push_back(std::move(c.rule));
    }
    prg.hash_ = sha256_hex(prg.str());
    return prg;
}

Program Program::from_rules(std::span<const std::string> texts) {
    std::string joined;
    for (const auto& t : texts) {
        joined += t;
        joined += '\n';
    }
    return parse(joined);
}

Program Program::join(std::span<const Program> parts) {
    std::string joined;
    for (const auto& p : parts) {
        joined += p.str();
    }
    return parse(joined);
}

std::string Program::str() const {
    std::string out;
    for (const auto& r : rules_) {
        out += r.text;
        out += '\n';
    }
    return out;
}

bool Program::has_optimization() const noexcept {
    return std::any_of(rules_.begin(), rules_.end(),
                       [](const RuleText& r) { return r.weak_level.has_value() || r.minimize_level.has_value(); });
}

SignatureSet Program::signatures() const {
    SignatureSet out;
    for (const auto& [sig, occ] : index_) {
        out.insert(sig);
    }
    return out;
}

std::set<std::string> Program::predicate_names() const {
    std::set<std::string> out;
    for (const auto& [sig, occ] : index_) {
        out.insert(sig.name);
    }
    return out;
}

std::size_t Program::count(RuleKind kind) const noexcept {
    return static_cast<std::size_t>(
        std::count_if(rules_.begin(), rules_.end(), [kind](const RuleText& r) { return r.kind == kind; }));
}

std::vector<std::pair<PredicateSignature, Occurrence>> Program::occurrences_in(std::size_t rule) const {
    std::vector<std::pair<PredicateSignature, Occurrence>> out;
    for (const auto& [sig, occs] : index_) {
        for (const auto& o : occs) {
            if (o.rule == rule) {
                out.emplace_back(sig, o);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second.offset < b.second.offset; });
    return out;
}

Program rename_predicates(const Program& program, const PredicateMapping& mapping, RenameDirection) {
    std::map<std::string, std::string> to_gold;
    const auto names = program.predicate_names();
    for (const auto& [gold, cand] : mapping.pairs) {
        if (!is_identifier(gold) || !is_identifier(cand)) {
            throw InvalidIdentifier("invalid predicate name in mapping: '" + gold + "' -> '" + cand + "'");
        }
        auto [it, inserted] = to_gold.emplace(cand, gold);
        if (!inserted && it->second != gold && names.contains(cand)) {
            throw MappingCollision("candidate predicate '" + cand + "' is paired with both '" + it->second +
                                   "' and '" + gold + "'");
        }
    }
    std::map<std::string, std::string> claimed; // final name -> original name
    for (const auto& name : names) {
        auto it = to_gold.find(name);
        const auto& target = it == to_gold.end() ? name : it->second;
        auto [c, inserted] = claimed.emplace(target, name);
        if (!inserted) {
            throw MappingCollision("predicates '" + c->second + "' and '" + name + "' would both be renamed to '" +
                                   target + "'");
        }
    }
    std::vector<std::string> texts;
    texts.reserve(program.rules().size());
    for (std::size_t i = 0; i < program.rules().size(); ++i) {
        std::string text = program.rules()[i].text;
        auto occ = program.occurrences_in(i);
        for (auto it = occ.rbegin(); it != occ.rend(); ++it) {
            auto m = to_gold.find(it->first.name);
            if (m != to_gold.end()) {
                text.replace(it->second.offset, it->second.length, m->second);
            }
        }
        texts.push_back(std::move(text));
    }
    return Program::from_rules(texts);
}

Program strip_input_facts(const Program& program, const SignatureSet& inputs) {
    std::vector<std::string> texts;
    for (const auto& r : program.rules()) {
        if (r.kind == RuleKind::fact && r.fact_signature && inputs.contains(*r.fact_signature)) {
            continue;
        }
        texts.push_back(r.text);
    }
    return Program::from_rules(texts);
}

Program drop_show_directives(const Program& program) {
    std::vector<std::string> texts;
    for (const auto& r : program.rules()) {
        if (r.kind == RuleKind::directive && r.text.starts_with("#show")) {
            continue;
        }
        texts.push_back(r.text);
    }
    return Program::from_rules(texts);
}

int max_weak_level(const Program& program) noexcept {
    std::optional<int> best;
    for (const auto& r : program.rules()) {
        for (const auto& lvl : {r.weak_level, r.minimize_level}) {
            if (lvl) {
                best = best ? std::max(*best, *lvl) : *lvl;
            }
        }
    }
    return best.value_or(0);
}

std::vector<std::string> arity_warnings(const Program& renamed, const SignatureSet& expected) {
    std::vector<std::string> out;
    std::set<std::string> expected_names;
    for (const auto& s : expected) {
        expected_names.insert(s.name);
    }
    for (const auto& sig : renamed.signatures()) {
        if (expected_names.contains(sig.name) && !expected.contains(sig)) {
            out.push_back("predicate " + sig.str() + " does not match the expected arity of '" + sig.name + "'");
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Ground atoms

namespace {

class TermParser {
public:
    explicit TermParser(std::string_view s) : s_(s) {}

    void atom(std::string& pred, std::vector<std::string>& args) {
        skip();
        if (peek() == '-') {
            ++pos_;
            pred = "-";
        }
        skip();
        auto name = identifier();
        if (!is_identifier(name)) {
            fail("expected predicate name");
        }
        pred += name;
        skip();
        if (peek() == '(') {
            ++pos_;
            skip();
            if (peek() != ')') {
                args.push_back(term());
                skip();
                while (peek() == ',') {
                    ++pos_;
                    args.push_back(term());
                    skip();
                }
            }
            expect(')');
        }
        skip();
        if (pos_ != s_.size()) {
            fail("trailing characters");
        }
    }

private:
    std::string term() {
        skip();
        char c = peek();
        if (c == '-') {
            ++pos_;
            return "-" + term();
        }
        if (c == '"') {
            auto start = pos_++;
            while (pos_ < s_.size() && s_[pos_] != '"') {
                pos_ += s_[pos_] == '\\' ? 2 : 1;
            }
            expect('"');
            return std::string(s_.substr(start, pos_ - start));
        }
        if (c == '(') {
            ++pos_;
            std::vector<std::string> items;
            bool trailing = false;
            skip();
            while (peek() != ')') {
                items.push_back(term());
                skip();
                trailing = false;
                if (peek() == ',') {
                    ++pos_;
                    trailing = true;
                    skip();
                } else {
                    break;
                }
            }
            expect(')');
            std::string out = "(";
            for (std::size_t i = 0; i < items.size(); ++i) {
                out += (i ? "," : "") + items[i];
            }
            if (items.size() == 1 && trailing) {
                out += ",";
            }
            return out + ")";
        }
        if (c >= '0' && c <= '9') {
            auto start = pos_;
            while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') {
                ++pos_;
            }
            auto digits = s_.substr(start, pos_ - start);
            auto nz = digits.find_first_not_of('0');
            return nz == std::string_view::npos ? "0" : std::string(digits.substr(nz));
        }
        if (c == '#') {
            auto start = pos_++;
            identifier();
            return std::string(s_.substr(start, pos_ - start));
        }
        auto name = identifier();
        if (name.empty()) {
            fail("expected term");
        }
        std::string out(name);
        skip();
        if (peek() == '(') {
            ++pos_;
            out += '(';
            skip();
            bool first = true;
            while (peek() != ')') {
                if (!first) {
                    expect(',');
                }
                out += (first ? "" : ",") + term();
                first = false;
                skip();
            }
            expect(')');
            out += ')';
        }
        return out;
    }

    std::string_view identifier() {
        auto start = pos_;
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
                c == '\'') {
                ++pos_;
            } else {
                break;
            }
        }
        return s_.substr(start, pos_ - start);
    }

    void skip() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r')) {
            ++pos_;
        }
    }
    [[nodiscard]] char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void expect(char c) {
        if (peek() != c) {
            fail(std::string("expected '") + c + "'");
        }
        ++pos_;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw LexError(1, pos_ + 1, msg + " in atom '" + std::string(s_) + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace

GroundAtom GroundAtom::parse(std::string_view text) {
    GroundAtom a;
    TermParser(text).atom(a.predicate_, a.args_);
    a.text_ = a.predicate_;
    if (!a.args_.empty()) {
        a.text_ += '(';
        for (std::size_t i = 0; i < a.args_.size(); ++i) {
            a.text_ += (i ? "," : "") + a.args_[i];
        }
        a.text_ += ')';
    }
    return a;
}

AnswerSet AnswerSet::from_atoms(std::vector<GroundAtom> atoms, std::string instance) {
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
    return {std::move(instance), std::move(atoms)};
}

bool AnswerSet::contains(const GroundAtom& atom) const { return std::binary_search(atoms.begin(), atoms.end(), atom); }

std::string AnswerSet::str() const {
    std::string out = "{";
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        out += (i ? " " : "") + atoms[i].text();
    }
    return out + "}";
}

std::string AnswerSet::as_facts() const {
    std::string out;
    for (const auto& a : atoms) {
        out += a.text();
        out += ".\n";
    }
    return out;
}

std::vector<GroundAtom> project_atoms(std::span<const GroundAtom> atoms, const SignatureSet& preds) {
    std::vector<GroundAtom> out;
    for (const auto& a : atoms) {
        if (preds.contains(a.signature())) {
            out.push_back(a);
        }
    }
    return out;
}

AnswerSet project(const AnswerSet& model, const SignatureSet& preds) {
    return AnswerSet::from_atoms(project_atoms(model.atoms, preds), model.instance);
}

} // namespace aspbench
