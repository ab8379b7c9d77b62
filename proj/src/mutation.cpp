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

#include <aspbench/mutation.hpp>

#include <aspbench/error.hpp>

#include "lexer.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <random>

namespace aspbench {
namespace {

using detail::Tok;
using detail::Token;

struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t first_token = 0;
    std::size_t last_token = 0; // inclusive
};

struct Edit {
    MutationKind kind;
    std::size_t rule;
    std::string text; // replacement rule text; empty deletes the rule
    std::string detail;
};

bool is_open(const Token& t) { return t.kind == Tok::punct && (t.text == "(" || t.text == "[" || t.text == "{"); }
bool is_close(const Token& t) { return t.kind == Tok::punct && (t.text == ")" || t.text == "]" || t.text == "}"); }

std::string splice(const std::string& text, std::size_t begin, std::size_t end, std::string_view with) {
    return text.substr(0, begin) + std::string(with) + text.substr(end);
}

/// Top-level body literals of a rule, or nothing when the body has conditional
/// literals (their extent is ambiguous at this level).
std::vector<Span> body_literals(const std::vector<Token>& toks) {
    std::size_t start = toks.size();
    int depth = 0;
    for (std::size_t i = 0; i < toks.size(); ++i) {
        if (is_open(toks[i])) {
            ++depth;
        } else if (is_close(toks[i])) {
            --depth;
        } else if (depth == 0 && (toks[i].is(":-") || toks[i].is(":~"))) {
            start = i + 1;
            break;
        }
    }
    std::vector<Span> lits;
    if (start >= toks.size()) {
        return lits;
    }
    depth = 0;
    std::size_t first = start;
    for (std::size_t i = start; i < toks.size(); ++i) {
        const auto& t = toks[i];
        if (is_open(t)) {
            ++depth;
            continue;
        }
        if (is_close(t)) {
            --depth;
            continue;
        }
        if (depth != 0) {
            continue;
        }
        if (t.is(":")) {
            return {};
        }
        if (t.is(",") || t.is(";") || t.is(".")) {
            if (i > first) {
                lits.push_back({toks[first].offset, toks[i - 1].offset + toks[i - 1].length, first, i - 1});
            }
            first = i + 1;
            if (t.is(".")) {
                break;
            }
        }
    }
    return lits;
}

bool has_comparison(const std::vector<Token>& toks, const Span& s) {
    int depth = 0;
    for (std::size_t i = s.first_token; i <= s.last_token; ++i) {
        if (is_open(toks[i])) {
            ++depth;
        } else if (is_close(toks[i])) {
            --depth;
        } else if (depth == 0 && toks[i].kind == Tok::punct && detail::is_comparison(toks[i].text)) {
            return true;
        }
    }
    return false;
}

bool is_number(const Token& t) {
    return t.kind == Tok::number && std::all_of(t.text.begin(), t.text.end(), [](char c) { return c >= '0' && c <= '9'; });
}

void rule_edits(const RuleText& rule, std::size_t index, std::vector<Edit>& out) {
    if (rule.kind == RuleKind::directive || rule.kind == RuleKind::comment) {
        return;
    }
    const auto& text = rule.text;
    out.push_back({MutationKind::delete_rule, index, "", "delete " + text});

    const auto toks = detail::tokenize(text);
    const auto lits = body_literals(toks);
    if (lits.size() > 1) {
        for (std::size_t k = 0; k < lits.size(); ++k) {
            const auto begin = k == 0 ? lits[k].begin : lits[k - 1].end;
            const auto end = k == 0 ? lits[k + 1].begin : lits[k].end;
            out.push_back({MutationKind::delete_body_literal, index, splice(text, begin, end, ""),
                           "delete literal " + text.substr(lits[k].begin, lits[k].end - lits[k].begin)});
        }
    }
    for (const auto& lit : lits) {
        const auto& head = toks[lit.first_token];
        if (has_comparison(toks, lit)) {
            continue;
        }
        const auto lit_text = text.substr(lit.begin, lit.end - lit.begin);
        if (head.kind == Tok::identifier && head.text == "not" && lit.last_token > lit.first_token) {
            const auto& next = toks[lit.first_token + 1];
            out.push_back({MutationKind::toggle_negation, index, splice(text, lit.begin, next.offset, ""),
                           "drop negation of " + lit_text});
        } else if (head.kind == Tok::identifier || head.kind == Tok::hash || head.is("-")) {
            out.push_back({MutationKind::toggle_negation, index, splice(text, lit.begin, lit.begin, "not "),
                           "negate " + lit_text});
        }
    }

    static const std::vector<std::string_view> comparisons{"=", "!=", "<", "<=", ">", ">="};
    for (const auto& t : toks) {
        if (t.kind != Tok::punct || !detail::is_comparison(t.text)) {
            continue;
        }
        for (auto alt : comparisons) {
            if (alt == t.text || (alt == "=" && t.text == "==") || (alt == "!=" && t.text == "<>")) {
                continue;
            }
            out.push_back({MutationKind::swap_comparison, index, splice(text, t.offset, t.offset + t.length, alt),
                           std::string(t.text) + " -> " + std::string(alt)});
        }
    }

    for (std::size_t i = 0; i < toks.size(); ++i) {
        const auto& t = toks[i];
        if (!is_number(t)) {
            continue;
        }
        const long long v = std::stoll(std::string(t.text));
        const bool bound = (i + 1 < toks.size() && toks[i + 1].is("{")) || (i > 0 && toks[i - 1].is("}")) ||
                           (i > 1 && toks[i - 2].is("}") && toks[i - 1].kind == Tok::punct &&
                            detail::is_comparison(toks[i - 1].text)) ||
                           (i + 1 < toks.size() && toks[i + 1].is("..")) || (i > 0 && toks[i - 1].is(".."));
        const auto kind = bound ? MutationKind::shift_bound : MutationKind::perturb_constant;
        for (long long d : {1LL, -1LL}) {
            if (v + d < 0) {
                continue;
            }
            out.push_back({kind, index, splice(text, t.offset, t.offset + t.length, std::to_string(v + d)),
                           std::string(t.text) + " -> " + std::to_string(v + d)});
        }
    }

    for (std::size_t open = 1; open < toks.size(); ++open) {
        if (!toks[open].is("(") || toks[open - 1].kind != Tok::identifier) {
            continue;
        }
        std::vector<std::size_t> args;
        int depth = 0;
        std::size_t close = open;
        for (std::size_t i = open; i < toks.size(); ++i) {
            if (is_open(toks[i])) {
                ++depth;
            } else if (is_close(toks[i]) && --depth == 0) {
                close = i;
                break;
            } else if (depth == 1 && toks[i].kind == Tok::variable && toks[i].text.front() != '_') {
                args.push_back(i);
            }
        }
        const std::string atom = text.substr(toks[open - 1].offset,
                                             toks[close].offset + toks[close].length - toks[open - 1].offset);
        for (std::size_t a = 0; a < args.size(); ++a) {
            for (std::size_t b = a + 1; b < args.size(); ++b) {
                const auto& x = toks[args[a]];
                const auto& y = toks[args[b]];
                if (x.text == y.text) {
                    continue;
                }
                std::string mutated = text.substr(0, x.offset) + std::string(y.text) +
                                      text.substr(x.offset + x.length, y.offset - x.offset - x.length) +
                                      std::string(x.text) + text.substr(y.offset + y.length);
                out.push_back({MutationKind::swap_variables, index, mutated,
                               "swap " + std::string(x.text) + " and " + std::string(y.text) + " in " + atom});
            }
        }
    }
}

} // namespace

std::string_view to_string(MutationKind kind) noexcept {
    switch (kind) {
        case MutationKind::delete_rule: return "delete_rule";
        case MutationKind::delete_body_literal: return "delete_body_literal";
        case MutationKind::toggle_negation: return "toggle_negation";
        case MutationKind::swap_comparison: return "swap_comparison";
        case MutationKind::perturb_constant: return "perturb_constant";
        case MutationKind::swap_variables: return "swap_variables";
        case MutationKind::shift_bound: return "shift_bound";
    }
    return "";
}

std::vector<Mutant> enumerate_mutations(const Program& gold) {
    std::vector<Edit> edits;
    for (std::size_t i = 0; i < gold.rules().size(); ++i) {
        rule_edits(gold.rules()[i], i, edits);
    }
    std::vector<Mutant> out;
    std::set<std::string> seen{gold.source_hash()};
    for (auto& e : edits) {
        std::vector<std::string> texts;
        for (std::size_t i = 0; i < gold.rules().size(); ++i) {
            if (i != e.rule) {
                texts.push_back(gold.rules()[i].text);
            } else if (!e.text.empty()) {
                texts.push_back(e.text);
            }
        }
        Program p;
        try {
            p = Program::from_rules(texts);
        } catch (const LexError&) {
            continue;
        }
        if (!seen.insert(p.source_hash()).second) {
            continue;
        }
        Mutant m;
        m.id = static_cast<int>(out.size()) + 1;
        m.program = std::move(p);
        m.lineage = {e.kind, e.rule, std::move(e.detail)};
        out.push_back(std::move(m));
    }
    return out;
}

std::vector<Mutant> generate_mutants(const Solver& solver, const Program& gold, std::size_t count, std::uint64_t seed,
                                     double timeout) {
    auto pool = enumerate_mutations(gold);
    std::mt19937_64 rng(seed);
    for (std::size_t i = pool.size(); i > 1; --i) {
        std::swap(pool[i - 1], pool[rng() % i]);
    }
    std::vector<Mutant> chosen;
    std::size_t valid = 0;
    for (auto& m : pool) {
        if (!solver.check_syntax(m.program, timeout).ok) {
            continue;
        }
        ++valid;
        if (chosen.size() < count) {
            m.id = static_cast<int>(chosen.size()) + 1;
            chosen.push_back(std::move(m));
        } else {
            break;
        }
    }
    if (chosen.size() < count) {
        throw ExhaustedMutationSpace(count, valid);
    }
    return chosen;
}

std::string ValidationReport::to_json() const {
    nlohmann::ordered_json j;
    j["problem"] = problem;
    j["gold_accuracy"] = gold_accuracy;
    j["survivors"] = survivors;
    j["passed"] = passed();
    auto& arr = j["mutants"] = nlohmann::ordered_json::array();
    for (const auto& m : mutants) {
        nlohmann::ordered_json e;
        e["id"] = m.id;
        e["operator"] = std::string(to_string(m.lineage.kind));
        e["rule"] = m.lineage.rule;
        e["detail"] = m.lineage.detail;
        e["source_hash"] = m.source_hash;
        e["suite_accuracy"] = m.accuracy;
        e["f1"] = m.f1 ? nlohmann::ordered_json(*m.f1) : nlohmann::ordered_json();
        e["survivor"] = m.survivor;
        e["adjudicated_equivalent"] = m.adjudicated;
        e["killed_by"] = m.failing_cases;
        if (m.survivor) {
            e["program"] = m.program;
        }
        arr.push_back(std::move(e));
    }
    return j.dump(2) + "\n";
}

ValidationReport validate_suite(const Solver& solver, const Program& gold, const TestSuite& suite,
                                const SuiteContext& ctx, const std::vector<Mutant>& mutants,
                                const ValidationOptions& options) {
    ValidationReport rep;
    rep.problem = suite.problem;
    auto gold_run = run_suite(solver, gold, suite, ctx);
    rep.gold_accuracy = gold_run.accuracy;
    if (gold_run.accuracy < 1.0) {
        std::string failing;
        for (const auto& c : gold_run.cases) {
            if (c.verdict != Verdict::passed) {
                failing += " " + c.name;
            }
        }
        throw GoldFailsSuite("gold program fails its own suite:" + failing);
    }
    std::vector<GoldEnumeration> golds;
    for (const auto& inst : options.instances) {
        golds.push_back(enumerate_gold(solver, gold, inst, options.outputs, options.timeout));
    }
    ModelEvalOptions meo;
    meo.timeout = options.timeout;
    for (const auto& m : mutants) {
        MutantScore s;
        s.id = m.id;
        s.lineage = m.lineage;
        s.source_hash = m.program.source_hash();
        s.program = m.program.str();
        auto r = run_suite(solver, m.program, suite, ctx);
        s.accuracy = r.accuracy;
        for (const auto& c : r.cases) {
            if (c.verdict != Verdict::passed) {
                s.failing_cases.push_back(c.name);
            }
        }
        if (!options.instances.empty()) {
            s.f1 = evaluate_model_based(solver, m.program, golds, options.instances, options.outputs,
                                        options.weak_mode, meo)
                       .scores.f1;
        }
        if (s.accuracy >= 1.0) {
            s.adjudicated = options.adjudicated.count(s.source_hash) != 0;
            s.survivor = true;
            if (!s.adjudicated) {
                ++rep.survivors;
            }
        }
        rep.mutants.push_back(std::move(s));
    }
    return rep;
}

} // namespace aspbench
