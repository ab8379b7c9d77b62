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

#include <aspbench/suite.hpp>

#include <aspbench/error.hpp>

#include <algorithm>
#include <charconv>
#include <set>

namespace aspbench {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

bool is_case_name(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
    });
}

std::string unquote(std::string_view s, std::size_t line) {
    if (s.size() < 2 || s.front() != '"' || s.back() != '"') {
        throw SuiteSyntaxError(line, "expected a double-quoted string");
    }
    std::string out;
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        if (s[i] == '\\' && i + 2 < s.size()) {
            out += s[++i];
        } else if (s[i] == '"') {
            throw SuiteSyntaxError(line, "unescaped quote inside string");
        } else {
            out += s[i];
        }
    }
    return out;
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    return out + "\"";
}

/// Strips an optional `key=` prefix from an annotation argument.
std::string_view keyed(std::string_view args, std::string_view key) {
    args = trim(args);
    if (args.substr(0, key.size()) == key) {
        auto rest = trim(args.substr(key.size()));
        if (!rest.empty() && rest.front() == '=') {
            return trim(rest.substr(1));
        }
    }
    return args;
}

Assertion parse_assertion(std::string_view name, std::optional<std::string_view> args, std::size_t line) {
    Assertion a;
    a.line = line;
    auto no_args = [&] {
        if (args && !trim(*args).empty()) {
            throw SuiteSyntaxError(line, std::string(name) + " takes no arguments");
        }
    };
    auto need_args = [&]() -> std::string_view {
        if (!args || trim(*args).empty()) {
            throw SuiteSyntaxError(line, std::string(name) + " needs an argument");
        }
        return trim(*args);
    };
    if (name == "noAnswerSet") {
        no_args();
        a.kind = AssertionKind::no_answer_set;
    } else if (name == "hasAnswerSet") {
        no_args();
        a.kind = AssertionKind::has_answer_set;
    } else if (name == "answerSetCount") {
        auto v = keyed(need_args(), "count");
        std::size_t n = 0;
        auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
        if (ec != std::errc() || ptr != v.data() + v.size()) {
            throw SuiteSyntaxError(line, "answerSetCount expects a non-negative integer");
        }
        a.kind = AssertionKind::answer_set_count;
        a.count = n;
    } else if (name == "constraintForAll") {
        a.kind = AssertionKind::constraint_for_all;
        a.constraint = unquote(keyed(need_args(), "constraint"), line);
        Program p;
        try {
            p = Program::parse(a.constraint);
        } catch (const LexError& e) {
            throw SuiteSyntaxError(line, std::string("constraint: ") + e.what());
        }
        if (p.rules().size() != 1 || p.rules().front().kind != RuleKind::strong_constraint) {
            throw SuiteSyntaxError(line, "constraintForAll expects a single constraint");
        }
    } else if (name == "trueInAll" || name == "trueInAtLeastOne") {
        a.kind = name == "trueInAll" ? AssertionKind::true_in_all : AssertionKind::true_in_at_least_one;
        try {
            a.atom = GroundAtom::parse(keyed(need_args(), "atom"));
        } catch (const std::exception& e) {
            throw SuiteSyntaxError(line, std::string("invalid atom: ") + e.what());
        }
    } else {
        throw UnknownAssertionKind(line, std::string(name));
    }
    return a;
}

std::set<PredicateSignature> signatures_of(const TestCase& test, const SuiteContext& ctx) {
    SignatureSet sigs = ctx.outputs;
    sigs.insert(ctx.inputs.begin(), ctx.inputs.end());
    for (const auto& s : test.facts.signatures()) {
        sigs.insert(s);
    }
    for (const auto& a : test.assertions) {
        if (a.kind == AssertionKind::constraint_for_all) {
            for (const auto& s : Program::parse(a.constraint).signatures()) {
                sigs.insert(s);
            }
        } else if (a.kind == AssertionKind::true_in_all || a.kind == AssertionKind::true_in_at_least_one) {
            sigs.insert(a.atom.signature());
        }
    }
    return sigs;
}

} // namespace

std::string_view to_string(AssertionKind kind) noexcept {
    switch (kind) {
        case AssertionKind::no_answer_set: return "noAnswerSet";
        case AssertionKind::has_answer_set: return "hasAnswerSet";
        case AssertionKind::answer_set_count: return "answerSetCount";
        case AssertionKind::constraint_for_all: return "constraintForAll";
        case AssertionKind::true_in_all: return "trueInAll";
        case AssertionKind::true_in_at_least_one: return "trueInAtLeastOne";
    }
    return "";
}

std::string_view to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::passed: return "passed";
        case Verdict::failed: return "failed";
        case Verdict::errored: return "errored";
    }
    return "";
}

std::string Assertion::str() const {
    std::string name(to_string(kind));
    switch (kind) {
        case AssertionKind::no_answer_set:
        case AssertionKind::has_answer_set: return name;
        case AssertionKind::answer_set_count: return name + "(" + std::to_string(count) + ")";
        case AssertionKind::constraint_for_all: return name + "(constraint=" + quote(constraint) + ")";
        case AssertionKind::true_in_all:
        case AssertionKind::true_in_at_least_one: return name + "(" + atom.text() + ")";
    }
    return name;
}

std::string TestSuite::str() const {
    std::string out;
    for (const auto& c : cases) {
        out += "%@test(name=" + c.name + ")\n";
        out += c.facts.str();
        if (!c.facts.empty()) {
            out += '\n';
        }
        for (const auto& a : c.assertions) {
            out += "%@" + a.str() + "\n";
        }
        out += '\n';
    }
    return out;
}

TestSuite parse_suite(std::string_view source) {
    struct Pending {
        TestCase test;
        std::string text;
        std::size_t first_fact_line = 0;
    };
    std::vector<Pending> pending;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= source.size()) {
        auto nl = source.find('\n', pos);
        auto raw = source.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? source.size() + 1 : nl + 1;
        ++line_no;
        auto line = trim(raw);
        if (line.substr(0, 2) == "%@") {
            auto body = trim(line.substr(2));
            std::size_t i = 0;
            while (i < body.size() && ((body[i] >= 'a' && body[i] <= 'z') || (body[i] >= 'A' && body[i] <= 'Z'))) {
                ++i;
            }
            auto name = body.substr(0, i);
            auto rest = trim(body.substr(i));
            std::optional<std::string_view> args;
            if (!rest.empty()) {
                if (rest.front() != '(' || rest.back() != ')') {
                    throw SuiteSyntaxError(line_no, "malformed annotation '" + std::string(line) + "'");
                }
                args = rest.substr(1, rest.size() - 2);
            }
            if (name.empty()) {
                throw SuiteSyntaxError(line_no, "missing annotation name");
            }
            if (name == "test") {
                auto n = args ? keyed(*args, "name") : std::string_view();
                if (!is_case_name(n)) {
                    throw SuiteSyntaxError(line_no, "test needs name=<identifier>");
                }
                Pending p;
                p.test.name = std::string(n);
                p.test.line = line_no;
                pending.push_back(std::move(p));
                continue;
            }
            if (pending.empty()) {
                auto a = parse_assertion(name, args, line_no); // unknown kinds reported first
                (void)a;
                throw SuiteSyntaxError(line_no, "assertion outside of a test case");
            }
            pending.back().test.assertions.push_back(parse_assertion(name, args, line_no));
            continue;
        }
        if (pending.empty()) {
            if (!line.empty() && line.front() != '%') {
                throw SuiteSyntaxError(line_no, "statement before the first test case");
            }
            continue;
        }
        auto& p = pending.back();
        if (p.text.empty()) {
            p.first_fact_line = line_no;
        }
        if (!p.text.empty() || !line.empty()) {
            p.text += std::string(raw);
            p.text += '\n';
        }
    }
    if (pending.empty()) {
        throw SuiteSyntaxError(line_no, "suite contains no test case");
    }
    TestSuite suite;
    std::set<std::string> names;
    for (auto& p : pending) {
        if (!names.insert(p.test.name).second) {
            throw SuiteSyntaxError(p.test.line, "duplicate test name '" + p.test.name + "'");
        }
        if (p.test.assertions.empty()) {
            throw SuiteSyntaxError(p.test.line, "test '" + p.test.name + "' has no assertion");
        }
        try {
            p.test.facts = Program::parse(p.text);
        } catch (const LexError& e) {
            throw SuiteSyntaxError(p.first_fact_line + e.line() - 1, e.what());
        }
        for (const auto& r : p.test.facts.rules()) {
            if (r.kind != RuleKind::fact && r.kind != RuleKind::comment) {
                throw SuiteSyntaxError(p.test.line, "test '" + p.test.name + "' contains a non-fact statement: " + r.text);
            }
        }
        suite.cases.push_back(std::move(p.test));
    }
    return suite;
}

CaseResult run_case(const Solver& solver, const Program& candidate, const TestCase& test, const SuiteContext& ctx) {
    CaseResult res;
    res.name = test.name;
    const bool only_sat = std::all_of(test.assertions.begin(), test.assertions.end(), [](const Assertion& a) {
        return a.kind == AssertionKind::no_answer_set || a.kind == AssertionKind::has_answer_set;
    });
    std::optional<SignatureSet> projection;
    if (!ctx.outputs.empty()) {
        projection = signatures_of(test, ctx);
    }
    const std::vector<Program> parts{candidate, test.facts};
    auto solved = only_sat ? solver.solve_once(parts, ctx.timeout, projection)
                           : solver.solve_all(parts, ctx.timeout, projection);
    res.seconds = solved.seconds;
    auto errored = [&](const std::string& why) {
        res.verdict = Verdict::errored;
        res.reasons.push_back(why);
        return res;
    };
    if (!solved.ok()) {
        return errored(std::string(to_string(solved.status)) + ": " + solved.stderr_excerpt);
    }
    res.models = solved.models.size();
    std::set<std::vector<GroundAtom>> distinct;
    for (const auto& m : solved.models) {
        distinct.insert(ctx.outputs.empty() ? m.atoms : project_atoms(m.atoms, ctx.outputs));
    }

    bool ok = true;
    auto fail = [&](const Assertion& a, std::string why, const AnswerSet* witness) {
        ok = false;
        res.reasons.push_back(a.str() + ": " + why);
        if (witness != nullptr && !res.witness) {
            res.witness = *witness;
        }
    };
    for (const auto& a : test.assertions) {
        switch (a.kind) {
            case AssertionKind::no_answer_set:
                if (!solved.models.empty()) {
                    fail(a, "an answer set exists", &solved.models.front());
                }
                break;
            case AssertionKind::has_answer_set:
                if (solved.models.empty()) {
                    fail(a, "no answer set", nullptr);
                }
                break;
            case AssertionKind::answer_set_count:
                if (distinct.size() != a.count) {
                    fail(a, "found " + std::to_string(distinct.size()) + " answer sets", nullptr);
                }
                break;
            case AssertionKind::constraint_for_all: {
                const auto constraint = Program::parse(a.constraint);
                for (const auto& m : solved.models) {
                    auto check = solver.solve_once({Program::parse(m.as_facts()), constraint}, ctx.timeout);
                    res.seconds += check.seconds;
                    if (!check.ok()) {
                        return errored(std::string(to_string(check.status)) + ": " + check.stderr_excerpt);
                    }
                    if (check.status == SolveStatus::unsat) {
                        fail(a, "violated by an answer set", &m);
                        break;
                    }
                }
                break;
            }
            case AssertionKind::true_in_all:
                for (const auto& m : solved.models) {
                    if (!m.contains(a.atom)) {
                        fail(a, "false in an answer set", &m);
                        break;
                    }
                }
                break;
            case AssertionKind::true_in_at_least_one:
                if (std::none_of(solved.models.begin(), solved.models.end(),
                                 [&](const AnswerSet& m) { return m.contains(a.atom); })) {
                    fail(a, "false in every answer set", nullptr);
                }
                break;
        }
    }
    res.verdict = ok ? Verdict::passed : Verdict::failed;
    return res;
}

SuiteResult run_suite(const Solver& solver, const Program& candidate, const TestSuite& suite,
                      const SuiteContext& ctx) {
    SuiteResult res;
    for (const auto& c : suite.cases) {
        auto r = run_case(solver, candidate, c, ctx);
        switch (r.verdict) {
            case Verdict::passed: ++res.passed; break;
            case Verdict::failed: ++res.failed; break;
            case Verdict::errored: ++res.errored; break;
        }
        res.cases.push_back(std::move(r));
    }
    res.accuracy = suite.cases.empty() ? 0.0
                                       : static_cast<double>(res.passed) / static_cast<double>(suite.cases.size());
    return res;
}

} // namespace aspbench
