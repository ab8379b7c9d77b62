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

#include "support.hpp"

#include <aspbench/error.hpp>
#include <aspbench/suite.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace aspbench;
using aspbench::testing::solver;

namespace {

const char* gold_src = "1 { chosenColor(N,C) : color(C) } 1 :- node(N).\n"
                       ":- edge(N,M), chosenColor(N,C), chosenColor(M,C).\n";
const char* no_adjacency = "1 { chosenColor(N,C) : color(C) } 1 :- node(N).\n";

const char* suite_src = R"(% colorability checks
%@test(name=k4_three_colors)
node(1..4). edge(1,2). edge(1,3). edge(1,4). edge(2,3). edge(2,4). edge(3,4).
color(red). color(green). color(black).
%@noAnswerSet

%@test(name=triangle)
node(1..3). edge(1,2). edge(2,3). edge(1,3).
color(red). color(green). color(black).
%@answerSetCount(6)
%@constraintForAll(constraint=":- edge(X,Y), chosenColor(X,C), chosenColor(Y,C).")
%@constraintForAll(constraint=":- node(U), not chosenColor(U,_).")

%@test(name=forced)
node(1). color(red).
%@hasAnswerSet
%@trueInAll(chosenColor(1,red))
%@trueInAtLeastOne(chosenColor(1, red))
)";

SuiteContext ctx() { return {{{"chosenColor", 2}}, {{"node", 1}, {"edge", 2}, {"color", 1}}, 60}; }

} // namespace

TEST_CASE("suite parsing", "[suite]") {
    auto s = parse_suite(suite_src);
    REQUIRE(s.cases.size() == 3);
    CHECK(s.cases[0].name == "k4_three_colors");
    REQUIRE(s.cases[0].assertions.size() == 1);
    CHECK(s.cases[0].assertions[0].kind == AssertionKind::no_answer_set);
    CHECK(s.cases[0].facts.count(RuleKind::fact) == 10);
    const auto& cfa = s.cases[1].assertions[2];
    CHECK(cfa.kind == AssertionKind::constraint_for_all);
    CHECK(cfa.constraint == ":- node(U), not chosenColor(U,_).");
    CHECK(s.cases[1].assertions[0].count == 6);
    CHECK(s.cases[2].assertions[2].atom.text() == "chosenColor(1,red)");

    auto again = parse_suite(s.str());
    CHECK(again.str() == s.str());
}

TEST_CASE("suite syntax errors", "[suite]") {
    CHECK_THROWS_AS(parse_suite(""), SuiteSyntaxError);
    CHECK_THROWS_AS(parse_suite("% only a comment\n"), SuiteSyntaxError);
    CHECK_THROWS_AS(parse_suite("%@test(name=a)\nnode(1).\n%@frobnicate\n"), UnknownAssertionKind);
    CHECK_THROWS_AS(parse_suite("%@test(name=a)\nnode(1).\n"), SuiteSyntaxError);
    CHECK_THROWS_AS(parse_suite("%@test(name=a)\n%@hasAnswerSet\n%@test(name=a)\n%@hasAnswerSet\n"),
                    SuiteSyntaxError);
    CHECK_THROWS_AS(parse_suite("node(1).\n%@test(name=a)\n%@hasAnswerSet\n"), SuiteSyntaxError);
    CHECK_THROWS_AS(parse_suite("%@test(name=a)\n%@answerSetCount(-1)\n"), SuiteSyntaxError);
    CHECK_THROWS_AS(parse_suite("%@test(name=a)\n%@constraintForAll(constraint=\"a :- b.\")\n"), SuiteSyntaxError);
    CHECK_THROWS_AS(parse_suite("%@test(name=a)\np(X) :- q(X).\n%@hasAnswerSet\n"), SuiteSyntaxError);
    try {
        (void)parse_suite("%@test(name=a)\nnode(1).\nedge(1,2.\n%@hasAnswerSet\n");
        FAIL("expected an error");
    } catch (const SuiteSyntaxError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("gold passes its suite", "[suite]") {
    auto s = parse_suite(suite_src);
    auto r = run_suite(solver(), Program::parse(gold_src), s, ctx());
    for (const auto& c : r.cases) {
        INFO(c.name);
        for (const auto& why : c.reasons) {
            INFO(why);
        }
        CHECK(c.verdict == Verdict::passed);
    }
    CHECK(r.accuracy == 1.0);
}

TEST_CASE("missing adjacency constraint fails with a witness", "[suite]") {
    auto s = parse_suite(suite_src);
    auto r = run_case(solver(), Program::parse(no_adjacency), s.cases[1], ctx());
    CHECK(r.verdict == Verdict::failed);
    REQUIRE(r.witness.has_value());
    CHECK(r.reasons.size() == 2); // count and the adjacency constraint
    auto full = run_suite(solver(), Program::parse(no_adjacency), s, ctx());
    CHECK(full.accuracy < 1.0);
    CHECK(full.passed == 1);
}

TEST_CASE("empty grounding has the empty model", "[suite]") {
    auto s = parse_suite("%@test(name=empty)\n%@hasAnswerSet\n%@answerSetCount(1)\n");
    auto r = run_suite(solver(), Program::parse("p(X) :- q(X)."), s, ctx());
    CHECK(r.accuracy == 1.0);
}

TEST_CASE("invalid candidate errors every case", "[suite]") {
    auto s = parse_suite(suite_src);
    auto r = run_suite(solver(), Program::parse("p(X) :- q."), s, ctx());
    CHECK(r.accuracy == 0.0);
    CHECK(r.errored == 3);
}

TEST_CASE("constraint for all agrees with model counting", "[suite]") {
    auto s = parse_suite(suite_src);
    const auto& tri = s.cases[1];
    const std::string constraint = ":- edge(X,Y), chosenColor(X,C), chosenColor(Y,C).";
    for (const char* cand : {gold_src, no_adjacency}) {
        TestCase only{tri.name, tri.facts, {tri.assertions[1]}, 0};
        auto verdict = run_case(solver(), Program::parse(cand), only, ctx()).verdict;
        auto base = solver().solve_all({Program::parse(cand), tri.facts}, 60);
        auto with = solver().solve_all({Program::parse(cand), tri.facts, Program::parse(constraint)}, 60);
        CHECK((verdict == Verdict::passed) == (base.models.size() == with.models.size()));
    }
}
