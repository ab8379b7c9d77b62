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

#include <aspbench/process.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <numeric>

using namespace aspbench;
using aspbench::testing::solver;

namespace {

const char* triangle_gold = "1 { chosenColor(N,C) : color(C) } 1 :- node(N).\n"
                            ":- edge(N,M), chosenColor(N,C), chosenColor(M,C).\n";
const char* triangle = "node(1..3). edge(1,2). edge(2,3). edge(1,3). color(red). color(green). color(black).";

} // namespace

TEST_CASE("triangle colorings enumerate to six models", "[solver]") {
    auto res = solver().solve_all({Program::parse(triangle_gold), Program::parse(triangle)}, 60,
                                  SignatureSet{{"chosenColor", 2}});
    REQUIRE(res.status == SolveStatus::sat);
    CHECK(res.models.size() == 6);
    for (const auto& m : res.models) {
        CHECK(m.atoms.size() == 3);
    }
    CHECK(std::is_sorted(res.models.begin(), res.models.end(),
                         [](const AnswerSet& a, const AnswerSet& b) { return a.atoms < b.atoms; }));
}

TEST_CASE("contradiction is unsat", "[solver]") {
    auto res = solver().solve_all({Program::parse("a. :- a.")}, 60);
    CHECK(res.status == SolveStatus::unsat);
    CHECK(res.models.empty());
    auto once = solver().solve_once({Program::parse("a. :- a.")}, 60);
    CHECK(once.status == SolveStatus::unsat);
}

TEST_CASE("syntax checking", "[solver]") {
    CHECK(solver().check_syntax(std::string("1 { colored(X,C) : col(C) } 1 :- node(X).\n"
                                            ":- edge(X,Y), colored(X,C), colored(Y,C).\n"
                                            "col(red). col(green). col(black). node(1..4)."),
                                60)
              .ok);
    auto a = solver().check_syntax(std::string("node(1"), 60);
    CHECK_FALSE(a.ok);
    CHECK(a.status == SolveStatus::syntax_error);
    auto b = solver().check_syntax(std::string("foo :- bar(X."), 60);
    CHECK_FALSE(b.ok);
    CHECK(b.status == SolveStatus::syntax_error);
    CHECK_FALSE(b.detail.empty());
    auto unsafe = solver().check_syntax(std::string("p(X) :- q."), 60);
    CHECK(unsafe.status == SolveStatus::syntax_error);
}

TEST_CASE("solve_once returns one model from the full set", "[solver]") {
    std::vector<Program> parts{Program::parse(triangle_gold), Program::parse(triangle)};
    SignatureSet out{{"chosenColor", 2}};
    auto once = solver().solve_once(parts, 60, out);
    REQUIRE(once.status == SolveStatus::sat);
    REQUIRE(once.models.size() == 1);
    auto all = solver().solve_all(parts, 60, out);
    CHECK(std::find_if(all.models.begin(), all.models.end(),
                       [&](const AnswerSet& m) { return m.atoms == once.models[0].atoms; }) != all.models.end());
}

TEST_CASE("projection yields distinct projected models", "[solver]") {
    auto res = solver().solve_all({Program::parse("{a; b}. c :- a. c :- b.")}, 60, SignatureSet{{"c", 0}});
    REQUIRE(res.status == SolveStatus::sat);
    CHECK(res.models.size() == 2); // {} and {c}
    SolveRequest req{{Program::parse("{a; b}.")}, SolveMode::all_models, 60, std::nullopt};
    CHECK(solver().solve(req).models.size() == 4);
}

TEST_CASE("optimal enumeration matches brute-force tours", "[solver]") {
    // 4 nodes, asymmetric costs; brute force over permutations fixing node 1 first.
    const int n = 4;
    const long long cost[5][5] = {{0, 0, 0, 0, 0}, {0, 0, 3, 5, 2}, {0, 3, 0, 4, 6}, {0, 5, 4, 0, 3}, {0, 2, 6, 3, 0}};
    std::string facts = "node(1..4).\n";
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
            if (i != j) {
                facts += "cost(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(cost[i][j]) +
                         ").\n";
            }
        }
    }
    std::vector<int> perm{2, 3, 4};
    long long best = -1;
    std::set<std::set<std::string>> best_tours;
    do {
        std::vector<int> tour{1};
        tour.insert(tour.end(), perm.begin(), perm.end());
        long long c = 0;
        std::set<std::string> edges;
        for (int k = 0; k < n; ++k) {
            int a = tour[k], b = tour[(k + 1) % n];
            c += cost[a][b];
            edges.insert("cycle(" + std::to_string(a) + "," + std::to_string(b) + ")");
        }
        if (best < 0 || c < best) {
            best = c;
            best_tours.clear();
        }
        if (c == best) {
            best_tours.insert(edges);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    const char* tsp = "{ cycle(X,Y) : cost(X,Y,_) } = 1 :- node(X).\n"
                      "{ cycle(X,Y) : cost(X,Y,_) } = 1 :- node(Y).\n"
                      "reached(Y) :- cycle(1,Y).\n"
                      "reached(Y) :- cycle(X,Y), reached(X).\n"
                      ":- node(Y), not reached(Y).\n"
                      ":~ cycle(X,Y), cost(X,Y,C). [C@1,X,Y]\n";
    auto res = solver().solve_all({Program::parse(tsp), Program::parse(facts)}, 60, SignatureSet{{"cycle", 2}});
    REQUIRE(res.status == SolveStatus::sat);
    CHECK(res.optimum_proven);
    REQUIRE(res.costs.has_value());
    CHECK(res.costs->front() == best);
    std::set<std::set<std::string>> got;
    for (const auto& m : res.models) {
        std::set<std::string> edges;
        for (const auto& a : m.atoms) {
            edges.insert(a.text());
        }
        got.insert(edges);
    }
    CHECK(got == best_tours);
    for (const auto& c : res.model_costs) {
        CHECK(c == std::vector<long long>{best});
    }

    auto once = solver().solve_once({Program::parse(tsp), Program::parse(facts)}, 60, SignatureSet{{"cycle", 2}});
    REQUIRE(once.models.size() == 1);
    CHECK(once.optimum_proven);
    CHECK(once.model_costs.front() == std::vector<long long>{best});

    SolveRequest ignore{{Program::parse(tsp), Program::parse(facts)}, SolveMode::all_models, 60, SignatureSet{{"cycle", 2}}};
    CHECK(solver().solve(ignore).models.size() == 6); // (4-1)! directed tours
}

TEST_CASE("timeouts are reported", "[solver]") {
    // pigeonhole 11 into 10 keeps the solver busy well past one second
    auto hard = Program::parse("p(1..11). h(1..10). 1 { in(P,H) : h(H) } 1 :- p(P). :- in(P,H), in(Q,H), P < Q.");
    auto res = solver().solve_all({hard}, 1);
    CHECK(res.status == SolveStatus::timeout);
    CHECK(res.models.empty());
}

TEST_CASE("parse of solver json is deterministic", "[solver]") {
    const std::string out = R"({"Solver":"clingo","Call":[{"Witnesses":[{"Value":["b","a"]},{"Value":["a"]}]}],
        "Result":"SATISFIABLE","Models":{"Number":2,"More":"no"}})";
    auto r1 = parse_solver_output(out, "", SolveMode::all_models, std::nullopt);
    auto r2 = parse_solver_output(out, "", SolveMode::all_models, std::nullopt);
    REQUIRE(r1.models.size() == 2);
    CHECK(r1.models[0].str() == r2.models[0].str());
    CHECK(r1.models[0].str() == "{a}");
    CHECK(r1.models[1].str() == "{a b}");
    auto err = parse_solver_output("", "-:1:4-6: error: syntax error\n", SolveMode::all_models, std::nullopt);
    CHECK(err.status == SolveStatus::syntax_error);
}

TEST_CASE("process runner", "[solver]") {
    auto r = run_process({"cat"}, "hello", std::chrono::seconds(5));
    CHECK(r.exit_code == 0);
    CHECK(r.out == "hello");
    auto t = run_process({"sleep", "5"}, "", std::chrono::milliseconds(200));
    CHECK(t.timed_out);
    CHECK(t.seconds < 2.0);
    auto missing = run_process({"/nonexistent/binary"}, "", std::chrono::seconds(5));
    CHECK(missing.spawn_failed);
}
