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

#include <aspbench/error.hpp>
#include <aspbench/syntax.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace aspbench;

namespace {

constexpr const char* four_node_coloring = R"(col(red). col(green). col(black). node(1..4).
edge(1,2). edge(4,2). edge(1,3).

1 { colored(X,C) : col(C) } 1 :- node(X).
:- edge(X,Y), colored(X,C), colored(Y,C).
)";

SignatureSet sigs(std::initializer_list<const char*> items) {
    SignatureSet out;
    for (auto* s : items) {
        out.insert(PredicateSignature::parse(s));
    }
    return out;
}

} // namespace

TEST_CASE("parse classifies facts and indexes predicates", "[syntax]") {
    auto p = parse_program("col(red). node(1..4).");
    REQUIRE(p.rules().size() == 2);
    CHECK(p.count(RuleKind::fact) == 2);
    CHECK(p.signatures() == sigs({"col/1", "node/1"}));
    CHECK(p.rules()[1].fact_signature == PredicateSignature{"node", 1});
}

TEST_CASE("empty source yields an empty program", "[syntax]") {
    auto p = parse_program("");
    CHECK(p.empty());
    CHECK(p.predicate_index().empty());
    CHECK(max_weak_level(p) == 0);
}

TEST_CASE("weak constraint level is read from the tail", "[syntax]") {
    auto p = parse_program(":~ colored(X,red). [1@1,X]");
    REQUIRE(p.rules().size() == 1);
    CHECK(p.rules()[0].kind == RuleKind::weak_constraint);
    CHECK(p.rules()[0].weak_level == 1);
    CHECK(p.signatures() == sigs({"colored/2"}));

    auto q = parse_program(":~ a(X). [X,X]\n:~ b. [1@-2]");
    CHECK(q.rules()[0].weak_level == 0);
    CHECK(q.rules()[1].weak_level == -2);
}

TEST_CASE("rule kinds of the colorability encoding", "[syntax]") {
    auto p = parse_program(four_node_coloring);
    std::vector<RuleKind> kinds;
    for (const auto& r : p.rules()) {
        kinds.push_back(r.kind);
    }
    using K = RuleKind;
    CHECK(kinds == std::vector<K>{K::fact, K::fact, K::fact, K::fact, K::fact, K::fact, K::fact, K::choice_rule,
                                  K::strong_constraint});
    CHECK(p.signatures() == sigs({"col/1", "node/1", "edge/2", "colored/2"}));
    // col(C) inside the choice condition is an occurrence, the constant red is not
    CHECK(p.predicate_index().at({"col", 1}).size() == 4);
    CHECK(!p.predicate_names().contains("red"));
}

TEST_CASE("literal positions inside aggregates, comparisons and directives", "[syntax]") {
    auto p = parse_program(R"(
        r(X) :- X = #count { Y : q(Y), not s(Y) }, t(X), X < k.
        #show r/1.
        #minimize { C@2,X,Y : cost(X,Y,C), go(X,Y) }.
        p(f(a,b), (1,2)) :- u.
        a ; b :- c.
        -d(1).
        h(X) :- g(X) : e(X); v(X).
    )");
    CHECK(p.signatures() == sigs({"r/1", "q/1", "s/1", "t/1", "cost/3", "go/2", "p/2", "u/0", "a/0", "b/0", "c/0",
                                  "d/1", "h/1", "g/1", "e/1", "v/1"}));
    CHECK(max_weak_level(p) == 2);
    CHECK(p.has_optimization());
    CHECK(p.rules()[5].kind == RuleKind::fact);
    CHECK(p.rules()[4].kind == RuleKind::normal_rule);
}

TEST_CASE("lexical errors carry positions", "[syntax]") {
    try {
        (void)parse_program("node(1");
        FAIL("expected LexError");
    } catch (const LexError& e) {
        CHECK(e.line() == 1);
        CHECK(e.column() == 5);
    }
    CHECK_THROWS_AS(parse_program("foo :- bar(X."), LexError);
    CHECK_THROWS_AS(parse_program("p(\"abc)."), LexError);
    CHECK_THROWS_AS(parse_program("p(1]."), LexError);
    CHECK_THROWS_AS(parse_program("%* open"), LexError);
}

TEST_CASE("comments and directives are preserved", "[syntax]") {
    auto p = parse_program("% header\np. %* block *% q.\n#const n = 3.\n#show p/0.");
    REQUIRE(p.rules().size() == 6);
    CHECK(p.rules()[0].kind == RuleKind::comment);
    CHECK(p.rules()[2].kind == RuleKind::comment);
    CHECK(p.rules()[4].kind == RuleKind::directive);
    auto no_show = drop_show_directives(p);
    CHECK(no_show.rules().size() == 5);
    CHECK(no_show.count(RuleKind::directive) == 1);
}

TEST_CASE("rename maps candidate names to gold names", "[syntax]") {
    auto cand = parse_program(R"(node(a). colour(1).
1 {assign(N, C) : colour(C)} 1 :- node(N).
:- edge(X, Y), assign(X, C), assign(Y, C).)");
    PredicateMapping m{{{"node", "node"}, {"edge", "edge"}, {"color", "colour"}, {"chosen", "assign"}}};
    auto renamed = rename_predicates(cand, m);
    CHECK(renamed.signatures() == sigs({"node/1", "color/1", "chosen/2", "edge/2"}));
    CHECK(renamed.rules()[2].text == "1 {chosen(N, C) : color(C)} 1 :- node(N).");
}

TEST_CASE("identity rename leaves the program text unchanged", "[syntax]") {
    auto p = parse_program(four_node_coloring);
    auto r = rename_predicates(p, PredicateMapping{{{"node", "node"}}});
    CHECK(r.str() == p.str());
    CHECK(r.source_hash() == p.source_hash());
}

TEST_CASE("rename rejects merging two candidate predicates", "[syntax]") {
    auto p = parse_program("a(1). b(2).");
    CHECK_THROWS_AS(rename_predicates(p, PredicateMapping{{{"x", "a"}, {"x", "b"}}}), MappingCollision);
    // renaming into a name the candidate already uses for something else
    CHECK_THROWS_AS(rename_predicates(p, PredicateMapping{{{"b", "a"}}}), MappingCollision);
    // ambiguous pairing of one candidate name
    CHECK_THROWS_AS(rename_predicates(p, PredicateMapping{{{"x", "a"}, {"y", "a"}}}), MappingCollision);
    // no collision when the second candidate name does not occur
    CHECK_NOTHROW(rename_predicates(p, PredicateMapping{{{"x", "a"}, {"x", "zzz"}}}));
    CHECK_THROWS_AS(rename_predicates(p, PredicateMapping{{{"X", "a"}}}), InvalidIdentifier);
}

TEST_CASE("strip_input_facts removes only ground input facts", "[syntax]") {
    auto cand = parse_program(R"(node(a). node(b). edge(a,b).
colour(1..3).
1 {assign(N,C) : colour(C)} 1 :- node(N).
:- edge(X,Y), assign(X,C), assign(Y,C).
edge(Y,X) :- edge(X,Y).)");
    auto stripped = strip_input_facts(cand, sigs({"node/1", "edge/2"}));
    REQUIRE(stripped.rules().size() == 4);
    CHECK(stripped.count(RuleKind::fact) == 1);
    CHECK(stripped.count(RuleKind::choice_rule) == 1);
    CHECK(stripped.rules()[3].text == "edge(Y,X) :- edge(X,Y).");

    auto no_inputs = parse_program("p(X) :- edge(X,_).");
    CHECK(strip_input_facts(no_inputs, sigs({"edge/2"})).str() == no_inputs.str());
}

TEST_CASE("max_weak_level takes the maximum priority", "[syntax]") {
    CHECK(max_weak_level(parse_program(":~ a(X). [1@2,X]\n:~ b(Y). [3@1,Y]")) == 2);
    CHECK(max_weak_level(parse_program("a. b :- a.")) == 0);
    CHECK(max_weak_level(parse_program(four_node_coloring + std::string(":~ colored(X,red). [1@1,X]"))) == 1);
}

TEST_CASE("ground atoms render canonically", "[syntax]") {
    auto a = GroundAtom::parse("chosenColor( 1 , red )");
    CHECK(a.text() == "chosenColor(1,red)");
    CHECK(a.signature() == PredicateSignature{"chosenColor", 2});
    CHECK(GroundAtom::parse("p(f(a, (1,2)), \"x y\", -3, 007)").text() == "p(f(a,(1,2)),\"x y\",-3,7)");
    CHECK(GroundAtom::parse("-q(1)").predicate() == "-q");
    CHECK(GroundAtom::parse("flag").signature() == PredicateSignature{"flag", 0});
    CHECK_THROWS_AS(GroundAtom::parse("Bad(1)"), LexError);
}

TEST_CASE("project_atoms keeps only the requested signatures", "[syntax]") {
    std::vector<GroundAtom> atoms{GroundAtom::parse("colored(1,red)"), GroundAtom::parse("reached(1)")};
    auto out = project_atoms(atoms, sigs({"colored/2"}));
    REQUIRE(out.size() == 1);
    CHECK(out[0].text() == "colored(1,red)");
    CHECK(project_atoms({}, sigs({"colored/2"})).empty());
}

// ---------------------------------------------------------------------------
// Properties over randomly assembled programs

namespace {

std::string random_program(std::mt19937_64& rng) {
    static const std::vector<std::string> fragments = {
        "node(1..3).",
        "edge(1,2). edge(2,3).",
        "p(X) :- node(X), not q(X).",
        "q(X) :- node(X), not p(X).",
        "{ sel(X) : node(X) } 2.",
        ":- sel(X), sel(Y), edge(X,Y).",
        ":~ sel(X). [1@1,X]",
        ":~ p(X), q(Y). [2@3,X,Y]",
        "% a comment",
        "r(X,Y) :- edge(X,Y), X < Y.",
        "cnt(N) :- N = #count { X : sel(X) }.",
        "#show sel/1.",
        "a ; b :- node(1).",
        "t(f(X)) :- p(X).",
    };
    std::string out;
    auto n = rng() % 8;
    for (std::size_t i = 0; i < n; ++i) {
        out += fragments[rng() % fragments.size()];
        out += (rng() % 2) ? "\n" : "  ";
    }
    return out;
}

} // namespace

TEST_CASE("parse/print reaches a fixed point", "[syntax][property]") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        auto src = random_program(rng);
        auto once = parse_program(src);
        auto twice = parse_program(once.str());
        REQUIRE(twice.str() == once.str());
        REQUIRE(twice.rules().size() == once.rules().size());
        for (std::size_t r = 0; r < once.rules().size(); ++r) {
            REQUIRE(twice.rules()[r].kind == once.rules()[r].kind);
        }
        // occurrence spans stay inside their rule
        for (const auto& [sig, occs] : once.predicate_index()) {
            for (const auto& o : occs) {
                const auto& text = once.rules().at(o.rule).text;
                REQUIRE(o.offset + o.length <= text.size());
                REQUIRE(text.substr(o.offset, o.length) == sig.name);
            }
        }
    }
}

TEST_CASE("rename followed by its inverse is the identity", "[syntax][property]") {
    std::mt19937_64 rng(11);
    PredicateMapping forward{{{"vertex", "node"}, {"arc", "edge"}, {"pick", "sel"}}};
    PredicateMapping inverse{{{"node", "vertex"}, {"edge", "arc"}, {"sel", "pick"}}};
    for (int i = 0; i < 200; ++i) {
        auto p = parse_program(random_program(rng));
        auto back = rename_predicates(rename_predicates(p, forward), inverse);
        REQUIRE(back.str() == p.str());
    }
}

TEST_CASE("strip_input_facts is idempotent and max level bounds every weak constraint", "[syntax][property]") {
    std::mt19937_64 rng(13);
    auto inputs = sigs({"node/1", "edge/2"});
    for (int i = 0; i < 200; ++i) {
        auto p = parse_program(random_program(rng));
        auto once = strip_input_facts(p, inputs);
        REQUIRE(strip_input_facts(once, inputs).str() == once.str());
        for (const auto& r : p.rules()) {
            if (r.weak_level) {
                REQUIRE(max_weak_level(p) >= *r.weak_level);
            }
        }
    }
}
