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

#include "oracle.hpp"
#include "support.hpp"

#include <aspbench/error.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <array>

using namespace aspbench;
using aspbench::testing::solver;

namespace {

const SignatureSet out{{"chosenColor", 2}};
const char* gold_src = "1 { chosenColor(N,C) : color(C) } 1 :- node(N).\n"
                       ":- edge(N,M), chosenColor(N,C), chosenColor(M,C).\n";
const char* no_adjacency = "1 { chosenColor(N,C) : color(C) } 1 :- node(N).\n";
const char* triangle = "node(1..3). edge(1,2). edge(2,3). edge(1,3). color(red). color(green). color(black).";

std::set<std::string> rule_texts(const Program& p) {
    std::set<std::string> s;
    for (const auto& r : p.rules()) {
        s.insert(r.text);
    }
    return s;
}

AnswerSet model_of(std::initializer_list<const char*> atoms) {
    std::vector<GroundAtom> v;
    for (auto a : atoms) {
        v.push_back(GroundAtom::parse(a));
    }
    return AnswerSet::from_atoms(v);
}

std::set<GroundAtom> grid(std::initializer_list<int> nodes, std::initializer_list<const char*> colors) {
    std::set<GroundAtom> base;
    for (int n : nodes) {
        for (auto c : colors) {
            base.insert(GroundAtom::parse("chosenColor(" + std::to_string(n) + "," + c + ")"));
        }
    }
    return base;
}

} // namespace

TEST_CASE("steering constraints for the three-node colouring", "[model-eval]") {
    auto m_g = model_of({"chosenColor(1,purple)", "chosenColor(2,red)", "chosenColor(3,brown)"});
    auto base = grid({1, 2, 3}, {"purple", "red", "brown"});
    auto c = create_model_constraints(m_g, base, out, false, 1);
    std::set<std::string> expected{":- not chosenColor(3,brown).", ":- not chosenColor(2,red).",
                                   ":- not chosenColor(1,purple).", ":- chosenColor(1,brown).",
                                   ":- chosenColor(1,red).",        ":- chosenColor(2,brown).",
                                   ":- chosenColor(2,purple).",     ":- chosenColor(3,red).",
                                   ":- chosenColor(3,purple)."};
    CHECK(rule_texts(c) == expected);
    CHECK(c.count(RuleKind::strong_constraint) == 9);
}

TEST_CASE("steering with an empty complement", "[model-eval]") {
    auto m_g = model_of({"chosenColor(1,red)"});
    std::set<GroundAtom> base(m_g.atoms.begin(), m_g.atoms.end());
    auto c = create_model_constraints(m_g, base, out, false, 1);
    CHECK(rule_texts(c) == std::set<std::string>{":- not chosenColor(1,red)."});
    CHECK_THROWS_AS(create_model_constraints(m_g, {}, out, false, 1), EmptyBase);
}

TEST_CASE("weak steering constraints", "[model-eval]") {
    auto m_g = model_of({"chosenColor(1,red)", "chosenColor(2,green)"});
    auto base = grid({1, 2}, {"red", "green"});
    auto c = create_model_constraints(m_g, base, out, true, 2);
    REQUIRE(c.rules().size() == 4);
    std::set<std::string> tails;
    for (const auto& r : c.rules()) {
        CHECK(r.kind == RuleKind::weak_constraint);
        CHECK(r.weak_level == 2);
        auto open = r.text.find('[');
        CHECK(r.text.substr(open, 3) == "[1@");
        tails.insert(r.text.substr(open));
    }
    CHECK(tails.size() == 4);
    CHECK(max_weak_level(c) == 2);
}

TEST_CASE("complement base over the triangle colorings", "[model-eval]") {
    // independent enumeration of the proper colorings
    const std::array<const char*, 3> colors{"red", "green", "black"};
    std::vector<AnswerSet> as_g;
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            for (int c = 0; c < 3; ++c) {
                if (a != b && b != c && a != c) {
                    as_g.push_back(AnswerSet::from_atoms(
                        {GroundAtom::parse(std::string("chosenColor(1,") + colors[a] + ")"),
                         GroundAtom::parse(std::string("chosenColor(2,") + colors[b] + ")"),
                         GroundAtom::parse(std::string("chosenColor(3,") + colors[c] + ")")}));
                }
            }
        }
    }
    REQUIRE(as_g.size() == 6);
    CHECK(build_complement_base(as_g, out) == grid({1, 2, 3}, {"red", "green", "black"}));
    CHECK(build_complement_base({as_g[0]}, out).size() == 3);
    CHECK(build_complement_base({}, out).empty());

    auto solved = solver().solve_all({Program::parse(gold_src), Program::parse(triangle)}, 60, out);
    REQUIRE(solved.models.size() == 6);
    std::set<std::string> a, b;
    for (const auto& m : as_g) {
        a.insert(m.str());
    }
    for (const auto& m : solved.models) {
        b.insert(m.str());
    }
    CHECK(a == b);
}

TEST_CASE("models match on output projection", "[model-eval]") {
    auto g = model_of({"chosenColor(1,red)", "reached(1)"});
    CHECK(models_match(g, g, out));
    CHECK(models_match(model_of({"chosenColor(1,red)", "aux(7)"}), g, out));
    CHECK_FALSE(models_match(model_of({"chosenColor(1,green)"}), model_of({"chosenColor(1,red)"}), out));
}

TEST_CASE("augmentation adds the gold facts and the five schema rules", "[model-eval]") {
    auto m_g = model_of({"chosenColor(1,purple)", "chosenColor(2,red)", "chosenColor(3,brown)"});
    auto p_t = Program::parse(gold_src);
    auto aug = aug_program(p_t, {m_g}, out);
    auto texts = rule_texts(aug);
    for (const char* r : {"trueInGold(1,chosenColor(2,red)).", "trueInGold(1,chosenColor(1,purple)).",
                          "trueInGold(1,chosenColor(3,brown)).", "mod(X) :- trueInGold(X,_).",
                          "trueInTested(chosenColor(X,Y)) :- chosenColor(X,Y).",
                          "smallerMG(M) :- trueInGold(M, X), not trueInTested(X).",
                          "smallerMt(M) :- mod(M), trueInTested(X), not trueInGold(M, X).",
                          ":- mod(M), not smallerMG(M), not smallerMt(M)."}) {
        CHECK(texts.count(r) == 1);
    }
    CHECK(aug.rules().size() == p_t.rules().size() + 3 + 5);

    auto empty = aug_program(p_t, {}, out);
    CHECK(empty.rules().size() == p_t.rules().size() + 5);
}

TEST_CASE("auxiliary names avoid the tested program", "[model-eval]") {
    auto p_t = Program::parse("mod(1). 1 { chosenColor(N,C) : color(C) } 1 :- node(N).");
    auto aug = aug_program(p_t, {model_of({"chosenColor(1,red)"})}, out);
    auto texts = rule_texts(aug);
    CHECK(texts.count("mod_1(X) :- trueInGold_1(X,_).") == 1);
    CHECK(texts.count("mod(1).") == 1);
}

TEST_CASE("augmented gold on a uniquely colorable instance is unsat", "[model-eval]") {
    // path 1-2 with a single color for node 1 forces the unique coloring
    auto facts = Program::parse("node(1..2). edge(1,2). color(red). color(green). :- chosenColor(1,green).");
    auto p_g = Program::parse(gold_src);
    auto gold = solver().solve_all({p_g, facts}, 60, out);
    REQUIRE(gold.models.size() == 1);
    auto aug = aug_program(p_g, gold.models, out);
    CHECK(solver().solve_all({aug, facts}, 60, out).status == SolveStatus::unsat);
}

TEST_CASE("scores", "[model-eval]") {
    auto s = compute_scores(6, 6, 21);
    CHECK(s.precision == 6.0 / 27.0);
    CHECK(s.recall == 1.0);
    CHECK(s.f1 == 12.0 / 33.0);
    CHECK(s.tpm_count == 27);
    auto z = compute_scores(10, 0, 0);
    CHECK(z.precision == 0.0);
    CHECK(z.recall == 0.0);
    CHECK(z.f1 == 0.0);
    auto one = compute_scores(4, 4, 0);
    CHECK(one.precision == 1.0);
    CHECK(one.recall == 1.0);
    CHECK(one.f1 == 1.0);
    CHECK(compute_scores(0, 0, 0).f1 == 0.0);
}

TEST_CASE("algorithm on the triangle", "[model-eval]") {
    std::vector<InstanceInput> inst{{"triangle", Program::parse(triangle)}};
    auto p_g = Program::parse(gold_src);

    auto self = evaluate_model_based(solver(), p_g, p_g, inst, out);
    CHECK(self.scores.gm_count == 6);
    CHECK(self.scores.cgm_count == 6);
    CHECK(self.scores.wm_count == 0);
    CHECK(self.scores.f1 == 1.0);
    CHECK_FALSE(self.partial);

    auto weak = evaluate_model_based(solver(), Program::parse(no_adjacency), p_g, inst, out);
    CHECK(weak.scores.cgm_count == 6);
    CHECK(weak.scores.wm_count == 21);
    CHECK(weak.scores.recall == 1.0);
    CHECK(weak.scores.precision == 6.0 / 27.0);
    CHECK(weak.scores.f1 == 12.0 / 33.0);
    for (const auto& m : weak.sets.wm) {
        CHECK(m.instance == "triangle");
        for (const auto& g : weak.sets.gm) {
            CHECK_FALSE(models_match(m, g, out));
        }
    }

    auto none = evaluate_model_based(solver(), Program::parse("a. :- a."), p_g, inst, out);
    CHECK(none.scores.cgm_count == 0);
    CHECK(none.scores.tpm_count == 0);
    CHECK(none.scores.f1 == 0.0);
}

TEST_CASE("extra output atoms outside the base do not hide coverage", "[model-eval]") {
    // candidate may additionally color with a colour outside every gold model
    const char* cand = "1 { chosenColor(N,C) : color(C) } 1 :- node(N).\n"
                       ":- edge(N,M), chosenColor(N,C), chosenColor(M,C).\n"
                       "{ chosenColor(1,blue) }.\n";
    std::vector<InstanceInput> inst{{"triangle", Program::parse(triangle)}};
    auto p_g = Program::parse(gold_src);
    auto res = evaluate_model_based(solver(), Program::parse(cand), p_g, inst, out);
    auto oracle = aspbench::testing::double_enumeration(solver(), Program::parse(cand), p_g, inst[0].facts, out);
    CHECK(res.scores.cgm_count == oracle.cgm);
    CHECK(res.scores.wm_count == oracle.wm);
    CHECK(res.scores.cgm_count == 6);
}

TEST_CASE("algorithm agrees with double enumeration", "[model-eval]") {
    auto p_g = Program::parse(gold_src);
    const std::vector<std::string> candidates{
        gold_src,
        no_adjacency,
        "1 { chosenColor(N,C) : color(C) } :- node(N).\n:- edge(N,M), chosenColor(N,C), chosenColor(M,C).",
        "{ chosenColor(N,C) : color(C) } 1 :- node(N).\n:- edge(N,M), chosenColor(N,C), chosenColor(M,C).",
        "1 { chosenColor(N,C) : color(C) } 1 :- node(N).\n:- edge(N,M), chosenColor(N,C), chosenColor(M,C).\n"
        ":- chosenColor(1,red).",
        "1 { chosenColor(N,C) : color(C) } 1 :- node(N).\n:- edge(N,M), chosenColor(N,C), not chosenColor(M,C).",
        "chosenColor(N,red) :- node(N).",
    };
    const std::vector<std::string> facts{triangle, "node(1..2). edge(1,2). color(red). color(green).",
                                         "node(1..4). edge(1,2). edge(2,3). edge(3,4). edge(1,3). edge(1,4). "
                                         "edge(2,4). color(r). color(g). color(b).",
                                         "node(1..3). edge(1,2). color(red). color(green)."};
    for (const auto& c : candidates) {
        auto p_t = Program::parse(c);
        for (std::size_t i = 0; i < facts.size(); ++i) {
            InstanceInput inst{"i" + std::to_string(i), Program::parse(facts[i])};
            auto res = evaluate_model_based(solver(), p_t, p_g, {inst}, out);
            auto oracle = aspbench::testing::double_enumeration(solver(), p_t, p_g, inst.facts, out);
            INFO(c << " on " << facts[i]);
            CHECK(res.scores.gm_count == oracle.gm);
            CHECK(res.scores.cgm_count == oracle.cgm);
            CHECK(res.scores.wm_count == oracle.wm);
        }
    }
}

TEST_CASE("optimization candidates against double enumeration", "[model-eval]") {
    const SignatureSet cyc{{"cycle", 2}};
    const std::string tsp = "{ cycle(X,Y) : cost(X,Y,_) } = 1 :- node(X).\n"
                            "{ cycle(X,Y) : cost(X,Y,_) } = 1 :- node(Y).\n"
                            "reached(Y) :- cycle(1,Y).\n"
                            "reached(Y) :- cycle(X,Y), reached(X).\n"
                            ":- node(Y), not reached(Y).\n";
    const std::string weak = ":~ cycle(X,Y), cost(X,Y,C). [C@1,X,Y]\n";
    auto facts = Program::parse("node(1..4). cost(1,2,1). cost(2,1,1). cost(2,3,1). cost(3,2,1). cost(3,4,1). "
                                "cost(4,3,1). cost(4,1,1). cost(1,4,1). cost(1,3,5). cost(3,1,5). cost(2,4,2). "
                                "cost(4,2,2).");
    auto p_g = Program::parse(tsp + weak);
    const std::vector<std::string> candidates{
        tsp + weak,
        tsp,                                              // no optimization: every tour
        tsp + ":~ cycle(X,Y), cost(X,Y,C). [C@2,X,Y]\n",  // other level, same optimum
        tsp + ":~ cycle(X,Y), cost(X,Y,C). [-C@1,X,Y]\n", // maximizes instead
        tsp + weak + ":- cycle(1,2).\n",                  // excludes one optimal tour
    };
    InstanceInput inst{"square", facts};
    for (const auto& c : candidates) {
        auto p_t = Program::parse(c);
        auto res = evaluate_model_based(solver(), p_t, p_g, {inst}, cyc);
        auto oracle = aspbench::testing::double_enumeration(solver(), p_t, p_g, facts, cyc);
        INFO(c);
        CHECK(res.scores.gm_count == oracle.gm);
        CHECK(res.scores.cgm_count == oracle.cgm);
        CHECK(res.scores.wm_count == oracle.wm);
    }
    auto self = evaluate_model_based(solver(), p_g, p_g, {inst}, cyc);
    CHECK(self.scores.f1 == 1.0);
    CHECK(self.scores.gm_count == 2);
}
