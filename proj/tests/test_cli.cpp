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

#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <cstdio>
#include <sys/wait.h>
#include <unistd.h>

using namespace aspbench::testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code = -1;
    std::string output;
};

Outcome run(const std::string& args) {
    const std::string cmd = std::string("'") + ASPBENCH_CLI + "' " + args + " 2>&1";
    Outcome o;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    char buf[4096];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) {
        o.output.append(buf, n);
    }
    const int status = ::pclose(pipe);
    o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return o;
}

struct Scratch {
    fs::path dir;
    explicit Scratch(const std::string& name)
        : dir(fs::temp_directory_path() / ("aspbench_cli_" + name + "_" + std::to_string(::getpid()))) {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    [[nodiscard]] std::string out() const { return "--out '" + (dir / "out").string() + "'"; }
    fs::path write(const std::string& name, const std::string& text) const {
        std::ofstream(dir / name, std::ios::binary) << text;
        return dir / name;
    }
};

std::string gold(const std::string& problem) { return (source_dir() / "problems" / problem / "gold.lp").string(); }

} // namespace

TEST_CASE("list prints every bundle", "[cli]") {
    auto r = run("list");
    CHECK(r.code == 0);
    CHECK(r.output.find("colorability\n") != std::string::npos);
    CHECK(r.output.find("traveling_salesman\n") != std::string::npos);
}

TEST_CASE("help and usage errors", "[cli]") {
    CHECK(run("--help").code == 0);
    CHECK(run("evaluate --help").code == 0);
    CHECK(run("").code == 2);
    CHECK(run("list --no-such-flag").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("pipeline --variants paraphrase7").code == 2);
}

TEST_CASE("evaluate", "[cli]") {
    Scratch s("evaluate");
    SECTION("gold against itself") {
        auto r = run(s.out() + " evaluate --problem colorability --candidate '" + gold("colorability") +
                     "' --metric model-based");
        CHECK(r.code == 0);
        CHECK(r.output.find("f1 1\n") != std::string::npos);
        auto report = nlohmann::json::parse(slurp(s.dir / "out" / "evaluate" / "colorability.json"));
        CHECK(report.contains("model_based"));
        CHECK_FALSE(report.contains("test_suite"));
    }
    SECTION("both metrics in one report") {
        auto r = run(s.out() + " evaluate --problem colorability --candidate '" + gold("colorability") +
                     "' --metric both");
        CHECK(r.code == 0);
        auto report = nlohmann::json::parse(slurp(s.dir / "out" / "evaluate" / "colorability.json"));
        CHECK(report.contains("model_based"));
        CHECK(report.contains("test_suite"));
    }
    SECTION("a wrong candidate still exits 0") {
        auto cand = s.write("weak.lp", "1 { chosenColor(N,C) : color(C) } 1 :- node(N).\n");
        auto r = run(s.out() + " evaluate --problem colorability --candidate '" + cand.string() + "'");
        CHECK(r.code == 0);
    }
    SECTION("a candidate with a syntax error still exits 0") {
        auto cand = s.write("broken.lp", "node(1");
        CHECK(run(s.out() + " evaluate --problem colorability --candidate '" + cand.string() + "'").code == 0);
    }
    SECTION("missing candidate") {
        CHECK(run(s.out() + " evaluate --problem colorability --candidate /nonexistent/cand.lp").code == 2);
    }
    SECTION("unknown problem") {
        CHECK(run(s.out() + " evaluate --problem knapsack --candidate '" + gold("colorability") + "'").code == 3);
    }
}

TEST_CASE("environment failures map to exit classes", "[cli]") {
    Scratch s("env");
    CHECK(run("--dataset '" + (s.dir / "absent").string() + "' list").code == 3);
    CHECK(run(s.out() + " --solver /nonexistent/clingo evaluate --problem colorability --candidate '" +
              gold("colorability") + "'")
              .code == 4);
}

TEST_CASE("validate", "[cli]") {
    Scratch s("validate");
    SECTION("shipped bundle has no unadjudicated survivors") {
        auto r = run(s.out() + " validate --problem colorability");
        CHECK(r.code == 0);
        CHECK(fs::exists(s.dir / "out" / "validate" / "colorability.json"));
    }
    SECTION("weakened suite leaves survivors") {
        auto suite = s.write("weak.suite.lp", "%@test(name=single_node_single_color)\nnode(1). color(red).\n"
                                              "%@answerSetCount(1)\n");
        auto r = run(s.out() + " validate --problem colorability --suite '" + suite.string() + "'");
        CHECK(r.code == 1);
        CHECK(r.output.find("SURVIVOR") != std::string::npos);
    }
    SECTION("gold failing the suite") {
        auto suite = s.write("wrong.suite.lp", "%@test(name=wrong)\nnode(1). color(red).\n%@noAnswerSet\n");
        CHECK(run(s.out() + " validate --problem colorability --suite '" + suite.string() + "'").code == 3);
    }
}

TEST_CASE("replay pipeline", "[cli]") {
    Scratch s("pipeline");
    SECTION("one problem gives variants x runs cells") {
        auto r = run(s.out() + " pipeline --problems colorability --runs 2");
        CHECK(r.code == 0);
        CHECK(r.output.find("6 cells") != std::string::npos);
        for (const char* f : {"cells.csv", "aggregates.csv", "summary.json", "figures/bars_with_ci.csv"}) {
            CHECK(fs::exists(s.dir / "out" / f));
        }
    }
    SECTION("missing fixtures drop every cell") {
        auto r = run(s.out() + " pipeline --problems colorability --runs 1 --variants original --fixtures '" +
                     (s.dir / "nothing").string() + "'");
        CHECK(r.code == 5);
    }
    SECTION("live mode needs a model") {
        CHECK(run(s.out() + " pipeline --mode live --problems colorability").code == 2);
    }
}
