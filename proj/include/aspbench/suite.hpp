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

#pragma once

#include <aspbench/solver.hpp>
#include <aspbench/syntax.hpp>

#include <optional>
#include <string>
#include <vector>

namespace aspbench {

enum class AssertionKind {
    no_answer_set,
    has_answer_set,
    answer_set_count,
    constraint_for_all,
    true_in_all,
    true_in_at_least_one,
};

[[nodiscard]] std::string_view to_string(AssertionKind kind) noexcept;

struct Assertion {
    AssertionKind kind = AssertionKind::has_answer_set;
    std::size_t count = 0;  // answer_set_count
    std::string constraint; // constraint_for_all
    GroundAtom atom;        // true_in_all, true_in_at_least_one
    std::size_t line = 0;

    /// Annotation text as written in a suite file (without the "%@" prefix).
    [[nodiscard]] std::string str() const;
};

struct TestCase {
    std::string name;
    Program facts;
    std::vector<Assertion> assertions;
    std::size_t line = 0;
};

struct TestSuite {
    std::vector<TestCase> cases;
    std::string problem;

    [[nodiscard]] std::string str() const;
};

/// Parses the annotation-based suite format (see docs/suite-format.md).
/// Throws SuiteSyntaxError / UnknownAssertionKind.
[[nodiscard]] TestSuite parse_suite(std::string_view source);

enum class Verdict { passed, failed, errored };

[[nodiscard]] std::string_view to_string(Verdict v) noexcept;

struct CaseResult {
    std::string name;
    Verdict verdict = Verdict::errored;
    std::vector<std::string> reasons;
    std::optional<AnswerSet> witness;
    std::size_t models = 0;
    double seconds = 0.0;
};

struct SuiteContext {
    /// Output predicates; models are compared and counted on their projection.
    SignatureSet outputs;
    /// Input predicates, kept in the enumerated models.
    SignatureSet inputs;
    double timeout = 300.0;
};

struct SuiteResult {
    double accuracy = 0.0;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t errored = 0;
    std::vector<CaseResult> cases;
};

CaseResult run_case(const Solver& solver, const Program& candidate, const TestCase& test, const SuiteContext& ctx);

SuiteResult run_suite(const Solver& solver, const Program& candidate, const TestSuite& suite,
                      const SuiteContext& ctx);

} // namespace aspbench
