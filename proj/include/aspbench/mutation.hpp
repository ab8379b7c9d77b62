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

#include <aspbench/model_eval.hpp>
#include <aspbench/solver.hpp>
#include <aspbench/suite.hpp>
#include <aspbench/syntax.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace aspbench {

enum class MutationKind {
    delete_rule,
    delete_body_literal,
    toggle_negation,
    swap_comparison,
    perturb_constant,
    swap_variables,
    shift_bound,
};

[[nodiscard]] std::string_view to_string(MutationKind kind) noexcept;

struct Lineage {
    MutationKind kind = MutationKind::delete_rule;
    std::size_t rule = 0;
    std::string detail;
};

struct Mutant {
    int id = 0;
    Program program;
    Lineage lineage;
};

/// Every single-site mutation of the program, deduplicated by source hash and
/// excluding the original, in a fixed order. Directives and comments are never touched.
[[nodiscard]] std::vector<Mutant> enumerate_mutations(const Program& gold);

/// `count` distinct mutants that pass the solver's syntax check, chosen by a
/// seeded shuffle of the full mutation space. Throws ExhaustedMutationSpace.
[[nodiscard]] std::vector<Mutant> generate_mutants(const Solver& solver, const Program& gold, std::size_t count,
                                                   std::uint64_t seed, double timeout = 60.0);

struct MutantScore {
    int id = 0;
    Lineage lineage;
    std::string source_hash;
    std::string program;
    double accuracy = 0.0;
    std::optional<double> f1;
    bool survivor = false;
    bool adjudicated = false;
    std::vector<std::string> failing_cases;
};

struct ValidationReport {
    std::string problem;
    double gold_accuracy = 0.0;
    std::vector<MutantScore> mutants;
    std::size_t survivors = 0; // survivors not adjudicated as equivalent

    [[nodiscard]] bool passed() const noexcept { return survivors == 0; }
    [[nodiscard]] std::string to_json() const;
};

struct ValidationOptions {
    /// Source hashes of mutants judged semantically equivalent to the gold program.
    std::set<std::string> adjudicated;
    /// Also compute the model-based F1 of each mutant over these instances.
    std::vector<InstanceInput> instances;
    SignatureSet outputs;
    bool weak_mode = false;
    double timeout = 300.0;
};

/// Throws GoldFailsSuite when the gold program does not score 1.0.
[[nodiscard]] ValidationReport validate_suite(const Solver& solver, const Program& gold, const TestSuite& suite,
                                              const SuiteContext& ctx, const std::vector<Mutant>& mutants,
                                              const ValidationOptions& options);

} // namespace aspbench
