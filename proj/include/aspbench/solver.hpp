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

#include <aspbench/syntax.hpp>

#include <optional>
#include <string>
#include <vector>

namespace aspbench {

enum class SolveMode {
    check_syntax,
    one_model,
    all_models,         // every stable model, optimization statements ignored
    all_optimal_models, // every optimal model; same as all_models without optimization
};

enum class SolveStatus { sat, unsat, syntax_error, timeout, solver_crash };

[[nodiscard]] std::string_view to_string(SolveStatus status) noexcept;

struct SolveRequest {
    std::vector<Program> program_parts;
    SolveMode mode = SolveMode::all_optimal_models;
    double timeout = 300.0;
    std::optional<SignatureSet> project;
};

struct SolveResult {
    SolveStatus status = SolveStatus::solver_crash;
    std::vector<AnswerSet> models;
    /// Costs of each returned model (empty vectors without optimization).
    std::vector<std::vector<long long>> model_costs;
    bool optimum_proven = false;
    /// Costs of the best model found, one entry per priority level (highest first).
    std::optional<std::vector<long long>> costs;
    std::string stderr_excerpt;
    double seconds = 0.0;

    [[nodiscard]] bool ok() const noexcept { return status == SolveStatus::sat || status == SolveStatus::unsat; }
};

struct SyntaxCheck {
    bool ok = false;
    SolveStatus status = SolveStatus::syntax_error; // sat when ok
    std::string detail;
};

struct SolverConfig {
    /// Command prefix, e.g. {"clingo"} or {"python3", "-m", "clingo"}.
    std::vector<std::string> command;
    double default_timeout = 300.0;
};

/// Solver resolution: explicit command (whitespace separated) if given, then
/// ASPBENCH_SOLVER, then the bundled launcher, then clingo on PATH, then the
/// clingo Python module. Throws SolverUnavailable when nothing works.
[[nodiscard]] SolverConfig resolve_solver(const std::string& explicit_command = {});

class Solver {
public:
    explicit Solver(SolverConfig config);

    [[nodiscard]] const SolverConfig& config() const noexcept { return config_; }

    SolveResult solve(const SolveRequest& request) const;

    SyntaxCheck check_syntax(const Program& program, double timeout) const;
    SyntaxCheck check_syntax(const std::string& source, double timeout) const;

    /// All stable models, or all optimal ones when the parts contain optimization statements.
    SolveResult solve_all(const std::vector<Program>& parts, double timeout,
                          const std::optional<SignatureSet>& project = std::nullopt) const;
    /// At most one model; optimal (with proof flag) under optimization.
    SolveResult solve_once(const std::vector<Program>& parts, double timeout,
                           const std::optional<SignatureSet>& project = std::nullopt) const;

    /// Version line reported by the solver, empty if it cannot be queried.
    [[nodiscard]] std::string version() const;

private:
    SolverConfig config_;
};

/// Parses the solver's JSON output (clingo --outf=2). Exposed for tests.
SolveResult parse_solver_output(const std::string& json_text, const std::string& stderr_text, SolveMode mode,
                                const std::optional<SignatureSet>& project);

} // namespace aspbench
