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

#include <aspbench/dataset.hpp>
#include <aspbench/solver.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace aspbench {

inline constexpr const char* fixture_generator_model = "fixture-generator";
inline constexpr const char* fixture_matcher_model = "fixture-matcher";

/// Predicate renaming used by synthetic candidates: `node` becomes `myNode`.
[[nodiscard]] std::string synthetic_name(const std::string& gold_name);

struct FixtureOptions {
    std::filesystem::path dataset_root;
    std::filesystem::path out_dir;
    std::vector<std::string> problems; // empty: every bundle
    int runs = 5;
    std::uint64_t seed = 1;
    std::string generator_model = fixture_generator_model;
    std::string matcher_model = fixture_matcher_model;
    double temperature = 0.7;
};

/// Writes generator and matcher PromptRecords for the full problem x variant x run
/// grid, built from each gold program: renamed gold wrapped in prose and a code
/// fence, renamed mutants, a truncated program, and a "No semantic match" reply.
/// Returns the number of records written.
std::size_t make_replay_fixtures(const Solver& solver, const FixtureOptions& options);

} // namespace aspbench
