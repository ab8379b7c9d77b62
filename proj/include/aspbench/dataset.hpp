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

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace aspbench {

/// Bundle metadata stored as `key = value` lines in `problems/<name>/manifest`.
struct Manifest {
    std::string name;
    SignatureSet inputs;
    SignatureSet outputs;
    std::vector<std::string> instances;
    double timeout = 300.0;
    bool optimization = false;
    /// Source hashes of mutants adjudicated as equivalent to the gold program.
    std::set<std::string> survivors;

    static Manifest parse(std::string_view text);
    [[nodiscard]] std::string str() const;
    friend bool operator==(const Manifest&, const Manifest&) = default;
};

struct ProblemBundle {
    std::string name;
    std::filesystem::path path;
    std::string description_original;
    std::optional<std::string> paraphrase_1;
    std::optional<std::string> paraphrase_2;
    Program gold;
    SignatureSet input_preds;
    SignatureSet output_preds;
    std::vector<InstanceInput> instances;
    TestSuite suite;
    bool has_optimization = false;
    double per_problem_timeout = 300.0;
    Manifest manifest;

    [[nodiscard]] SuiteContext suite_context(double timeout) const { return {output_preds, input_preds, timeout}; }
    /// Description text for a variant name: original, paraphrase1, paraphrase2.
    [[nodiscard]] std::optional<std::string> description(std::string_view variant) const;
};

/// Loads and statically validates a bundle (layout, manifest against gold,
/// instances and suite facts over input predicates only). Throws MissingFile,
/// ManifestMismatch, SuiteSyntaxError.
[[nodiscard]] ProblemBundle load_bundle(const std::filesystem::path& dir);

struct SelfTest {
    Scores scores;
    double suite_accuracy = 0.0;
    std::vector<GoldEnumeration> golds;
    double seconds = 0.0;
};

/// Gold self-evaluation: syntax check, model-based F1 and suite accuracy of
/// the gold program against itself. Throws GoldSelfTestFailure unless both are 1.
SelfTest self_test(const Solver& solver, const ProblemBundle& bundle);

/// load_bundle followed by self_test.
[[nodiscard]] ProblemBundle load_bundle(const std::filesystem::path& dir, const Solver& solver);

/// Bundle names (directories holding a manifest) under the dataset root, sorted.
/// Throws DatasetRootMissing; an empty root yields an empty list and a warning.
[[nodiscard]] std::vector<std::string> list_problems(const std::filesystem::path& root,
                                                     std::vector<std::string>* warnings = nullptr);

/// ASPBENCH_DATASET if set, otherwise the problems/ directory of the source tree.
[[nodiscard]] std::filesystem::path default_dataset_root();

[[nodiscard]] std::string read_file(const std::filesystem::path& path);

} // namespace aspbench
