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
#include <aspbench/llm.hpp>
#include <aspbench/model_eval.hpp>
#include <aspbench/solver.hpp>

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace aspbench {

enum class Variant { original, paraphrase1, paraphrase2 };
enum class Metric { model_based, test_suite };

[[nodiscard]] std::string_view to_string(Variant v) noexcept;
[[nodiscard]] std::string_view to_string(Metric m) noexcept;
/// Accepts original/paraphrase1/paraphrase2. Throws Error(usage).
[[nodiscard]] Variant parse_variant(std::string_view text);
/// Accepts model-based/model_based and test-suite/test_suite. Throws Error(usage).
[[nodiscard]] Metric parse_metric(std::string_view text);

enum class FailureTag {
    syntax_error,
    no_semantic_match,
    unparseable_mapping,
    mapping_collision,
    timeout,
    partial,
    endpoint_error,
};

[[nodiscard]] std::string_view to_string(FailureTag t) noexcept;

struct RunConfig {
    std::vector<std::string> problems; // empty: every bundle under the dataset root
    std::vector<Variant> variants{Variant::original, Variant::paraphrase1, Variant::paraphrase2};
    int runs_per_cell = 5;
    LlmEndpoint generator;
    LlmEndpoint matcher;
    LlmEndpoint paraphraser;
    std::set<Metric> metrics{Metric::model_based, Metric::test_suite};
    std::uint64_t seed = 1;
    std::optional<double> timeout; // overrides the per-problem timeout
    int workers = 1;
    std::filesystem::path dataset_root;
    std::filesystem::path out_dir = "out";
    std::filesystem::path cache_dir; // empty: no response cache
    WrongModelMode wrong_models = WrongModelMode::optimal;

    /// Throws Error(usage) when runs_per_cell < 1, variants or metrics are empty.
    void validate() const;
};

struct CellResult {
    std::string problem;
    Variant variant = Variant::original;
    int run_index = 0;
    bool syntactic_ok = false;
    std::optional<Scores> model_based;
    std::optional<double> suite_accuracy;
    std::optional<FailureTag> failure_tag;
    std::string detail;
    double model_seconds = 0.0;
    double suite_seconds = 0.0;
    double total_seconds = 0.0;
    std::filesystem::path artifacts;

    /// Score of a metric as counted in aggregates; nullopt when not requested
    /// or when the cell was dropped.
    [[nodiscard]] std::optional<double> score(Metric m) const;
    [[nodiscard]] bool dropped() const noexcept { return failure_tag == FailureTag::endpoint_error; }
};

struct AggregateRow {
    std::string problem;
    Variant variant = Variant::original;
    std::string metric; // model_based, test_suite or syntactic
    double mean = 0.0;
    double half_width = 0.0;
    std::size_t n = 0;
    std::size_t dropped = 0;
    std::string flags;
};

struct TimingRow {
    std::string problem;
    Metric metric = Metric::model_based;
    double mean_seconds = 0.0;
    std::size_t n = 0;
};

struct AggregateResult {
    std::string model;
    std::vector<AggregateRow> rows;
    std::vector<TimingRow> timings;
};

struct MeanCi {
    double mean = 0.0;
    double half_width = 0.0;
    std::size_t n = 0;
};

/// Mean and 95% Student-t half-width over a sample; n = 1 gives half-width 0.
[[nodiscard]] MeanCi mean_with_ci(const std::vector<double>& xs);

/// Groups cells by (problem, variant, metric). Permutation invariant.
[[nodiscard]] AggregateResult aggregate(const std::vector<CellResult>& cells, const std::string& model = {});

/// Pearson correlation of raw pairs. Throws DegenerateVariance.
[[nodiscard]] double pearson(const std::vector<std::pair<double, double>>& pairs);

/// Pearson correlation of (model-based F1, suite accuracy) over cells carrying both.
[[nodiscard]] double correlate_metrics(const std::vector<CellResult>& cells);

/// Drives generation, matching, normalization and evaluation for a grid of cells.
class Pipeline {
public:
    Pipeline(RunConfig config, const Solver& solver, std::shared_ptr<Gateway> generator,
             std::shared_ptr<Gateway> matcher, std::shared_ptr<Gateway> paraphraser = nullptr);

    [[nodiscard]] const RunConfig& config() const noexcept { return config_; }

    /// Loads and caches the bundle, enumerating gold models once per problem.
    const ProblemBundle& bundle(const std::string& problem);

    CellResult run_cell(const std::string& problem, Variant variant, int run_index);

    /// Every cell of the configured grid, in grid order. Cells not started
    /// before a cancellation request are omitted. A harness error in one cell
    /// does not stop the others; the first one is rethrown once all have run.
    std::vector<CellResult> run();

    [[nodiscard]] std::filesystem::path artifact_dir(const std::string& problem, Variant variant, int run) const;

private:
    struct Loaded {
        ProblemBundle bundle;
        std::vector<GoldEnumeration> golds;
        std::once_flag golds_once;
        std::map<Variant, std::string> descriptions;
        std::mutex desc_mutex;
    };

    Loaded& loaded(const std::string& problem);
    const std::vector<GoldEnumeration>& golds(Loaded& l);
    std::string description(Loaded& l, Variant v);
    std::string description_locked(Loaded& l, Variant v);
    [[nodiscard]] double timeout_for(const ProblemBundle& b) const;

    RunConfig config_;
    const Solver& solver_;
    std::shared_ptr<Gateway> generator_;
    std::shared_ptr<Gateway> matcher_;
    std::shared_ptr<Gateway> paraphraser_;
    std::mutex mutex_;
    std::map<std::string, std::unique_ptr<Loaded>> bundles_;
};

/// Writes cells.csv, timings.csv, aggregates.csv and summary.json into `dir`.
void write_reports(const std::filesystem::path& dir, const std::vector<CellResult>& cells,
                   const AggregateResult& aggregates);

/// Path-safe rendering of a model name for the results tree.
[[nodiscard]] std::string sanitize_component(std::string_view name);

/// Fixed-notation number with up to 6 decimals and no trailing zeros.
[[nodiscard]] std::string format_number(double v);

} // namespace aspbench
