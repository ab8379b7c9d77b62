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

#include <aspbench/pipeline.hpp>

#include <filesystem>
#include <set>
#include <string>
#include <vector>

namespace aspbench {

enum class FigureKind {
    scatter_syntactic_semantic,
    heatmap_per_problem,
    bars_with_ci,
    metric_diff_bars,
    timing_bars,
};

[[nodiscard]] std::string_view to_string(FigureKind k) noexcept;
/// Throws UnknownKind.
[[nodiscard]] FigureKind parse_figure_kind(std::string_view text);
[[nodiscard]] const std::set<FigureKind>& all_figure_kinds();

struct FigureData {
    FigureKind kind = FigureKind::bars_with_ci;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    [[nodiscard]] std::string csv() const;
};

[[nodiscard]] FigureData figure(const AggregateResult& aggregates, FigureKind kind);

/// Writes `<out>/figures/<kind>.csv` for each requested kind and returns the paths.
/// Throws Error(usage) on empty aggregates.
std::vector<std::filesystem::path> render(const AggregateResult& aggregates, const std::set<FigureKind>& kinds,
                                          const std::filesystem::path& out_dir);

} // namespace aspbench
