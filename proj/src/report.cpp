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

#include <aspbench/report.hpp>

#include <aspbench/error.hpp>

#include <fstream>
#include <map>
#include <optional>

namespace aspbench {
namespace {

namespace fs = std::filesystem;

struct Mean {
    double sum = 0.0;
    std::size_t n = 0;
    void add(double v) {
        sum += v;
        ++n;
    }
    [[nodiscard]] std::optional<double> value() const {
        return n == 0 ? std::nullopt : std::optional<double>(sum / static_cast<double>(n));
    }
};

std::string cell(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

const char* semantic_metrics[] = {"model_based", "test_suite"};

} // namespace

std::string_view to_string(FigureKind k) noexcept {
    switch (k) {
    case FigureKind::scatter_syntactic_semantic: return "scatter_syntactic_semantic";
    case FigureKind::heatmap_per_problem: return "heatmap_per_problem";
    case FigureKind::bars_with_ci: return "bars_with_ci";
    case FigureKind::metric_diff_bars: return "metric_diff_bars";
    case FigureKind::timing_bars: return "timing_bars";
    }
    return "?";
}

const std::set<FigureKind>& all_figure_kinds() {
    static const std::set<FigureKind> kinds{FigureKind::scatter_syntactic_semantic, FigureKind::heatmap_per_problem,
                                            FigureKind::bars_with_ci, FigureKind::metric_diff_bars,
                                            FigureKind::timing_bars};
    return kinds;
}

FigureKind parse_figure_kind(std::string_view text) {
    for (auto k : all_figure_kinds()) {
        if (text == to_string(k)) {
            return k;
        }
    }
    throw UnknownKind(std::string(text));
}

std::string FigureData::csv() const {
    std::string out;
    auto line = [&](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            const auto& f = fields[i];
            out += i ? "," : "";
            if (f.find_first_of(",\"\n") == std::string::npos) {
                out += f;
            } else {
                out += '"';
                for (char c : f) {
                    out += c == '"' ? std::string("\"\"") : std::string(1, c);
                }
                out += '"';
            }
        }
        out += '\n';
    };
    line(header);
    for (const auto& r : rows) {
        line(r);
    }
    return out;
}

FigureData figure(const AggregateResult& agg, FigureKind kind) {
    FigureData fig;
    fig.kind = kind;
    const auto& model = agg.model;
    // per (problem, metric) means over description variants
    std::map<std::pair<std::string, std::string>, Mean> per_problem;
    std::map<std::string, Mean> overall;
    for (const auto& r : agg.rows) {
        if (r.n == 0) {
            continue;
        }
        per_problem[{r.problem, r.metric}].add(r.mean);
    }
    for (const auto& [k, m] : per_problem) {
        overall[k.second].add(*m.value());
    }

    switch (kind) {
    case FigureKind::scatter_syntactic_semantic:
        fig.header = {"model", "syntactic", "model_based", "test_suite"};
        fig.rows.push_back({model, cell(overall["syntactic"].value()), cell(overall["model_based"].value()),
                            cell(overall["test_suite"].value())});
        break;
    case FigureKind::heatmap_per_problem:
        fig.header = {"model", "problem", "metric", "value"};
        for (const auto& [k, m] : per_problem) {
            fig.rows.push_back({model, k.first, k.second, cell(m.value())});
        }
        break;
    case FigureKind::bars_with_ci:
        fig.header = {"model", "problem", "variant", "metric", "mean", "half_width", "n"};
        for (const auto& r : agg.rows) {
            if (r.metric == "syntactic") {
                continue;
            }
            fig.rows.push_back({model, r.problem, std::string(to_string(r.variant)), r.metric, format_number(r.mean),
                                format_number(r.half_width), std::to_string(r.n)});
        }
        break;
    case FigureKind::metric_diff_bars: {
        fig.header = {"model", "problem", "test_suite_minus_model_based"};
        std::set<std::string> problems;
        for (const auto& [k, m] : per_problem) {
            problems.insert(k.first);
        }
        for (const auto& p : problems) {
            auto ts = per_problem.find({p, semantic_metrics[1]});
            auto mb = per_problem.find({p, semantic_metrics[0]});
            if (ts == per_problem.end() || mb == per_problem.end()) {
                continue;
            }
            fig.rows.push_back({model, p, format_number(*ts->second.value() - *mb->second.value())});
        }
        break;
    }
    case FigureKind::timing_bars:
        fig.header = {"model", "problem", "metric", "mean_seconds", "n"};
        for (const auto& t : agg.timings) {
            fig.rows.push_back(
                {model, t.problem, std::string(to_string(t.metric)), format_number(t.mean_seconds), std::to_string(t.n)});
        }
        break;
    }
    return fig;
}

std::vector<fs::path> render(const AggregateResult& agg, const std::set<FigureKind>& kinds, const fs::path& out_dir) {
    if (agg.rows.empty()) {
        throw Error(ErrorClass::usage, "nothing to render: no aggregate rows");
    }
    const auto dir = out_dir / "figures";
    fs::create_directories(dir);
    std::vector<fs::path> written;
    for (auto k : kinds) {
        auto path = dir / (std::string(to_string(k)) + ".csv");
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << figure(agg, k).csv();
        written.push_back(path);
    }
    return written;
}

} // namespace aspbench
