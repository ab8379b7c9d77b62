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

#include <aspbench/pipeline.hpp>

#include <aspbench/error.hpp>
#include <aspbench/process.hpp>
#include <aspbench/suite.hpp>

#include <boost/math/distributions/students_t.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <thread>

namespace aspbench {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

void write_text(const fs::path& path, const std::string& text) {
    fs::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << text;
    }
    fs::rename(tmp, path);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') {
            out += '"';
        }
    }
    return out + "\"";
}

json scores_json(const Scores& s) {
    return {{"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1},       {"gm", s.gm_count},
            {"cgm", s.cgm_count},       {"wm", s.wm_count},    {"tpm", s.tpm_count}};
}

void zero_scores(CellResult& cell, const std::set<Metric>& metrics) {
    if (metrics.count(Metric::model_based)) {
        cell.model_based = Scores{};
    }
    if (metrics.count(Metric::test_suite)) {
        cell.suite_accuracy = 0.0;
    }
}

} // namespace

std::string_view to_string(Variant v) noexcept {
    switch (v) {
    case Variant::original: return "original";
    case Variant::paraphrase1: return "paraphrase1";
    case Variant::paraphrase2: return "paraphrase2";
    }
    return "?";
}

std::string_view to_string(Metric m) noexcept { return m == Metric::model_based ? "model_based" : "test_suite"; }

Variant parse_variant(std::string_view text) {
    for (auto v : {Variant::original, Variant::paraphrase1, Variant::paraphrase2}) {
        if (text == to_string(v)) {
            return v;
        }
    }
    throw Error(ErrorClass::usage, "unknown variant: " + std::string(text));
}

Metric parse_metric(std::string_view text) {
    if (text == "model-based" || text == "model_based") {
        return Metric::model_based;
    }
    if (text == "test-suite" || text == "test_suite") {
        return Metric::test_suite;
    }
    throw Error(ErrorClass::usage, "unknown metric: " + std::string(text));
}

std::string_view to_string(FailureTag t) noexcept {
    switch (t) {
    case FailureTag::syntax_error: return "syntax_error";
    case FailureTag::no_semantic_match: return "no_semantic_match";
    case FailureTag::unparseable_mapping: return "unparseable_mapping";
    case FailureTag::mapping_collision: return "mapping_collision";
    case FailureTag::timeout: return "timeout";
    case FailureTag::partial: return "partial";
    case FailureTag::endpoint_error: return "endpoint_error";
    }
    return "?";
}

void RunConfig::validate() const {
    if (runs_per_cell < 1) {
        throw Error(ErrorClass::usage, "runs per cell must be at least 1");
    }
    if (variants.empty()) {
        throw Error(ErrorClass::usage, "no description variants selected");
    }
    if (metrics.empty()) {
        throw Error(ErrorClass::usage, "no metrics selected");
    }
    if (workers < 1) {
        throw Error(ErrorClass::usage, "workers must be at least 1");
    }
    if (timeout && !(*timeout > 0)) {
        throw Error(ErrorClass::usage, "timeout must be positive");
    }
}

std::optional<double> CellResult::score(Metric m) const {
    if (dropped()) {
        return std::nullopt;
    }
    if (m == Metric::model_based) {
        return model_based ? std::optional<double>(model_based->f1) : std::nullopt;
    }
    return suite_accuracy;
}

// ---------------------------------------------------------------------------
// Statistics

MeanCi mean_with_ci(const std::vector<double>& xs) {
    MeanCi r;
    r.n = xs.size();
    if (xs.empty()) {
        return r;
    }
    r.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    if (xs.size() < 2) {
        return r;
    }
    double ss = 0.0;
    for (double x : xs) {
        ss += (x - r.mean) * (x - r.mean);
    }
    const double sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    boost::math::students_t dist(static_cast<double>(xs.size() - 1));
    const double t = boost::math::quantile(dist, 0.975);
    r.half_width = t * sd / std::sqrt(static_cast<double>(xs.size()));
    return r;
}

AggregateResult aggregate(const std::vector<CellResult>& cells, const std::string& model) {
    struct Key {
        std::string problem;
        Variant variant;
        std::string metric;
        auto operator<=>(const Key&) const = default;
    };
    struct Group {
        std::vector<double> values;
        std::size_t dropped = 0;
    };
    std::map<Key, Group> groups;
    std::map<std::pair<std::string, Metric>, std::vector<double>> times;
    for (const auto& c : cells) {
        auto& syn = groups[{c.problem, c.variant, "syntactic"}];
        if (c.dropped()) {
            ++syn.dropped;
        } else {
            syn.values.push_back(c.syntactic_ok ? 1.0 : 0.0);
        }
        for (auto m : {Metric::model_based, Metric::test_suite}) {
            const bool requested = m == Metric::model_based ? c.model_based.has_value() : c.suite_accuracy.has_value();
            if (!requested && !c.dropped()) {
                continue;
            }
            auto& g = groups[{c.problem, c.variant, std::string(to_string(m))}];
            if (auto s = c.score(m)) {
                g.values.push_back(*s);
            } else {
                ++g.dropped;
            }
            if (requested && c.syntactic_ok && !c.failure_tag) {
                times[{c.problem, m}].push_back(m == Metric::model_based ? c.model_seconds : c.suite_seconds);
            }
        }
    }
    AggregateResult out;
    out.model = model;
    for (auto& [k, g] : groups) {
        std::sort(g.values.begin(), g.values.end());
        auto ci = mean_with_ci(g.values);
        AggregateRow row{k.problem, k.variant, k.metric, ci.mean, ci.half_width, ci.n, g.dropped, {}};
        if (ci.n == 1) {
            row.flags = "n=1";
        } else if (ci.n == 0) {
            row.flags = "empty";
        }
        out.rows.push_back(std::move(row));
    }
    for (auto& [k, v] : times) {
        std::sort(v.begin(), v.end());
        out.timings.push_back({k.first, k.second, mean_with_ci(v).mean, v.size()});
    }
    return out;
}

double pearson(const std::vector<std::pair<double, double>>& pairs) {
    if (pairs.size() < 2) {
        throw DegenerateVariance("correlation needs at least two paired scores");
    }
    const double n = static_cast<double>(pairs.size());
    double mx = 0.0;
    double my = 0.0;
    for (auto [x, y] : pairs) {
        mx += x;
        my += y;
    }
    mx /= n;
    my /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (auto [x, y] : pairs) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw DegenerateVariance("one of the score vectors has zero variance");
    }
    return sxy / std::sqrt(sxx * syy);
}

double correlate_metrics(const std::vector<CellResult>& cells) {
    std::vector<std::pair<double, double>> pairs;
    for (const auto& c : cells) {
        auto mb = c.score(Metric::model_based);
        auto ts = c.score(Metric::test_suite);
        if (mb && ts) {
            pairs.emplace_back(*mb, *ts);
        }
    }
    std::sort(pairs.begin(), pairs.end());
    return pearson(pairs);
}

// ---------------------------------------------------------------------------
// Pipeline

Pipeline::Pipeline(RunConfig config, const Solver& solver, std::shared_ptr<Gateway> generator,
                   std::shared_ptr<Gateway> matcher, std::shared_ptr<Gateway> paraphraser)
    : config_(std::move(config))
    , solver_(solver)
    , generator_(std::move(generator))
    , matcher_(std::move(matcher))
    , paraphraser_(std::move(paraphraser)) {
    config_.validate();
    if (config_.dataset_root.empty()) {
        config_.dataset_root = default_dataset_root();
    }
    if (config_.problems.empty()) {
        config_.problems = list_problems(config_.dataset_root);
    }
}

Pipeline::Loaded& Pipeline::loaded(const std::string& problem) {
    std::lock_guard lock(mutex_);
    auto it = bundles_.find(problem);
    if (it == bundles_.end()) {
        auto l = std::make_unique<Loaded>();
        l->bundle = load_bundle(config_.dataset_root / problem);
        it = bundles_.emplace(problem, std::move(l)).first;
    }
    return *it->second;
}

const ProblemBundle& Pipeline::bundle(const std::string& problem) { return loaded(problem).bundle; }

double Pipeline::timeout_for(const ProblemBundle& b) const { return config_.timeout.value_or(b.per_problem_timeout); }

const std::vector<GoldEnumeration>& Pipeline::golds(Loaded& l) {
    std::call_once(l.golds_once, [&] {
        for (const auto& inst : l.bundle.instances) {
            l.golds.push_back(enumerate_gold(solver_, l.bundle.gold, inst, l.bundle.output_preds, timeout_for(l.bundle)));
        }
    });
    return l.golds;
}

std::string Pipeline::description(Loaded& l, Variant v) {
    std::lock_guard lock(l.desc_mutex);
    return description_locked(l, v);
}

std::string Pipeline::description_locked(Loaded& l, Variant v) {
    if (auto it = l.descriptions.find(v); it != l.descriptions.end()) {
        return it->second;
    }
    std::string text;
    if (v == Variant::original) {
        text = l.bundle.description_original;
    } else if (auto shipped = l.bundle.description(to_string(v))) {
        text = *shipped;
    } else if (!paraphraser_) {
        throw Error(ErrorClass::dataset,
                    l.bundle.name + " ships no " + std::string(to_string(v)) + " and no paraphraser is configured");
    } else if (v == Variant::paraphrase1) {
        text = paraphraser_->paraphrase(l.bundle.description_original, ParaphraseStage::first);
    } else {
        text = paraphraser_->paraphrase(description_locked(l, Variant::paraphrase1), ParaphraseStage::second);
    }
    l.descriptions[v] = text;
    return text;
}

fs::path Pipeline::artifact_dir(const std::string& problem, Variant variant, int run) const {
    return config_.out_dir / "results" / sanitize_component(config_.generator.model_name) / problem /
           std::string(to_string(variant)) / std::to_string(run);
}

CellResult Pipeline::run_cell(const std::string& problem, Variant variant, int run_index) {
    const auto start = Clock::now();
    CellResult cell;
    cell.problem = problem;
    cell.variant = variant;
    cell.run_index = run_index;
    cell.artifacts = artifact_dir(problem, variant, run_index);
    fs::create_directories(cell.artifacts);

    auto& l = loaded(problem);
    const auto& b = l.bundle;
    const double timeout = timeout_for(b);
    json record = {{"problem", problem}, {"variant", to_string(variant)}, {"run", run_index}};

    auto finish = [&]() {
        cell.total_seconds = since(start);
        record["syntactic_ok"] = cell.syntactic_ok;
        record["failure_tag"] = cell.failure_tag ? json(to_string(*cell.failure_tag)) : json(nullptr);
        record["detail"] = cell.detail;
        if (cell.model_based) {
            record["model_based"] = scores_json(*cell.model_based);
        }
        if (cell.suite_accuracy) {
            record["suite_accuracy"] = *cell.suite_accuracy;
        }
        write_text(cell.artifacts / "cell.json", record.dump(2) + "\n");
        return cell;
    };

    PromptRecord gen;
    try {
        gen = generator_->generate_program(description(l, variant), run_index);
    } catch (const Error& e) {
        if (e.error_class() != ErrorClass::endpoint) {
            throw;
        }
        cell.failure_tag = FailureTag::endpoint_error;
        cell.detail = e.what();
        return finish();
    }
    write_text(cell.artifacts / "generator.json", gen.to_json() + "\n");
    write_text(cell.artifacts / "candidate.lp", gen.response_clean);

    Program candidate;
    try {
        candidate = Program::parse(gen.response_clean);
        auto chk = solver_.check_syntax(candidate, timeout);
        if (!chk.ok) {
            cell.failure_tag = chk.status == SolveStatus::timeout ? FailureTag::timeout : FailureTag::syntax_error;
            cell.syntactic_ok = chk.status == SolveStatus::timeout;
            cell.detail = chk.detail;
        } else {
            cell.syntactic_ok = true;
        }
    } catch (const LexError& e) {
        cell.failure_tag = FailureTag::syntax_error;
        cell.detail = e.what();
    }
    if (cell.failure_tag) {
        zero_scores(cell, config_.metrics);
        return finish();
    }

    MatchResult match;
    try {
        auto [m, rec] = matcher_->match_predicates(b.gold.str(), gen.response_clean, run_index);
        match = std::move(m);
        write_text(cell.artifacts / "matcher.json", rec.to_json() + "\n");
    } catch (const Error& e) {
        if (e.error_class() != ErrorClass::endpoint) {
            throw;
        }
        cell.failure_tag = FailureTag::endpoint_error;
        cell.detail = e.what();
        return finish();
    }
    if (match.kind != MatchResult::Kind::mapping) {
        cell.failure_tag = match.kind == MatchResult::Kind::no_semantic_match ? FailureTag::no_semantic_match
                                                                                : FailureTag::unparseable_mapping;
        zero_scores(cell, config_.metrics);
        return finish();
    }
    json mapping = json::array();
    for (const auto& [g, c] : match.mapping.pairs) {
        mapping.push_back({g, c});
    }
    record["mapping"] = mapping;

    Program normalized;
    try {
        auto renamed = rename_predicates(candidate, match.mapping);
        for (const auto& w : arity_warnings(renamed, b.output_preds)) {
            record["warnings"].push_back(w);
        }
        normalized = drop_show_directives(strip_input_facts(renamed, b.input_preds));
    } catch (const MappingCollision& e) {
        cell.failure_tag = FailureTag::mapping_collision;
        cell.detail = e.what();
    } catch (const InvalidIdentifier& e) {
        cell.failure_tag = FailureTag::mapping_collision;
        cell.detail = e.what();
    }
    if (cell.failure_tag) {
        zero_scores(cell, config_.metrics);
        return finish();
    }
    write_text(cell.artifacts / "normalized.lp", normalized.str() + "\n");

    if (config_.metrics.count(Metric::model_based)) {
        const auto t = Clock::now();
        ModelEvalOptions opts;
        opts.timeout = timeout;
        opts.wrong_models = config_.wrong_models;
        auto eval = evaluate_model_based(solver_, normalized, golds(l), b.instances, b.output_preds,
                                         b.has_optimization, opts);
        cell.model_seconds = since(t);
        cell.model_based = eval.scores;
        json inst = json::array();
        bool timed_out = false;
        for (const auto& r : eval.instances) {
            inst.push_back({{"instance", r.instance}, {"status", r.status}, {"gm", r.gm}, {"cgm", r.cgm}, {"wm", r.wm}});
            timed_out = timed_out || r.status == "timeout";
        }
        record["instances"] = inst;
        if (eval.partial) {
            cell.failure_tag = timed_out ? FailureTag::timeout : FailureTag::partial;
        }
    }
    if (config_.metrics.count(Metric::test_suite)) {
        const auto t = Clock::now();
        auto sr = run_suite(solver_, normalized, b.suite, b.suite_context(timeout));
        cell.suite_seconds = since(t);
        cell.suite_accuracy = sr.accuracy;
        json cases = json::array();
        for (const auto& c : sr.cases) {
            json jc = {{"name", c.name}, {"verdict", c.verdict == Verdict::passed   ? "passed"
                                                     : c.verdict == Verdict::failed ? "failed"
                                                                                    : "errored"}};
            if (!c.reasons.empty()) {
                jc["reasons"] = c.reasons;
            }
            cases.push_back(jc);
        }
        record["suite"] = cases;
    }
    return finish();
}

std::vector<CellResult> Pipeline::run() {
    struct Job {
        std::string problem;
        Variant variant;
        int run;
    };
    std::vector<Job> jobs;
    for (const auto& p : config_.problems) {
        (void)loaded(p);
        for (auto v : config_.variants) {
            for (int r = 1; r <= config_.runs_per_cell; ++r) {
                jobs.push_back({p, v, r});
            }
        }
    }
    std::vector<std::optional<CellResult>> results(jobs.size());
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    auto worker = [&] {
        while (!cancel_requested()) {
            const auto i = next.fetch_add(1);
            if (i >= jobs.size()) {
                return;
            }
            try {
                results[i] = run_cell(jobs[i].problem, jobs[i].variant, jobs[i].run);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) {
                    first_error = std::current_exception();
                }
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        const auto n = std::min<std::size_t>(static_cast<std::size_t>(config_.workers), jobs.size());
        for (std::size_t i = 1; i < n; ++i) {
            pool.emplace_back(worker);
        }
        worker();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
    std::vector<CellResult> out;
    for (auto& r : results) {
        if (r) {
            out.push_back(std::move(*r));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Reports

std::string sanitize_component(std::string_view name) {
    std::string out;
    for (char c : name) {
        const bool keep = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
        out += keep ? c : '_';
    }
    if (out.empty() || out == "." || out == "..") {
        out = "model";
    }
    return out;
}

std::string format_number(double v) {
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(6) << v;
    auto s = ss.str();
    while (s.back() == '0') {
        s.pop_back();
    }
    if (s.back() == '.') {
        s.pop_back();
    }
    return s == "-0" ? "0" : s;
}

void write_reports(const fs::path& dir, const std::vector<CellResult>& cells, const AggregateResult& agg) {
    auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
    std::vector<const CellResult*> sorted;
    for (const auto& c : cells) {
        sorted.push_back(&c);
    }
    std::sort(sorted.begin(), sorted.end(), [](const CellResult* a, const CellResult* b) {
        return std::tie(a->problem, a->variant, a->run_index) < std::tie(b->problem, b->variant, b->run_index);
    });

    std::ostringstream cs;
    cs << "model,problem,variant,run,syntactic,f1,precision,recall,gm,cgm,wm,suite_accuracy,failure_tag,artifacts\n";
    std::ostringstream ts;
    ts << "model,problem,variant,run,model_based_seconds,test_suite_seconds,total_seconds\n";
    for (const auto* c : sorted) {
        const auto& mb = c->model_based;
        auto rel = fs::relative(c->artifacts, dir).generic_string();
        cs << csv_field(agg.model) << ',' << c->problem << ',' << to_string(c->variant) << ',' << c->run_index << ','
           << (c->syntactic_ok ? 1 : 0) << ',' << (mb ? format_number(mb->f1) : "") << ','
           << (mb ? format_number(mb->precision) : "") << ',' << (mb ? format_number(mb->recall) : "") << ','
           << (mb ? std::to_string(mb->gm_count) : "") << ',' << (mb ? std::to_string(mb->cgm_count) : "") << ','
           << (mb ? std::to_string(mb->wm_count) : "") << ',' << opt(c->suite_accuracy) << ','
           << (c->failure_tag ? std::string(to_string(*c->failure_tag)) : "") << ',' << csv_field(rel) << '\n';
        ts << csv_field(agg.model) << ',' << c->problem << ',' << to_string(c->variant) << ',' << c->run_index << ','
           << format_number(c->model_seconds) << ',' << format_number(c->suite_seconds) << ','
           << format_number(c->total_seconds) << '\n';
    }
    write_text(dir / "cells.csv", cs.str());
    write_text(dir / "timings.csv", ts.str());

    std::ostringstream as;
    as << "model,problem,variant,metric,mean,half_width,n,dropped,flags\n";
    json rows = json::array();
    for (const auto& r : agg.rows) {
        as << csv_field(agg.model) << ',' << r.problem << ',' << to_string(r.variant) << ',' << r.metric << ','
           << format_number(r.mean) << ',' << format_number(r.half_width) << ',' << r.n << ',' << r.dropped << ','
           << r.flags << '\n';
        rows.push_back({{"problem", r.problem},
                        {"variant", to_string(r.variant)},
                        {"metric", r.metric},
                        {"mean", format_number(r.mean)},
                        {"half_width", format_number(r.half_width)},
                        {"n", r.n},
                        {"dropped", r.dropped},
                        {"flags", r.flags}});
    }
    write_text(dir / "aggregates.csv", as.str());

    std::map<std::string, std::size_t> tags;
    for (const auto& c : cells) {
        if (c.failure_tag) {
            ++tags[std::string(to_string(*c.failure_tag))];
        }
    }
    json summary = {{"model", agg.model}, {"cells", cells.size()}, {"failure_tags", tags}, {"aggregates", rows}};
    try {
        summary["pearson_model_based_test_suite"] = format_number(correlate_metrics(cells));
    } catch (const DegenerateVariance& e) {
        summary["pearson_model_based_test_suite"] = nullptr;
        summary["pearson_note"] = e.what();
    }
    write_text(dir / "summary.json", summary.dump(2) + "\n");
}

} // namespace aspbench
