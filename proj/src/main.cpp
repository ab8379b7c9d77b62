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

#include <aspbench/dataset.hpp>
#include <aspbench/error.hpp>
#include <aspbench/fixtures.hpp>
#include <aspbench/llm.hpp>
#include <aspbench/model_eval.hpp>
#include <aspbench/mutation.hpp>
#include <aspbench/pipeline.hpp>
#include <aspbench/process.hpp>
#include <aspbench/report.hpp>
#include <aspbench/solver.hpp>
#include <aspbench/suite.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace aspbench;

namespace {

enum Exit { ok = 0, survivors = 1, usage = 2, dataset = 3, solver = 4, endpoint = 5, internal = 6, interrupted = 130 };

struct Globals {
    std::string dataset;
    std::string solver;
    std::string out = "out";
    int workers = 1;
    double timeout = 0.0;
    std::uint64_t seed = 1;
};

int exit_code(ErrorClass c) {
    switch (c) {
    case ErrorClass::usage: return usage;
    case ErrorClass::dataset: return dataset;
    case ErrorClass::solver: return solver;
    case ErrorClass::endpoint: return endpoint;
    case ErrorClass::internal: return internal;
    }
    return internal;
}

fs::path dataset_root(const Globals& g) { return g.dataset.empty() ? default_dataset_root() : fs::path(g.dataset); }

std::optional<double> timeout_override(const Globals& g) {
    return g.timeout > 0 ? std::optional<double>(g.timeout) : std::nullopt;
}

Solver make_solver(const Globals& g) {
    auto cfg = resolve_solver(g.solver);
    if (g.timeout > 0) {
        cfg.default_timeout = g.timeout;
    }
    return Solver(cfg);
}

std::set<Metric> parse_metrics(const std::string& text) {
    if (text == "both") {
        return {Metric::model_based, Metric::test_suite};
    }
    return {parse_metric(text)};
}

void write_json(const fs::path& path, const nlohmann::ordered_json& j) {
    fs::create_directories(path.parent_path());
    std::ofstream(path) << j.dump(2) << "\n";
}

std::string fmt(double v) { return format_number(v); }

extern "C" void on_sigint(int) { request_cancel(); }

// ---------------------------------------------------------------------------

int cmd_list(const Globals& g) {
    std::vector<std::string> warnings;
    for (const auto& name : list_problems(dataset_root(g), &warnings)) {
        std::cout << name << "\n";
    }
    for (const auto& w : warnings) {
        std::cerr << "warning: " << w << "\n";
    }
    return ok;
}

int cmd_check(const Globals& g, std::vector<std::string> problems) {
    const auto root = dataset_root(g);
    if (problems.empty()) {
        problems = list_problems(root);
    }
    auto solver = make_solver(g);
    int rc = ok;
    for (const auto& p : problems) {
        auto b = load_bundle(root / p);
        if (auto t = timeout_override(g)) {
            b.per_problem_timeout = *t;
        }
        try {
            auto st = self_test(solver, b);
            std::cout << p << ": f1 " << fmt(st.scores.f1) << ", suite accuracy " << fmt(st.suite_accuracy) << ", "
                      << st.scores.gm_count << " gold models over " << b.instances.size() << " instances ("
                      << fmt(st.seconds) << " s)\n";
        } catch (const GoldSelfTestFailure& e) {
            std::cout << p << ": FAILED " << e.what() << "\n";
            rc = dataset;
        }
    }
    return rc;
}

struct EvaluateArgs {
    std::string problem;
    std::string candidate;
    std::string metric = "both";
    std::string mapping;
    bool keep_facts = false;
};

int cmd_evaluate(const Globals& g, const EvaluateArgs& a) {
    const auto b = load_bundle(dataset_root(g) / a.problem);
    Program candidate;
    std::optional<std::string> lex_error;
    try {
        candidate = Program::parse(read_file(a.candidate));
    } catch (const LexError& e) {
        lex_error = e.what();
    }
    if (!a.mapping.empty()) {
        auto m = parse_mapping_reply(a.mapping);
        if (m.kind != MatchResult::Kind::mapping) {
            throw Error(ErrorClass::usage, "--mapping is not a predicate mapping");
        }
        candidate = rename_predicates(candidate, m.mapping);
    }
    if (!a.keep_facts) {
        candidate = strip_input_facts(candidate, b.input_preds);
    }
    candidate = drop_show_directives(candidate);

    auto solver = make_solver(g);
    const double timeout = timeout_override(g).value_or(b.per_problem_timeout);
    nlohmann::ordered_json report = {{"problem", a.problem}, {"candidate", a.candidate}};
    auto chk = lex_error ? SyntaxCheck{false, SolveStatus::syntax_error, *lex_error}
                         : solver.check_syntax(candidate, timeout);
    report["syntactic_ok"] = chk.ok;
    if (!chk.ok) {
        report["detail"] = chk.detail;
        std::cout << "syntax: " << to_string(chk.status) << "\n" << chk.detail << "\n";
    }
    const auto metrics = parse_metrics(a.metric);
    if (metrics.count(Metric::model_based)) {
        ModelEvalOptions opts;
        opts.timeout = timeout;
        auto r = chk.ok ? evaluate_model_based(solver, candidate, b.gold, b.instances, b.output_preds, opts)
                        : ModelEvalResult{};
        nlohmann::ordered_json inst = nlohmann::ordered_json::array();
        for (const auto& i : r.instances) {
            inst.push_back({{"instance", i.instance}, {"status", i.status}, {"gm", i.gm}, {"cgm", i.cgm}, {"wm", i.wm}});
            std::cout << "  " << i.instance << ": " << i.status << " gm=" << i.gm << " cgm=" << i.cgm
                      << " wm=" << i.wm << "\n";
        }
        report["model_based"] = {{"precision", r.scores.precision}, {"recall", r.scores.recall},
                                 {"f1", r.scores.f1},               {"partial", r.partial},
                                 {"instances", inst}};
        std::cout << "model-based: precision " << fmt(r.scores.precision) << " recall " << fmt(r.scores.recall)
                  << " f1 " << fmt(r.scores.f1) << (r.partial ? " (partial)" : "") << "\n";
    }
    if (metrics.count(Metric::test_suite)) {
        auto r = chk.ok ? run_suite(solver, candidate, b.suite, b.suite_context(timeout)) : SuiteResult{};
        nlohmann::ordered_json cases = nlohmann::ordered_json::array();
        for (const auto& c : r.cases) {
            const char* v = c.verdict == Verdict::passed ? "passed" : c.verdict == Verdict::failed ? "failed" : "errored";
            cases.push_back({{"name", c.name}, {"verdict", v}, {"reasons", c.reasons}});
            std::cout << "  " << c.name << ": " << v;
            for (const auto& reason : c.reasons) {
                std::cout << " [" << reason << "]";
            }
            std::cout << "\n";
        }
        report["test_suite"] = {{"accuracy", r.accuracy}, {"cases", cases}};
        std::cout << "test-suite: accuracy " << fmt(r.accuracy) << " (" << r.passed << "/" << r.cases.size()
                  << ")\n";
    }
    const auto path = fs::path(g.out) / "evaluate" / (a.problem + ".json");
    write_json(path, report);
    std::cout << "report: " << path.string() << "\n";
    return ok;
}

struct ValidateArgs {
    std::string problem;
    std::string suite;
    std::size_t mutants = 15;
    bool with_f1 = false;
};

int cmd_validate(const Globals& g, const ValidateArgs& a) {
    const auto b = load_bundle(dataset_root(g) / a.problem);
    auto suite = a.suite.empty() ? b.suite : parse_suite(read_file(a.suite));
    auto solver = make_solver(g);
    const double timeout = timeout_override(g).value_or(b.per_problem_timeout);
    auto mutants = generate_mutants(solver, b.gold, a.mutants, g.seed);
    ValidationOptions opts;
    opts.adjudicated = b.manifest.survivors;
    opts.timeout = timeout;
    if (a.with_f1) {
        opts.instances = b.instances;
        opts.outputs = b.output_preds;
        opts.weak_mode = b.has_optimization;
    }
    auto report = validate_suite(solver, b.gold, suite, b.suite_context(timeout), mutants, opts);
    report.problem = a.problem;
    for (const auto& m : report.mutants) {
        std::cout << "mutant " << m.id << " " << to_string(m.lineage.kind) << " rule " << m.lineage.rule << " ("
                  << m.lineage.detail << "): accuracy " << fmt(m.accuracy);
        if (m.f1) {
            std::cout << " f1 " << fmt(*m.f1);
        }
        if (m.survivor) {
            std::cout << (m.adjudicated ? " SURVIVOR (adjudicated equivalent)" : " SURVIVOR") << " " << m.source_hash;
        }
        std::cout << "\n";
    }
    std::cout << a.problem << ": " << report.survivors << " unadjudicated survivor(s) out of " << report.mutants.size()
              << " mutants\n";
    const auto path = fs::path(g.out) / "validate" / (a.problem + ".json");
    fs::create_directories(path.parent_path());
    std::ofstream(path) << report.to_json() << "\n";
    return report.passed() ? ok : survivors;
}

struct PipelineArgs {
    std::vector<std::string> problems;
    std::vector<std::string> variants{"original", "paraphrase1", "paraphrase2"};
    int runs = 5;
    std::string metric = "both";
    std::string mode = "replay";
    std::string fixtures;
    std::string model;
    std::string matcher_model;
    std::string paraphraser_model;
    std::string base_url = "https://api.openai.com/v1";
    std::string api_key_env = "OPENAI_API_KEY";
    double temperature = 0.7;
    std::string cache;
    std::vector<std::string> figures;
    std::string wrong_models = "optimal";
};

int cmd_pipeline(const Globals& g, const PipelineArgs& a) {
    RunConfig cfg;
    cfg.problems = a.problems;
    cfg.variants.clear();
    for (const auto& v : a.variants) {
        cfg.variants.push_back(parse_variant(v));
    }
    cfg.runs_per_cell = a.runs;
    cfg.metrics = parse_metrics(a.metric);
    cfg.seed = g.seed;
    cfg.timeout = timeout_override(g);
    cfg.workers = g.workers;
    cfg.dataset_root = dataset_root(g);
    cfg.out_dir = g.out;
    cfg.wrong_models = a.wrong_models == "all-stable" ? WrongModelMode::all_stable : WrongModelMode::optimal;
    std::set<FigureKind> kinds;
    for (const auto& f : a.figures) {
        kinds.insert(parse_figure_kind(f));
    }
    if (kinds.empty()) {
        kinds = all_figure_kinds();
    }

    const bool replay = a.mode == "replay";
    auto endpoint = [&](const std::string& model, const std::string& fallback) {
        LlmEndpoint e;
        e.kind = replay ? LlmEndpoint::Kind::replay : LlmEndpoint::Kind::live;
        e.model_name = model.empty() ? fallback : model;
        e.base_url = a.base_url;
        e.api_key_env = a.api_key_env;
        e.temperature = a.temperature;
        e.fixtures_dir = a.fixtures.empty() ? cfg.dataset_root.parent_path() / "fixtures" / "replay" : fs::path(a.fixtures);
        return e;
    };
    if (!replay && a.model.empty()) {
        throw Error(ErrorClass::usage, "--model is required in live mode");
    }
    cfg.generator = endpoint(a.model, fixture_generator_model);
    cfg.matcher = endpoint(a.matcher_model, replay ? fixture_matcher_model : cfg.generator.model_name);
    cfg.paraphraser = endpoint(a.paraphraser_model, cfg.matcher.model_name);
    const fs::path cache = a.cache.empty() ? (replay ? fs::path() : fs::path(g.out) / "cache") : fs::path(a.cache);
    cfg.cache_dir = cache;

    auto solver = make_solver(g);
    auto generator = std::make_shared<Gateway>(cfg.generator, cache);
    auto matcher = std::make_shared<Gateway>(cfg.matcher, cache);
    auto paraphraser = std::make_shared<Gateway>(cfg.paraphraser, cache);
    Pipeline pipeline(cfg, solver, generator, matcher, paraphraser);

    std::signal(SIGINT, on_sigint);
    auto cells = pipeline.run();
    std::signal(SIGINT, SIG_DFL);

    const auto model = sanitize_component(cfg.generator.model_name);
    auto agg = aggregate(cells, model);
    write_reports(g.out, cells, agg);
    if (!agg.rows.empty()) {
        render(agg, kinds, g.out);
    }
    std::size_t failed = 0;
    std::size_t dropped = 0;
    for (const auto& c : cells) {
        failed += c.failure_tag ? 1 : 0;
        dropped += c.dropped() ? 1 : 0;
    }
    std::cout << cells.size() << " cells (" << failed << " with a failure tag), reports in " << g.out << "\n";
    if (cancel_requested()) {
        std::cerr << "interrupted: partial reports written\n";
        return interrupted;
    }
    if (!cells.empty() && dropped == cells.size()) {
        std::cerr << "error: every cell failed at the LLM endpoint\n";
        return Exit::endpoint;
    }
    return cells.empty() ? internal : ok;
}

struct FixtureArgs {
    std::string out;
    int runs = 5;
    std::vector<std::string> problems;
};

int cmd_make_fixtures(const Globals& g, const FixtureArgs& a) {
    FixtureOptions o;
    o.dataset_root = dataset_root(g);
    o.out_dir = a.out.empty() ? o.dataset_root.parent_path() / "fixtures" / "replay" : fs::path(a.out);
    o.problems = a.problems;
    o.runs = a.runs;
    o.seed = g.seed;
    auto solver = make_solver(g);
    const auto n = make_replay_fixtures(solver, o);
    std::cout << n << " fixture records written to " << o.out_dir.string() << "\n";
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Benchmark harness for generated answer set programs"};
    app.set_config("--config", "", "INI or TOML file with option defaults; flags override it");
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--dataset", g.dataset, "Problem bundle root (default: $ASPBENCH_DATASET or the shipped problems/)");
    app.add_option("--solver", g.solver, "clingo executable (default: $ASPBENCH_SOLVER, bundled launcher, PATH)");
    app.add_option("--out", g.out, "Output directory")->capture_default_str();
    app.add_option("--workers", g.workers, "Concurrent pipeline cells")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--timeout", g.timeout, "Per solver call timeout in seconds (default: per-problem manifest)")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", g.seed, "Seed for mutant generation")->capture_default_str();

    auto* list = app.add_subcommand("list", "List the problem bundles");

    std::vector<std::string> check_problems;
    auto* check = app.add_subcommand("check", "Load bundles and run the gold self-test");
    check->add_option("--problem", check_problems, "Bundle name (repeatable; default: all)");

    EvaluateArgs ev;
    auto* evaluate = app.add_subcommand("evaluate", "Score one candidate program against a bundle");
    evaluate->add_option("--problem", ev.problem, "Bundle name")->required();
    evaluate->add_option("--candidate", ev.candidate, "Candidate program file")->required()->check(CLI::ExistingFile);
    evaluate->add_option("--metric", ev.metric, "model-based, test-suite or both")
        ->check(CLI::IsMember({"model-based", "test-suite", "both"}))
        ->capture_default_str();
    evaluate->add_option("--mapping", ev.mapping, "Gold-to-candidate predicate mapping, e.g. \"{'node':'vertex'}\"");
    evaluate->add_flag("--keep-facts", ev.keep_facts, "Keep candidate facts over input predicates");

    ValidateArgs va;
    auto* validate = app.add_subcommand("validate", "Run the bundle suite against seeded gold mutants");
    validate->add_option("--problem", va.problem, "Bundle name")->required();
    validate->add_option("--suite", va.suite, "Suite file overriding the bundle's tests.suite.lp")
        ->check(CLI::ExistingFile);
    validate->add_option("--mutants", va.mutants, "Number of mutants")->check(CLI::PositiveNumber)->capture_default_str();
    validate->add_flag("--f1", va.with_f1, "Also report the model-based F1 of each mutant");

    PipelineArgs pa;
    auto* pipeline = app.add_subcommand("pipeline", "Generate, match, normalize and evaluate the full grid");
    pipeline->add_option("--problems", pa.problems, "Bundle names (default: all)")->delimiter(',');
    pipeline->add_option("--variants", pa.variants, "Description variants")
        ->delimiter(',')
        ->check(CLI::IsMember({"original", "paraphrase1", "paraphrase2"}))
        ->capture_default_str();
    pipeline->add_option("--runs", pa.runs, "Runs per cell")->check(CLI::PositiveNumber)->capture_default_str();
    pipeline->add_option("--metric", pa.metric, "model-based, test-suite or both")
        ->check(CLI::IsMember({"model-based", "test-suite", "both"}))
        ->capture_default_str();
    pipeline->add_option("--mode", pa.mode, "live or replay")
        ->check(CLI::IsMember({"live", "replay"}))
        ->capture_default_str();
    pipeline->add_option("--fixtures", pa.fixtures, "Replay fixture directory (default: fixtures/replay)");
    pipeline->add_option("--model", pa.model, "Generator model name");
    pipeline->add_option("--matcher-model", pa.matcher_model, "Predicate matcher model name");
    pipeline->add_option("--paraphraser-model", pa.paraphraser_model, "Paraphraser model name");
    pipeline->add_option("--base-url", pa.base_url, "Chat completions base URL")->capture_default_str();
    pipeline->add_option("--api-key-env", pa.api_key_env, "Environment variable holding the API key")
        ->capture_default_str();
    pipeline->add_option("--temperature", pa.temperature, "Sampling temperature")->capture_default_str();
    pipeline->add_option("--cache", pa.cache, "Response cache directory (default: <out>/cache in live mode)");
    pipeline->add_option("--figures", pa.figures, "Figure kinds to render (default: all)")->delimiter(',');
    pipeline->add_option("--wrong-models", pa.wrong_models, "optimal or all-stable")
        ->check(CLI::IsMember({"optimal", "all-stable"}))
        ->capture_default_str();

    FixtureArgs fa;
    auto* fixtures = app.add_subcommand("make-fixtures", "Write synthetic replay fixtures for the full grid");
    fixtures->add_option("--fixtures", fa.out, "Output directory (default: fixtures/replay)");
    fixtures->add_option("--runs", fa.runs, "Runs per cell")->check(CLI::PositiveNumber)->capture_default_str();
    fixtures->add_option("--problems", fa.problems, "Bundle names (default: all)")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? ok : usage;
    }

    try {
        if (*list) {
            return cmd_list(g);
        }
        if (*check) {
            return cmd_check(g, check_problems);
        }
        if (*evaluate) {
            return cmd_evaluate(g, ev);
        }
        if (*validate) {
            return cmd_validate(g, va);
        }
        if (*pipeline) {
            return cmd_pipeline(g, pa);
        }
        if (*fixtures) {
            return cmd_make_fixtures(g, fa);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.error_class());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return internal;
    }
    return usage;
}
