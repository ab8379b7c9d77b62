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

#include <aspbench/solver.hpp>

#include <aspbench/error.hpp>
#include <aspbench/process.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace aspbench {
namespace {

using nlohmann::json;

constexpr std::size_t excerpt_limit = 4000;

std::string excerpt(const std::string& text) {
    if (text.size() <= excerpt_limit) {
        return text;
    }
    return text.substr(0, excerpt_limit) + "\n[...]";
}

bool has_error_text(const std::string& err) {
    return err.find(": error:") != std::string::npos || err.find("*** ERROR") != std::string::npos;
}

std::vector<std::string> split_words(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> out;
    for (std::string w; in >> w;) {
        out.push_back(w);
    }
    return out;
}

std::string assemble(const std::vector<Program>& parts, const std::optional<SignatureSet>& project) {
    std::string src;
    for (const auto& p : parts) {
        src += p.str();
        src += '\n';
    }
    if (project) {
        for (const auto& sig : *project) {
            src += "#show " + sig.str() + ".\n";
        }
    }
    return src;
}

bool works(const std::vector<std::string>& command) {
    if (command.empty() || find_in_path(command.front()).empty()) {
        return false;
    }
    auto args = command;
    args.emplace_back("--version");
    auto res = run_process(args, {}, std::chrono::seconds(30));
    return !res.spawn_failed && res.exit_code == 0 && res.out.find("clingo") != std::string::npos;
}

} // namespace

std::string_view to_string(SolveStatus status) noexcept {
    switch (status) {
        case SolveStatus::sat: return "sat";
        case SolveStatus::unsat: return "unsat";
        case SolveStatus::syntax_error: return "syntax_error";
        case SolveStatus::timeout: return "timeout";
        case SolveStatus::solver_crash: return "solver_crash";
    }
    return "solver_crash";
}

SolverConfig resolve_solver(const std::string& explicit_command) {
    SolverConfig cfg;
    if (!explicit_command.empty()) {
        cfg.command = split_words(explicit_command);
        if (!works(cfg.command)) {
            throw SolverUnavailable("solver command does not run: " + explicit_command);
        }
        return cfg;
    }
    if (const char* env = std::getenv("ASPBENCH_SOLVER"); env != nullptr && *env != '\0') {
        cfg.command = split_words(env);
        if (!works(cfg.command)) {
            throw SolverUnavailable(std::string("ASPBENCH_SOLVER does not run: ") + env);
        }
        return cfg;
    }
    std::vector<std::vector<std::string>> fallbacks;
#ifdef ASPBENCH_DEFAULT_SOLVER
    fallbacks.push_back({ASPBENCH_DEFAULT_SOLVER});
#endif
    fallbacks.push_back({"clingo"});
    fallbacks.push_back({"python3", "-m", "clingo"});
    for (auto& cmd : fallbacks) {
        if (works(cmd)) {
            cfg.command = std::move(cmd);
            return cfg;
        }
    }
    throw SolverUnavailable("no clingo executable found; set --solver or ASPBENCH_SOLVER");
}

Solver::Solver(SolverConfig config) : config_(std::move(config)) {
    if (config_.command.empty()) {
        throw SolverUnavailable("empty solver command");
    }
}

std::string Solver::version() const {
    auto args = config_.command;
    args.emplace_back("--version");
    auto res = run_process(args, {}, std::chrono::seconds(30));
    if (res.spawn_failed || res.exit_code != 0) {
        return {};
    }
    return res.out.substr(0, res.out.find('\n'));
}

SolveResult parse_solver_output(const std::string& json_text, const std::string& stderr_text, SolveMode mode,
                                const std::optional<SignatureSet>& project) {
    SolveResult res;
    res.stderr_excerpt = excerpt(stderr_text);
    json doc = json::parse(json_text, nullptr, false);
    const bool error_text = has_error_text(stderr_text);
    if (doc.is_discarded() || !doc.is_object()) {
        res.status = error_text ? SolveStatus::syntax_error : SolveStatus::solver_crash;
        return res;
    }
    const std::string result = doc.value("Result", "UNKNOWN");
    if (doc.value("TIME LIMIT", 0) != 0 || doc.value("INTERRUPTED", 0) != 0) {
        res.status = SolveStatus::timeout;
        return res;
    }
    if (error_text) {
        res.status = SolveStatus::syntax_error;
        return res;
    }
    if (result == "UNSATISFIABLE") {
        res.status = SolveStatus::unsat;
        return res;
    }
    if (result != "SATISFIABLE" && result != "OPTIMUM FOUND") {
        res.status = SolveStatus::solver_crash;
        return res;
    }

    struct Witness {
        AnswerSet model;
        std::vector<long long> costs;
    };
    std::vector<Witness> witnesses;
    if (auto call = doc.find("Call"); call != doc.end() && call->is_array()) {
        for (const auto& c : *call) {
            auto ws = c.find("Witnesses");
            if (ws == c.end()) {
                continue;
            }
            for (const auto& w : *ws) {
                std::vector<GroundAtom> atoms;
                for (const auto& v : w.value("Value", json::array())) {
                    atoms.push_back(GroundAtom::parse(v.get<std::string>()));
                }
                if (project) {
                    atoms = project_atoms(atoms, *project);
                }
                Witness wit{AnswerSet::from_atoms(std::move(atoms)), {}};
                for (const auto& cost : w.value("Costs", json::array())) {
                    wit.costs.push_back(cost.get<long long>());
                }
                witnesses.push_back(std::move(wit));
            }
        }
    }
    const auto& models = doc.value("Models", json::object());
    res.optimum_proven = models.value("Optimum", "no") == "yes";
    if (auto c = models.find("Costs"); c != models.end()) {
        std::vector<long long> best;
        for (const auto& v : *c) {
            best.push_back(v.get<long long>());
        }
        res.costs = best;
    }
    if (witnesses.empty()) {
        res.status = SolveStatus::solver_crash;
        res.stderr_excerpt = excerpt("satisfiable result without witnesses\n" + stderr_text);
        return res;
    }

    std::size_t first = 0;
    if (mode == SolveMode::one_model) {
        first = witnesses.size() - 1;
    } else if (mode == SolveMode::all_optimal_models && models.contains("Optimal")) {
        auto optimal = models.value("Optimal", std::size_t{0});
        first = witnesses.size() - std::min(optimal, witnesses.size());
    }
    std::vector<Witness> kept(std::make_move_iterator(witnesses.begin() + static_cast<std::ptrdiff_t>(first)),
                              std::make_move_iterator(witnesses.end()));
    std::sort(kept.begin(), kept.end(),
              [](const Witness& a, const Witness& b) { return a.model.atoms < b.model.atoms; });
    kept.erase(std::unique(kept.begin(), kept.end(),
                           [](const Witness& a, const Witness& b) { return a.model.atoms == b.model.atoms; }),
               kept.end());
    for (auto& w : kept) {
        res.models.push_back(std::move(w.model));
        res.model_costs.push_back(std::move(w.costs));
    }
    res.status = SolveStatus::sat;
    return res;
}

SolveResult Solver::solve(const SolveRequest& request) const {
    if (request.timeout <= 0) {
        throw Error(ErrorClass::usage, "solver timeout must be positive");
    }
    if (request.mode == SolveMode::check_syntax) {
        SolveResult res;
        std::string src;
        for (const auto& p : request.program_parts) {
            src += p.str();
            src += '\n';
        }
        auto chk = check_syntax(src, request.timeout);
        res.status = chk.status;
        res.stderr_excerpt = chk.detail;
        return res;
    }
    auto args = config_.command;
    args.emplace_back("--outf=2");
    args.emplace_back("--time-limit=" + std::to_string(static_cast<long>(std::ceil(request.timeout))));
    switch (request.mode) {
        case SolveMode::one_model:
            if (std::any_of(request.program_parts.begin(), request.program_parts.end(),
                            [](const Program& p) { return p.has_optimization(); })) {
                args.emplace_back("--models=0");
                args.emplace_back("--opt-mode=opt");
            } else {
                args.emplace_back("--models=1");
            }
            break;
        case SolveMode::all_models:
            args.emplace_back("--models=0");
            args.emplace_back("--opt-mode=ignore");
            break;
        case SolveMode::all_optimal_models:
            args.emplace_back("--models=0");
            args.emplace_back("--opt-mode=optN");
            break;
        case SolveMode::check_syntax:
            break;
    }
    if (request.project) {
        args.emplace_back("--project=show");
    }
    args.emplace_back("-");
    const auto src = assemble(request.program_parts, request.project);
    const auto hard = std::chrono::milliseconds(static_cast<long long>(request.timeout * 1000.0) + 2000);
    auto proc = run_process(args, src, hard);
    if (proc.spawn_failed) {
        throw SolverUnavailable("cannot start solver '" + config_.command.front() + "': " + proc.err);
    }
    SolveResult res;
    if (proc.timed_out || proc.cancelled) {
        res.status = SolveStatus::timeout;
        res.stderr_excerpt = proc.cancelled ? "cancelled" : excerpt(proc.err);
    } else if (proc.term_signal != 0) {
        res.status = SolveStatus::solver_crash;
        res.stderr_excerpt = "solver killed by signal " + std::to_string(proc.term_signal) + "\n" + excerpt(proc.err);
    } else {
        res = parse_solver_output(proc.out, proc.err, request.mode, request.project);
    }
    res.seconds = proc.seconds;
    return res;
}

SyntaxCheck Solver::check_syntax(const std::string& source, double timeout) const {
    auto args = config_.command;
    args.emplace_back("--mode=gringo");
    args.emplace_back("--text");
    args.emplace_back("-");
    const auto hard = std::chrono::milliseconds(static_cast<long long>(timeout * 1000.0));
    auto proc = run_process(args, source, hard);
    if (proc.spawn_failed) {
        throw SolverUnavailable("cannot start solver '" + config_.command.front() + "': " + proc.err);
    }
    SyntaxCheck chk;
    chk.detail = excerpt(proc.err);
    if (proc.timed_out || proc.cancelled) {
        chk.status = SolveStatus::timeout;
    } else if (has_error_text(proc.err) || proc.exit_code == 65) {
        chk.status = SolveStatus::syntax_error;
    } else if (proc.term_signal != 0 || (proc.exit_code != 0 && proc.exit_code != 10 && proc.exit_code != 20 &&
                                         proc.exit_code != 30)) {
        chk.status = SolveStatus::solver_crash;
    } else {
        chk.ok = true;
        chk.status = SolveStatus::sat;
        chk.detail.clear();
    }
    return chk;
}

SyntaxCheck Solver::check_syntax(const Program& program, double timeout) const {
    return check_syntax(program.str(), timeout);
}

SolveResult Solver::solve_all(const std::vector<Program>& parts, double timeout,
                              const std::optional<SignatureSet>& project) const {
    return solve({parts, SolveMode::all_optimal_models, timeout, project});
}

SolveResult Solver::solve_once(const std::vector<Program>& parts, double timeout,
                               const std::optional<SignatureSet>& project) const {
    return solve({parts, SolveMode::one_model, timeout, project});
}

} // namespace aspbench
