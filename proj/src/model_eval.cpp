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

#include <aspbench/model_eval.hpp>

#include <aspbench/error.hpp>

#include <algorithm>

namespace aspbench {
namespace {

std::string variables(int arity) {
    static const char* names[] = {"X", "Y", "Z", "W"};
    std::string out;
    for (int i = 0; i < arity; ++i) {
        if (i > 0) {
            out += ',';
        }
        out += i < 4 ? std::string(names[i]) : "V" + std::to_string(i + 1);
    }
    return out;
}

std::string pattern(const PredicateSignature& sig) {
    return sig.arity == 0 ? sig.name : sig.name + "(" + variables(sig.arity) + ")";
}

std::vector<GroundAtom> projected(const AnswerSet& m, const SignatureSet& outputs) {
    return project_atoms(m.atoms, outputs);
}

std::set<std::string> names_of(const Program& p, const SignatureSet& outputs) {
    auto taken = p.predicate_names();
    for (const auto& s : outputs) {
        taken.insert(s.name);
    }
    return taken;
}

bool prefix_zero_suffix_equal(const std::vector<long long>& costs, const std::vector<long long>& optimum) {
    if (costs.size() < optimum.size()) {
        return false;
    }
    const auto split = costs.size() - optimum.size();
    return std::all_of(costs.begin(), costs.begin() + static_cast<std::ptrdiff_t>(split),
                       [](long long c) { return c == 0; }) &&
           std::equal(optimum.begin(), optimum.end(), costs.begin() + static_cast<std::ptrdiff_t>(split));
}

} // namespace

Scores compute_scores(std::size_t gm, std::size_t cgm, std::size_t wm) {
    Scores s;
    s.gm_count = gm;
    s.cgm_count = cgm;
    s.wm_count = wm;
    s.tpm_count = cgm + wm;
    s.recall = gm == 0 ? 0.0 : static_cast<double>(cgm) / static_cast<double>(gm);
    s.precision = s.tpm_count == 0 ? 0.0 : static_cast<double>(cgm) / static_cast<double>(s.tpm_count);
    // 2PR/(P+R) with P = c/t and R = c/g reduces to 2c/(g+t)
    s.f1 = cgm == 0 ? 0.0 : 2.0 * static_cast<double>(cgm) / static_cast<double>(gm + s.tpm_count);
    return s;
}

Scores compute_scores(const ModelSets& ms) { return compute_scores(ms.gm.size(), ms.cgm.size(), ms.wm.size()); }

Program create_model_constraints(const AnswerSet& m_g, const std::set<GroundAtom>& base, const SignatureSet& outputs,
                                 bool weak_mode, int level) {
    const auto in_model = projected(m_g, outputs);
    if (base.empty() && !in_model.empty()) {
        throw EmptyBase("steering base is empty but the gold model is not");
    }
    std::vector<std::string> rules;
    int k = 0;
    auto emit = [&](const GroundAtom& a, bool positive) {
        const std::string body = positive ? "not " + a.text() : a.text();
        if (weak_mode) {
            rules.push_back(":~ " + body + ". [1@" + std::to_string(level) + "," + std::to_string(++k) + "]");
        } else {
            rules.push_back(":- " + body + ".");
        }
    };
    for (const auto& a : in_model) {
        emit(a, true);
    }
    for (const auto& a : base) {
        if (outputs.count(a.signature()) != 0 && !std::binary_search(in_model.begin(), in_model.end(), a)) {
            emit(a, false);
        }
    }
    return Program::from_rules(rules);
}

std::set<GroundAtom> build_complement_base(const std::vector<AnswerSet>& as_g, const SignatureSet& outputs) {
    std::set<GroundAtom> base;
    for (const auto& m : as_g) {
        for (auto& a : projected(m, outputs)) {
            base.insert(std::move(a));
        }
    }
    return base;
}

bool models_match(const AnswerSet& m, const AnswerSet& m_g, const SignatureSet& outputs) {
    return projected(m, outputs) == projected(m_g, outputs);
}

AuxNames AuxNames::avoiding(const std::set<std::string>& taken) {
    for (int i = 0;; ++i) {
        const std::string suffix = i == 0 ? "" : "_" + std::to_string(i);
        AuxNames n;
        for (auto* s : {&n.true_in_gold, &n.mod, &n.true_in_tested, &n.smaller_mg, &n.smaller_mt, &n.steer_base}) {
            *s += suffix;
        }
        if (!taken.count(n.true_in_gold) && !taken.count(n.mod) && !taken.count(n.true_in_tested) &&
            !taken.count(n.smaller_mg) && !taken.count(n.smaller_mt) && !taken.count(n.steer_base)) {
            return n;
        }
    }
}

Program aug_program(const Program& p_t, const std::vector<AnswerSet>& as_g, const SignatureSet& outputs,
                    const std::set<std::string>& taken) {
    auto avoid = names_of(p_t, outputs);
    avoid.insert(taken.begin(), taken.end());
    const auto n = AuxNames::avoiding(avoid);
    std::vector<std::string> rules;
    for (const auto& r : p_t.rules()) {
        rules.push_back(r.text);
    }
    for (std::size_t i = 0; i < as_g.size(); ++i) {
        for (const auto& a : projected(as_g[i], outputs)) {
            rules.push_back(n.true_in_gold + "(" + std::to_string(i + 1) + "," + a.text() + ").");
        }
    }
    rules.push_back(n.mod + "(X) :- " + n.true_in_gold + "(X,_).");
    for (const auto& sig : outputs) {
        rules.push_back(n.true_in_tested + "(" + pattern(sig) + ") :- " + pattern(sig) + ".");
    }
    rules.push_back(n.smaller_mg + "(M) :- " + n.true_in_gold + "(M, X), not " + n.true_in_tested + "(X).");
    rules.push_back(n.smaller_mt + "(M) :- " + n.mod + "(M), " + n.true_in_tested + "(X), not " + n.true_in_gold +
                    "(M, X).");
    rules.push_back(":- " + n.mod + "(M), not " + n.smaller_mg + "(M), not " + n.smaller_mt + "(M).");
    return Program::from_rules(rules);
}

Program closure_guard(const std::set<GroundAtom>& base, const SignatureSet& outputs, bool weak_mode, int level,
                      const AuxNames& names) {
    std::vector<std::string> rules;
    for (const auto& a : base) {
        rules.push_back(names.steer_base + "(" + a.text() + ").");
    }
    for (const auto& sig : outputs) {
        const auto p = pattern(sig);
        const auto body = p + ", not " + names.steer_base + "(" + p + ")";
        if (weak_mode) {
            rules.push_back(":~ " + body + ". [1@" + std::to_string(level) + "," + p + "]");
        } else {
            rules.push_back(":- " + body + ".");
        }
    }
    return Program::from_rules(rules);
}

GoldEnumeration enumerate_gold(const Solver& solver, const Program& p_g, const InstanceInput& instance,
                               const SignatureSet& outputs, double timeout) {
    GoldEnumeration g;
    g.instance = instance.name;
    auto res = solver.solve_all({p_g, instance.facts}, timeout, outputs);
    g.status = res.status;
    g.detail = res.stderr_excerpt;
    for (auto& m : res.models) {
        m.instance = instance.name;
        g.models.push_back(std::move(m));
    }
    return g;
}

InstanceReport evaluate_instance(const Solver& solver, const Program& p_t, const GoldEnumeration& gold,
                                 const InstanceInput& instance, const SignatureSet& outputs, bool weak_mode,
                                 const ModelEvalOptions& options, ModelSets& into) {
    InstanceReport rep;
    rep.instance = instance.name;
    if (gold.status != SolveStatus::sat && gold.status != SolveStatus::unsat) {
        rep.status = "gold_failed";
        rep.detail = std::string(to_string(gold.status)) + ": " + gold.detail;
        return rep;
    }
    ModelSets local;
    local.gm = gold.models;
    rep.gm = local.gm.size();
    auto finish = [&](std::string status, std::string detail = {}) {
        rep.status = std::move(status);
        rep.detail = std::move(detail);
        if (rep.status == "timeout") {
            return rep;
        }
        rep.cgm = local.cgm.size();
        rep.wm = local.wm.size();
        into.gm.insert(into.gm.end(), local.gm.begin(), local.gm.end());
        into.cgm.insert(into.cgm.end(), local.cgm.begin(), local.cgm.end());
        into.wm.insert(into.wm.end(), local.wm.begin(), local.wm.end());
        return rep;
    };
    auto failed = [&](const SolveResult& r) -> std::optional<InstanceReport> {
        if (r.status == SolveStatus::timeout) {
            return finish("timeout", r.stderr_excerpt);
        }
        if (r.status == SolveStatus::syntax_error || r.status == SolveStatus::solver_crash) {
            local.cgm.clear();
            local.wm.clear();
            return finish("candidate_error", std::string(to_string(r.status)) + ": " + r.stderr_excerpt);
        }
        return std::nullopt;
    };

    const bool pt_opt = p_t.has_optimization();
    std::vector<long long> optimum;
    if (pt_opt) {
        auto r = solver.solve_once({p_t, instance.facts}, options.timeout, outputs);
        ++rep.solver_calls;
        if (auto f = failed(r)) {
            return *f;
        }
        if (r.status == SolveStatus::unsat) {
            return finish("ok");
        }
        optimum = r.model_costs.front();
    }

    std::set<std::string> taken = names_of(p_t, outputs);
    for (const auto& n : instance.facts.predicate_names()) {
        taken.insert(n);
    }
    const auto names = AuxNames::avoiding(taken);
    const auto base = build_complement_base(gold.models, outputs);
    const int level = max_weak_level(p_t) + 1;
    const auto guard = closure_guard(base, outputs, weak_mode, level, names);
    for (const auto& m_g : gold.models) {
        const auto c_g = create_model_constraints(m_g, base, outputs, weak_mode, level);
        if (options.on_steering) {
            options.on_steering(c_g);
        }
        auto r = solver.solve_once({p_t, c_g, guard, instance.facts}, options.timeout, outputs);
        ++rep.solver_calls;
        if (auto f = failed(r)) {
            return *f;
        }
        if (r.status != SolveStatus::sat || !models_match(r.models.front(), m_g, outputs)) {
            continue;
        }
        if ((pt_opt || weak_mode) && !prefix_zero_suffix_equal(r.model_costs.front(), optimum)) {
            continue;
        }
        local.cgm.push_back(m_g);
    }

    const auto p_ta = aug_program(p_t, gold.models, outputs, taken);
    const auto mode = pt_opt && options.wrong_models == WrongModelMode::all_stable ? SolveMode::all_models
                                                                                    : SolveMode::all_optimal_models;
    auto r = solver.solve({{p_ta, instance.facts}, mode, options.timeout, outputs});
    ++rep.solver_calls;
    if (auto f = failed(r)) {
        return *f;
    }
    for (std::size_t i = 0; i < r.models.size(); ++i) {
        if (mode == SolveMode::all_optimal_models && pt_opt && r.model_costs[i] != optimum) {
            continue;
        }
        auto m = std::move(r.models[i]);
        m.instance = instance.name;
        local.wm.push_back(std::move(m));
    }
    return finish("ok");
}

ModelEvalResult evaluate_model_based(const Solver& solver, const Program& p_t,
                                     const std::vector<GoldEnumeration>& golds,
                                     const std::vector<InstanceInput>& instances, const SignatureSet& outputs,
                                     bool weak_mode, const ModelEvalOptions& options) {
    ModelEvalResult res;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        auto rep = evaluate_instance(solver, p_t, golds.at(i), instances[i], outputs, weak_mode, options, res.sets);
        if (rep.status == "timeout" || rep.status == "gold_failed") {
            res.partial = true;
        }
        res.instances.push_back(std::move(rep));
    }
    res.scores = compute_scores(res.sets);
    return res;
}

ModelEvalResult evaluate_model_based(const Solver& solver, const Program& p_t, const Program& p_g,
                                     const std::vector<InstanceInput>& instances, const SignatureSet& outputs,
                                     const ModelEvalOptions& options) {
    std::vector<GoldEnumeration> golds;
    for (const auto& inst : instances) {
        golds.push_back(enumerate_gold(solver, p_g, inst, outputs, options.timeout));
    }
    return evaluate_model_based(solver, p_t, golds, instances, outputs, p_g.has_optimization(), options);
}

} // namespace aspbench
