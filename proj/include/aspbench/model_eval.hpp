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

#include <aspbench/solver.hpp>
#include <aspbench/syntax.hpp>

#include <functional>
#include <set>
#include <string>
#include <vector>

namespace aspbench {

struct ModelSets {
    std::vector<AnswerSet> gm;
    std::vector<AnswerSet> cgm;
    std::vector<AnswerSet> wm;
};

struct Scores {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t gm_count = 0;
    std::size_t cgm_count = 0;
    std::size_t wm_count = 0;
    std::size_t tpm_count = 0;
};

[[nodiscard]] Scores compute_scores(const ModelSets& ms);
[[nodiscard]] Scores compute_scores(std::size_t gm, std::size_t cgm, std::size_t wm);

/// Steering constraints forcing the gold model m_g: ":- not a." for a in m_g and
/// ":- a." for a in base \ m_g, or their weak counterparts at `level` with cost 1.
[[nodiscard]] Program create_model_constraints(const AnswerSet& m_g, const std::set<GroundAtom>& base,
                                               const SignatureSet& outputs, bool weak_mode, int level);

[[nodiscard]] std::set<GroundAtom> build_complement_base(const std::vector<AnswerSet>& as_g,
                                                         const SignatureSet& outputs);

[[nodiscard]] bool models_match(const AnswerSet& m, const AnswerSet& m_g, const SignatureSet& outputs);

/// Names of the auxiliary predicates used by aug_program and the closure guard,
/// suffixed when they would clash with predicates of the tested program.
struct AuxNames {
    std::string true_in_gold = "trueInGold";
    std::string mod = "mod";
    std::string true_in_tested = "trueInTested";
    std::string smaller_mg = "smallerMG";
    std::string smaller_mt = "smallerMt";
    std::string steer_base = "steerBase";

    static AuxNames avoiding(const std::set<std::string>& taken);
};

/// Tested program plus the gold-model facts and the rules discarding every model
/// that exactly matches a gold model. `taken` lists further names to avoid
/// (for instance the predicates of the instance facts).
[[nodiscard]] Program aug_program(const Program& p_t, const std::vector<AnswerSet>& as_g,
                                  const SignatureSet& outputs, const std::set<std::string>& taken = {});

/// Forbids (or penalizes, in weak mode) output atoms of the tested program that
/// lie outside the steering base.
[[nodiscard]] Program closure_guard(const std::set<GroundAtom>& base, const SignatureSet& outputs, bool weak_mode,
                                    int level, const AuxNames& names);

enum class WrongModelMode {
    optimal,    // wrong models must be optimal models of the tested program
    all_stable, // every stable model of the augmented program counts
};

struct ModelEvalOptions {
    double timeout = 300.0;
    WrongModelMode wrong_models = WrongModelMode::optimal;
    /// Called with the steering constraints of every gold model before they are solved.
    std::function<void(const Program&)> on_steering;
};

struct InstanceInput {
    std::string name;
    Program facts;
};

struct GoldEnumeration {
    std::string instance;
    SolveStatus status = SolveStatus::solver_crash;
    std::vector<AnswerSet> models;
    std::string detail;
};

[[nodiscard]] GoldEnumeration enumerate_gold(const Solver& solver, const Program& p_g, const InstanceInput& instance,
                                             const SignatureSet& outputs, double timeout);

struct InstanceReport {
    std::string instance;
    std::string status; // ok, gold_failed, timeout, candidate_error
    std::size_t gm = 0;
    std::size_t cgm = 0;
    std::size_t wm = 0;
    std::size_t solver_calls = 0;
    std::string detail;
};

struct ModelEvalResult {
    ModelSets sets;
    Scores scores;
    bool partial = false;
    std::vector<InstanceReport> instances;
};

/// Coverage and wrong-model search over one instance with precomputed gold models.
InstanceReport evaluate_instance(const Solver& solver, const Program& p_t, const GoldEnumeration& gold,
                                 const InstanceInput& instance, const SignatureSet& outputs, bool weak_mode,
                                 const ModelEvalOptions& options, ModelSets& into);

[[nodiscard]] ModelEvalResult evaluate_model_based(const Solver& solver, const Program& p_t,
                                                   const std::vector<GoldEnumeration>& golds,
                                                   const std::vector<InstanceInput>& instances,
                                                   const SignatureSet& outputs, bool weak_mode,
                                                   const ModelEvalOptions& options = {});

[[nodiscard]] ModelEvalResult evaluate_model_based(const Solver& solver, const Program& p_t, const Program& p_g,
                                                   const std::vector<InstanceInput>& instances,
                                                   const SignatureSet& outputs, const ModelEvalOptions& options = {});

} // namespace aspbench
