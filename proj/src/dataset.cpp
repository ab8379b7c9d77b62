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

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace aspbench {
namespace {

namespace fs = std::filesystem;

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        return {};
    }
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view v) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= v.size()) {
        auto comma = v.find(',', pos);
        auto item = trim(v.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        if (!item.empty()) {
            out.push_back(item);
        }
        if (comma == std::string_view::npos) {
            break;
        }
        pos = comma + 1;
    }
    return out;
}

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& i : items) {
        out += (out.empty() ? "" : ", ") + i;
    }
    return out;
}

std::optional<std::string> read_optional(const fs::path& p) {
    if (!fs::exists(p)) {
        return std::nullopt;
    }
    return read_file(p);
}

void check_facts_over(const Program& p, const SignatureSet& inputs, const std::string& where) {
    for (const auto& r : p.rules()) {
        if (r.kind != RuleKind::fact && r.kind != RuleKind::comment) {
            throw ManifestMismatch(where + " contains a non-fact statement: " + r.text);
        }
    }
    for (const auto& sig : p.signatures()) {
        if (!inputs.count(sig)) {
            throw ManifestMismatch(where + " uses " + sig.str() + ", which is not an input predicate");
        }
    }
}

} // namespace

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw MissingFile(path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Manifest Manifest::parse(std::string_view text) {
    Manifest m;
    std::istringstream in{std::string(text)};
    std::size_t line_no = 0;
    std::set<std::string> seen;
    for (std::string line; std::getline(in, line);) {
        ++line_no;
        auto t = trim(line);
        if (t.empty() || t.front() == '#') {
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw ManifestMismatch("manifest line " + std::to_string(line_no) + ": expected key = value");
        }
        auto key = trim(t.substr(0, eq));
        auto value = trim(t.substr(eq + 1));
        if (!seen.insert(key).second) {
            throw ManifestMismatch("manifest: duplicate key " + key);
        }
        try {
            if (key == "name") {
                m.name = value;
            } else if (key == "input") {
                m.inputs = parse_signatures(value);
            } else if (key == "output") {
                m.outputs = parse_signatures(value);
            } else if (key == "instances") {
                m.instances = split_list(value);
            } else if (key == "timeout") {
                m.timeout = std::stod(value);
            } else if (key == "optimization") {
                if (value != "true" && value != "false") {
                    throw ManifestMismatch("manifest: optimization must be true or false");
                }
                m.optimization = value == "true";
            } else if (key == "survivors") {
                for (auto& h : split_list(value)) {
                    m.survivors.insert(h);
                }
            } else {
                throw ManifestMismatch("manifest: unknown key " + key);
            }
        } catch (const ManifestMismatch&) {
            throw;
        } catch (const std::exception& e) {
            throw ManifestMismatch("manifest line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (m.name.empty() || m.outputs.empty() || m.instances.empty()) {
        throw ManifestMismatch("manifest needs name, output and instances");
    }
    if (!(m.timeout > 0)) {
        throw ManifestMismatch("manifest: timeout must be positive");
    }
    return m;
}

std::string Manifest::str() const {
    std::ostringstream out;
    out << "name = " << name << "\n";
    out << "input = " << format_signatures(inputs) << "\n";
    out << "output = " << format_signatures(outputs) << "\n";
    out << "instances = " << join(instances) << "\n";
    out << "timeout = " << timeout << "\n";
    out << "optimization = " << (optimization ? "true" : "false") << "\n";
    out << "survivors = " << join({survivors.begin(), survivors.end()}) << "\n";
    return out.str();
}

std::optional<std::string> ProblemBundle::description(std::string_view variant) const {
    if (variant == "original") {
        return description_original;
    }
    if (variant == "paraphrase1") {
        return paraphrase_1;
    }
    if (variant == "paraphrase2") {
        return paraphrase_2;
    }
    return std::nullopt;
}

ProblemBundle load_bundle(const fs::path& dir) {
    if (!fs::is_directory(dir)) {
        throw MissingFile(dir.string());
    }
    ProblemBundle b;
    b.path = dir;
    b.manifest = Manifest::parse(read_file(dir / "manifest"));
    b.name = b.manifest.name;
    if (b.name != dir.filename().string()) {
        throw ManifestMismatch("manifest name " + b.name + " does not match directory " + dir.filename().string());
    }
    b.description_original = read_file(dir / "description.md");
    b.paraphrase_1 = read_optional(dir / "paraphrase1.md");
    b.paraphrase_2 = read_optional(dir / "paraphrase2.md");
    try {
        b.gold = Program::parse(read_file(dir / "gold.lp"));
    } catch (const LexError& e) {
        throw ManifestMismatch(b.name + "/gold.lp: " + e.what());
    }
    b.input_preds = b.manifest.inputs;
    b.output_preds = b.manifest.outputs;
    b.has_optimization = b.gold.has_optimization();
    b.per_problem_timeout = b.manifest.timeout;
    const auto gold_sigs = b.gold.signatures();
    for (const auto* set : {&b.input_preds, &b.output_preds}) {
        for (const auto& sig : *set) {
            if (!gold_sigs.count(sig)) {
                throw ManifestMismatch(b.name + ": declared predicate " + sig.str() + " does not occur in gold.lp");
            }
        }
    }
    if (b.manifest.optimization != b.has_optimization) {
        throw ManifestMismatch(b.name + ": manifest optimization flag disagrees with gold.lp");
    }
    for (const auto& name : b.manifest.instances) {
        const auto path = dir / "instances" / (name + ".lp");
        InstanceInput inst{name, {}};
        try {
            inst.facts = Program::parse(read_file(path));
        } catch (const LexError& e) {
            throw ManifestMismatch(path.string() + ": " + e.what());
        }
        check_facts_over(inst.facts, b.input_preds, path.string());
        b.instances.push_back(std::move(inst));
    }
    b.suite = parse_suite(read_file(dir / "tests.suite.lp"));
    b.suite.problem = b.name;
    for (const auto& c : b.suite.cases) {
        check_facts_over(c.facts, b.input_preds, b.name + " suite case " + c.name);
    }
    return b;
}

SelfTest self_test(const Solver& solver, const ProblemBundle& b) {
    const auto start = std::chrono::steady_clock::now();
    SelfTest st;
    auto chk = solver.check_syntax(b.gold, b.per_problem_timeout);
    if (!chk.ok) {
        throw GoldSelfTestFailure(b.name + ": gold.lp does not ground: " + chk.detail);
    }
    ModelEvalOptions opts;
    opts.timeout = b.per_problem_timeout;
    for (const auto& inst : b.instances) {
        st.golds.push_back(enumerate_gold(solver, b.gold, inst, b.output_preds, opts.timeout));
        if (!(st.golds.back().status == SolveStatus::sat || st.golds.back().status == SolveStatus::unsat)) {
            throw GoldSelfTestFailure(b.name + ": gold enumeration failed on " + inst.name + ": " +
                                      st.golds.back().detail);
        }
    }
    auto eval = evaluate_model_based(solver, b.gold, st.golds, b.instances, b.output_preds, b.has_optimization, opts);
    st.scores = eval.scores;
    if (eval.partial || st.scores.f1 != 1.0) {
        throw GoldSelfTestFailure(b.name + ": gold self-evaluation F1 is " + std::to_string(st.scores.f1));
    }
    auto suite = run_suite(solver, b.gold, b.suite, b.suite_context(b.per_problem_timeout));
    st.suite_accuracy = suite.accuracy;
    if (suite.accuracy != 1.0) {
        std::string failing;
        for (const auto& c : suite.cases) {
            if (c.verdict != Verdict::passed) {
                failing += " " + c.name;
                for (const auto& r : c.reasons) {
                    failing += " [" + r + "]";
                }
            }
        }
        throw GoldSelfTestFailure(b.name + ": gold fails its suite:" + failing);
    }
    st.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return st;
}

ProblemBundle load_bundle(const fs::path& dir, const Solver& solver) {
    auto b = load_bundle(dir);
    (void)self_test(solver, b);
    return b;
}

std::vector<std::string> list_problems(const fs::path& root, std::vector<std::string>* warnings) {
    if (!fs::is_directory(root)) {
        throw DatasetRootMissing(root.string());
    }
    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(root)) {
        if (entry.is_directory() && fs::exists(entry.path() / "manifest")) {
            names.push_back(entry.path().filename().string());
        }
    }
    std::sort(names.begin(), names.end());
    if (names.empty() && warnings != nullptr) {
        warnings->push_back("no problem bundles under " + root.string());
    }
    return names;
}

fs::path default_dataset_root() {
    if (const char* env = std::getenv("ASPBENCH_DATASET"); env != nullptr && *env != '\0') {
        return env;
    }
#ifdef ASPBENCH_DATASET_DIR
    return ASPBENCH_DATASET_DIR;
#else
    return "problems";
#endif
}

} // namespace aspbench
