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

#include <aspbench/fixtures.hpp>

#include <aspbench/llm.hpp>
#include <aspbench/mutation.hpp>
#include <aspbench/pipeline.hpp>

#include <fstream>

namespace aspbench {
namespace {

namespace fs = std::filesystem;

PredicateMapping gold_to_synthetic(const Program& gold) {
    PredicateMapping m;
    for (const auto& name : gold.predicate_names()) {
        m.pairs.emplace_back(synthetic_name(name), name);
    }
    return m;
}

std::string rename_to_synthetic(const Program& p) { return rename_predicates(p, gold_to_synthetic(p)).str(); }

std::string mapping_reply(const Program& gold, bool double_quoted) {
    const char q = double_quoted ? '"' : '\'';
    std::string out = "{";
    bool first = true;
    for (const auto& name : gold.predicate_names()) {
        out += first ? "" : ", ";
        out += q + name + q + ": " + q + synthetic_name(name) + q;
        first = false;
    }
    return out + (double_quoted ? ",}" : "}");
}

void write_record(const fs::path& dir, PromptRecord rec) {
    rec.response_clean = rec.role == Role::generator ? strip_code_fences(rec.response_raw) : rec.response_raw;
    rec.cache_key = cache_key(rec.role, rec.rendered_prompt, rec.model_name, rec.temperature, rec.run_index);
    std::ofstream out(dir / (rec.cache_key + ".json"), std::ios::binary | std::ios::trunc);
    out << rec.to_json() << "\n";
}

} // namespace

std::string synthetic_name(const std::string& gold_name) {
    std::string out = "my";
    out += static_cast<char>(std::toupper(static_cast<unsigned char>(gold_name.front())));
    return out + gold_name.substr(1);
}

std::size_t make_replay_fixtures(const Solver& solver, const FixtureOptions& o) {
    fs::create_directories(o.out_dir);
    auto problems = o.problems.empty() ? list_problems(o.dataset_root) : o.problems;
    std::size_t written = 0;
    for (const auto& name : problems) {
        const auto b = load_bundle(o.dataset_root / name);
        const auto mutants = generate_mutants(solver, b.gold, 15, o.seed);
        const auto facts = rename_to_synthetic(b.instances.front().facts);
        const auto gold_text = b.gold.str();
        int variant_index = 0;
        for (auto v : {Variant::original, Variant::paraphrase1, Variant::paraphrase2}) {
            const auto desc = b.description(to_string(v));
            if (!desc) {
                continue;
            }
            for (int run = 1; run <= o.runs; ++run) {
                std::string program;
                std::string raw;
                std::optional<std::string> reply = mapping_reply(b.gold, false);
                const int slot = (run - 1) % 5;
                if (slot == 0) {
                    program = rename_to_synthetic(b.gold) + "\n" + facts + "\n";
                    raw = "Here is the encoding:\n\n```asp\n" + program + "```\n";
                } else if (slot == 1 || slot == 4) {
                    const auto& m = mutants[static_cast<std::size_t>(variant_index * 2 + (slot == 4 ? 1 : 0) +
                                                                     (run - 1) / 5 * 6) % mutants.size()];
                    program = rename_to_synthetic(m.program) + "\n" + facts + "\n";
                    raw = program;
                    if (slot == 4) {
                        reply = mapping_reply(b.gold, true);
                    }
                } else if (slot == 2) {
                    program = rename_to_synthetic(b.gold);
                    program = program.substr(0, program.rfind('.'));
                    raw = "```\n" + program + "\n```";
                } else {
                    program = rename_to_synthetic(b.gold) + "\n" + facts + "\n";
                    raw = program;
                    reply = "No semantic match";
                }
                PromptRecord gen;
                gen.role = Role::generator;
                gen.model_name = o.generator_model;
                gen.temperature = o.temperature;
                gen.run_index = run;
                gen.rendered_prompt = render_generator_prompt(*desc);
                gen.response_raw = raw;
                write_record(o.out_dir, gen);
                ++written;
                if (slot == 2) {
                    continue;
                }
                PromptRecord match;
                match.role = Role::matcher;
                match.model_name = o.matcher_model;
                match.temperature = o.temperature;
                match.run_index = run;
                match.rendered_prompt = render_matcher_prompt(gold_text, strip_code_fences(raw));
                match.response_raw = *reply;
                write_record(o.out_dir, match);
                ++written;
            }
            ++variant_index;
        }
    }
    return written;
}

} // namespace aspbench
