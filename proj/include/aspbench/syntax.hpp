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

// Lightweight ASP source handling: statement segmentation, rule classification,
// predicate occurrence indexing and the textual rewrites the harness needs.
// Grounding semantics stay with the external solver.

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace aspbench {

/// True for a lowercase-initial ASP identifier (optionally preceded by underscores).
[[nodiscard]] bool is_identifier(std::string_view text) noexcept;

struct PredicateSignature {
    std::string name;
    int arity = 0;

    /// Parses "name/arity".
    static PredicateSignature parse(std::string_view text);
    [[nodiscard]] std::string str() const { return name + "/" + std::to_string(arity); }

    friend auto operator<=>(const PredicateSignature&, const PredicateSignature&) = default;
    friend bool operator==(const PredicateSignature&, const PredicateSignature&) = default;
};

using SignatureSet = std::set<PredicateSignature>;

/// Parses a comma separated list of "name/arity" items; empty input yields the empty set.
[[nodiscard]] SignatureSet parse_signatures(std::string_view text);
[[nodiscard]] std::string format_signatures(const SignatureSet& sigs);

enum class RuleKind {
    fact,
    normal_rule,
    choice_rule,
    strong_constraint,
    weak_constraint,
    directive,
    comment,
};

[[nodiscard]] std::string_view to_string(RuleKind kind) noexcept;

/// A predicate occurrence inside one rule; offset is relative to the rule text.
struct Occurrence {
    std::size_t rule = 0;
    std::size_t offset = 0;
    std::size_t length = 0;
};

struct RuleText {
    RuleKind kind = RuleKind::comment;
    std::string text;
    /// Priority of a weak constraint; present iff kind == weak_constraint.
    std::optional<int> weak_level;
    /// Highest priority inside a #minimize/#maximize directive.
    std::optional<int> minimize_level;
    /// Signature of the head atom when kind == fact.
    std::optional<PredicateSignature> fact_signature;
};

class Program {
public:
    Program() = default;

    /// Segments and classifies source text. Throws LexError on unbalanced
    /// brackets, unterminated strings or comments, or a missing final '.'.
    static Program parse(std::string_view source);

    [[nodiscard]] const std::vector<RuleText>& rules() const noexcept { return rules_; }
    [[nodiscard]] const std::map<PredicateSignature, std::vector<Occurrence>>& predicate_index() const noexcept {
        return index_;
    }
    [[nodiscard]] const std::string& source_hash() const noexcept { return hash_; }

    /// Rule texts joined by newlines. Parsing the result yields the same rules.
    [[nodiscard]] std::string str() const;

    [[nodiscard]] bool empty() const noexcept { return rules_.empty(); }
    [[nodiscard]] bool has_optimization() const noexcept;
    [[nodiscard]] SignatureSet signatures() const;
    [[nodiscard]] std::set<std::string> predicate_names() const;
    [[nodiscard]] std::size_t count(RuleKind kind) const noexcept;

    /// Occurrences of predicates inside one rule, in text order.
    [[nodiscard]] std::vector<std::pair<PredicateSignature, Occurrence>> occurrences_in(std::size_t rule) const;

    /// Builds a program from already segmented rule texts (re-parsed for classification).
    static Program from_rules(std::span<const std::string> texts);

    /// Concatenation of several programs.
    static Program join(std::span<const Program> parts);

private:
    std::vector<RuleText> rules_;
    std::map<PredicateSignature, std::vector<Occurrence>> index_;
    std::string hash_;
};

[[nodiscard]] inline Program parse_program(std::string_view source) { return Program::parse(source); }

/// Gold-to-candidate predicate name pairs as produced by the predicate matcher.
/// Stored as a list so ambiguous replies (one name paired twice) stay visible.
struct PredicateMapping {
    std::vector<std::pair<std::string, std::string>> pairs; // (gold, candidate)

    [[nodiscard]] bool empty() const noexcept { return pairs.empty(); }
    friend bool operator==(const PredicateMapping&, const PredicateMapping&) = default;
};

enum class RenameDirection { candidate_to_gold };

/// Renames candidate predicate names to their gold names (all arities of a name).
/// Throws MappingCollision when two distinct predicate names occurring in the
/// program would end up with the same name, or a name is paired with two
/// different targets; InvalidIdentifier for malformed names.
[[nodiscard]] Program rename_predicates(const Program& program, const PredicateMapping& mapping,
                                        RenameDirection direction = RenameDirection::candidate_to_gold);

/// Removes facts over the given signatures. Non-fact rules are kept verbatim.
[[nodiscard]] Program strip_input_facts(const Program& program, const SignatureSet& inputs);

/// Removes #show directives.
[[nodiscard]] Program drop_show_directives(const Program& program);

/// Highest weak-constraint (or #minimize) priority in the program; 0 if none.
[[nodiscard]] int max_weak_level(const Program& program) noexcept;

/// Name-only renames that change arity expectations, reported as warnings.
[[nodiscard]] std::vector<std::string> arity_warnings(const Program& renamed, const SignatureSet& expected);

// ---------------------------------------------------------------------------
// Ground atoms and answer sets

/// A ground atom in canonical, whitespace-free rendering.
class GroundAtom {
public:
    GroundAtom() = default;

    /// Parses a ground atom such as `chosenColor(1,red)`, `-p(a)` or `q("x y")`.
    static GroundAtom parse(std::string_view text);

    [[nodiscard]] const std::string& predicate() const noexcept { return predicate_; }
    [[nodiscard]] const std::vector<std::string>& args() const noexcept { return args_; }
    [[nodiscard]] const std::string& text() const noexcept { return text_; }
    [[nodiscard]] PredicateSignature signature() const { return {predicate_, static_cast<int>(args_.size())}; }

    friend bool operator==(const GroundAtom& a, const GroundAtom& b) noexcept { return a.text_ == b.text_; }
    friend auto operator<=>(const GroundAtom& a, const GroundAtom& b) noexcept { return a.text_ <=> b.text_; }

private:
    std::string predicate_;
    std::vector<std::string> args_;
    std::string text_;
};

/// A stable model as a sorted, duplicate-free atom list tagged with its instance.
struct AnswerSet {
    std::string instance;
    std::vector<GroundAtom> atoms;

    static AnswerSet from_atoms(std::vector<GroundAtom> atoms, std::string instance = {});
    [[nodiscard]] bool contains(const GroundAtom& atom) const;
    [[nodiscard]] std::string str() const;
    /// Atoms rendered as facts, one per line.
    [[nodiscard]] std::string as_facts() const;
};

[[nodiscard]] std::vector<GroundAtom> project_atoms(std::span<const GroundAtom> atoms, const SignatureSet& preds);
[[nodiscard]] AnswerSet project(const AnswerSet& model, const SignatureSet& preds);

} // namespace aspbench
