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

#include <aspbench/syntax.hpp>

#include <atomic>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <string>

namespace aspbench {

enum class Role { generator, matcher, paraphraser };

[[nodiscard]] std::string_view to_string(Role role) noexcept;

struct LlmEndpoint {
    enum class Kind { live, replay };
    Kind kind = Kind::live;
    std::string base_url = "https://api.openai.com/v1";
    std::string model_name;
    std::string api_key_env = "OPENAI_API_KEY"; // name of the variable, never its value
    double temperature = 0.7;
    int max_retries = 3;
    double request_timeout = 120.0;
    std::filesystem::path fixtures_dir; // replay endpoints only
};

struct PromptRecord {
    Role role = Role::generator;
    std::string model_name;
    double temperature = 0.7;
    int run_index = 0;
    std::string rendered_prompt;
    std::string response_raw;
    std::string response_clean;
    std::string cache_key;

    [[nodiscard]] std::string to_json() const;
    static PromptRecord from_json(const std::string& text);
};

[[nodiscard]] std::string cache_key(Role role, const std::string& prompt, const std::string& model_name,
                                    double temperature, int run_index);

// Prompt templates
[[nodiscard]] std::string render_generator_prompt(const std::string& description);
[[nodiscard]] std::string render_matcher_prompt(const std::string& gold, const std::string& candidate);
enum class ParaphraseStage { first, second };
[[nodiscard]] std::string render_paraphrase_prompt(const std::string& text, ParaphraseStage stage);

/// Keeps the contents of fenced code blocks when the reply has any, drops
/// reasoning blocks, otherwise returns the reply trimmed.
[[nodiscard]] std::string strip_code_fences(const std::string& reply);

struct MatchResult {
    enum class Kind { mapping, no_semantic_match, unparseable };
    Kind kind = Kind::unparseable;
    PredicateMapping mapping;
};

/// Parses a matcher reply: "No semantic match" or a dictionary of quoted names.
[[nodiscard]] MatchResult parse_mapping_reply(const std::string& reply);

/// Wire-level chat completion; returns the message content.
class Transport {
public:
    virtual ~Transport() = default;
    virtual std::string complete(const LlmEndpoint& endpoint, const std::string& prompt) = 0;
};

/// Chat-completions POST over HTTP(S) with retries on transport errors, 429 and 5xx.
class HttpTransport : public Transport {
public:
    std::string complete(const LlmEndpoint& endpoint, const std::string& prompt) override;
};

class Gateway {
public:
    /// `cache_dir` may be empty (no cache). A null transport selects HttpTransport
    /// for live endpoints; replay endpoints never use a transport.
    Gateway(LlmEndpoint endpoint, std::filesystem::path cache_dir = {}, std::shared_ptr<Transport> transport = nullptr,
            int max_concurrent = 4);

    [[nodiscard]] const LlmEndpoint& endpoint() const noexcept { return endpoint_; }

    PromptRecord request(Role role, const std::string& prompt, int run_index);

    PromptRecord generate_program(const std::string& description, int run_index);
    std::pair<MatchResult, PromptRecord> match_predicates(const std::string& gold, const std::string& candidate,
                                                          int run_index);
    /// Returns `shipped` untouched when given (bundle paraphrases), without any request.
    std::string paraphrase(const std::string& text, ParaphraseStage stage,
                           const std::optional<std::string>& shipped = std::nullopt);

    [[nodiscard]] std::size_t network_calls() const noexcept { return network_calls_.load(); }

private:
    std::optional<PromptRecord> lookup(const std::filesystem::path& dir, const std::string& key) const;
    void store(const PromptRecord& rec) const;

    LlmEndpoint endpoint_;
    std::filesystem::path cache_dir_;
    std::shared_ptr<Transport> transport_;
    std::counting_semaphore<> slots_;
    std::atomic<std::size_t> network_calls_{0};
};

} // namespace aspbench
