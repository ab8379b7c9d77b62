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

#include <httplib.h>

#include <aspbench/llm.hpp>

#include <aspbench/digest.hpp>
#include <aspbench/error.hpp>

#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>
#include <thread>

#include <unistd.h>

namespace aspbench {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return {};
    }
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

Role role_from(const std::string& s) {
    if (s == "generator") {
        return Role::generator;
    }
    if (s == "matcher") {
        return Role::matcher;
    }
    if (s == "paraphraser") {
        return Role::paraphraser;
    }
    throw Error(ErrorClass::endpoint, "unknown role in prompt record: " + s);
}

struct Url {
    std::string origin; // scheme://host[:port]
    std::string path;
};

Url split_url(const std::string& base) {
    auto scheme = base.find("://");
    if (scheme == std::string::npos) {
        throw Error(ErrorClass::usage, "endpoint base URL needs a scheme: " + base);
    }
    auto slash = base.find('/', scheme + 3);
    Url u;
    u.origin = base.substr(0, slash);
    u.path = slash == std::string::npos ? "" : base.substr(slash);
    while (!u.path.empty() && u.path.back() == '/') {
        u.path.pop_back();
    }
    return u;
}

std::atomic<unsigned> temp_counter{0};

} // namespace

std::string_view to_string(Role role) noexcept {
    switch (role) {
        case Role::generator: return "generator";
        case Role::matcher: return "matcher";
        case Role::paraphraser: return "paraphraser";
    }
    return "";
}

std::string PromptRecord::to_json() const {
    nlohmann::ordered_json j;
    j["role"] = std::string(to_string(role));
    j["model_name"] = model_name;
    j["temperature"] = temperature;
    j["run_index"] = run_index;
    j["cache_key"] = cache_key;
    j["rendered_prompt"] = rendered_prompt;
    j["response_raw"] = response_raw;
    j["response_clean"] = response_clean;
    return j.dump(2) + "\n";
}

PromptRecord PromptRecord::from_json(const std::string& text) {
    auto j = json::parse(text);
    PromptRecord r;
    r.role = role_from(j.at("role").get<std::string>());
    r.model_name = j.value("model_name", "");
    r.temperature = j.value("temperature", 0.7);
    r.run_index = j.value("run_index", 0);
    r.cache_key = j.value("cache_key", "");
    r.rendered_prompt = j.value("rendered_prompt", "");
    r.response_raw = j.at("response_raw").get<std::string>();
    r.response_clean = j.value("response_clean", "");
    return r;
}

std::string cache_key(Role role, const std::string& prompt, const std::string& model_name, double temperature,
                      int run_index) {
    json j = json::array({std::string(to_string(role)), prompt, model_name, temperature, run_index});
    return sha256_hex(j.dump());
}

std::string render_generator_prompt(const std::string& description) {
    return trim(description) +
           "\n\nWrite an ASP program which models this problem, along with facts that make it instantiable. "
           "Generate the program only, without any additional text.";
}

std::string render_matcher_prompt(const std::string& gold, const std::string& candidate) {
    return "Perform predicate matching on the following ASP programs based on the semantic similarity of the "
           "predicates:\n\nASP Instance 1:\n" +
           trim(gold) + "\n\nASP Instance 2:\n" + trim(candidate) +
           "\n\nIf there is no semantic match between some predicates, output 'No semantic match' only. Otherwise, "
           "produce the matches over all the predicates as a python dictionary. Do not generate any additional "
           "text.";
}

std::string render_paraphrase_prompt(const std::string& text, ParaphraseStage stage) {
    if (stage == ParaphraseStage::first) {
        return "Rewrite the following problem description so that a person with no background in logic "
               "programming can follow it. Keep every requirement of the problem and do not add new ones. Do not "
               "mention any programming language. Reply with the rewritten description only.\n\n" +
               trim(text);
    }
    return "The following text describes a problem in plain words. Rewrite it once more, changing the wording and "
           "the order of the explanation while keeping every requirement. Do not mention any programming language. "
           "Reply with the rewritten description only.\n\n" +
           trim(text);
}

std::string strip_code_fences(const std::string& reply) {
    std::string text = reply;
    for (auto open = text.find("<think>"); open != std::string::npos; open = text.find("<think>")) {
        auto close = text.find("</think>", open);
        text.erase(open, close == std::string::npos ? std::string::npos : close + 8 - open);
    }
    std::istringstream in(text);
    std::vector<std::string> lines;
    for (std::string l; std::getline(in, l);) {
        lines.push_back(l);
    }
    auto is_fence = [](const std::string& l) { return trim(l).rfind("```", 0) == 0; };
    if (std::none_of(lines.begin(), lines.end(), is_fence)) {
        return trim(text);
    }
    std::string out;
    bool inside = false;
    for (const auto& l : lines) {
        if (is_fence(l)) {
            inside = !inside;
            continue;
        }
        if (inside) {
            out += l;
            out += '\n';
        }
    }
    return trim(out) + (out.empty() ? "" : "\n");
}

MatchResult parse_mapping_reply(const std::string& reply) {
    MatchResult res;
    auto text = trim(reply);
    if (text.find("```") != std::string::npos) {
        text = trim(strip_code_fences(text));
    }
    auto bare = text;
    while (!bare.empty() && (bare.front() == '\'' || bare.front() == '"' || bare.front() == '`')) {
        bare.erase(0, 1);
    }
    while (!bare.empty() && (bare.back() == '\'' || bare.back() == '"' || bare.back() == '`' || bare.back() == '.')) {
        bare.pop_back();
    }
    std::string lower;
    for (char c : trim(bare)) {
        lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    if (lower == "no semantic match") {
        res.kind = MatchResult::Kind::no_semantic_match;
        return res;
    }
    static const std::regex dict(R"(^\{\s*(.*?)\s*,?\s*\}$)");
    static const std::regex entry(R"(^\s*(['"])([^'"]*)\1\s*:\s*(['"])([^'"]*)\3\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, dict)) {
        return res;
    }
    std::string body = m[1].str();
    if (!trim(body).empty()) {
        std::size_t pos = 0;
        while (pos <= body.size()) {
            auto comma = body.find(',', pos);
            auto item = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            pos = comma == std::string::npos ? body.size() + 1 : comma + 1;
            if (trim(item).empty() && comma == std::string::npos) {
                break; // trailing comma
            }
            std::smatch e;
            if (!std::regex_match(item, e, entry)) {
                return {};
            }
            res.mapping.pairs.emplace_back(e[2].str(), e[4].str());
        }
    }
    res.kind = MatchResult::Kind::mapping;
    return res;
}

std::string HttpTransport::complete(const LlmEndpoint& endpoint, const std::string& prompt) {
    const auto url = split_url(endpoint.base_url);
    httplib::Client cli(url.origin);
    const auto secs = static_cast<time_t>(endpoint.request_timeout);
    cli.set_connection_timeout(secs, 0);
    cli.set_read_timeout(secs, 0);
    cli.set_write_timeout(secs, 0);
    httplib::Headers headers;
    if (const char* key = std::getenv(endpoint.api_key_env.c_str()); key != nullptr && *key != '\0') {
        headers.emplace("Authorization", std::string("Bearer ") + key);
    }
    json body = {{"model", endpoint.model_name},
                 {"temperature", endpoint.temperature},
                 {"messages", json::array({{{"role", "user"}, {"content", prompt}}})}};
    const auto payload = body.dump();
    std::string last_error;
    for (int attempt = 0; attempt <= endpoint.max_retries; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(std::chrono::milliseconds(500 << std::min(attempt, 6)));
        }
        auto res = cli.Post(url.path + "/chat/completions", headers, payload, "application/json");
        if (!res) {
            last_error = "request failed: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status == 429 || res->status >= 500) {
            last_error = "HTTP " + std::to_string(res->status);
            continue;
        }
        if (res->status != 200) {
            throw HttpError("HTTP " + std::to_string(res->status) + " from " + endpoint.base_url + ": " +
                            res->body.substr(0, 500));
        }
        auto j = json::parse(res->body, nullptr, false);
        if (j.is_discarded()) {
            throw HttpError("malformed JSON from " + endpoint.base_url);
        }
        try {
            const auto& content = j.at("choices").at(0).at("message").at("content");
            return content.is_string() ? content.get<std::string>() : std::string();
        } catch (const json::exception&) {
            throw HttpError("unexpected response shape from " + endpoint.base_url);
        }
    }
    throw HttpError("giving up after " + std::to_string(endpoint.max_retries + 1) + " attempts: " + last_error);
}

Gateway::Gateway(LlmEndpoint endpoint, fs::path cache_dir, std::shared_ptr<Transport> transport, int max_concurrent)
    : endpoint_(std::move(endpoint))
    , cache_dir_(std::move(cache_dir))
    , transport_(std::move(transport))
    , slots_(std::max(1, max_concurrent)) {
    if (endpoint_.kind == LlmEndpoint::Kind::live && !transport_) {
        transport_ = std::make_shared<HttpTransport>();
    }
}

std::optional<PromptRecord> Gateway::lookup(const fs::path& dir, const std::string& key) const {
    if (dir.empty()) {
        return std::nullopt;
    }
    const auto path = dir / (key + ".json");
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return std::nullopt;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return PromptRecord::from_json(ss.str());
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

void Gateway::store(const PromptRecord& rec) const {
    if (cache_dir_.empty()) {
        return;
    }
    fs::create_directories(cache_dir_);
    const auto target = cache_dir_ / (rec.cache_key + ".json");
    const auto tmp = cache_dir_ / (rec.cache_key + ".tmp" + std::to_string(::getpid()) + "." +
                                   std::to_string(temp_counter.fetch_add(1)));
    {
        std::ofstream out(tmp, std::ios::binary);
        out << rec.to_json();
    }
    fs::rename(tmp, target);
}

PromptRecord Gateway::request(Role role, const std::string& prompt, int run_index) {
    const auto key = cache_key(role, prompt, endpoint_.model_name, endpoint_.temperature, run_index);
    if (auto hit = lookup(cache_dir_, key)) {
        return *hit;
    }
    PromptRecord rec;
    rec.role = role;
    rec.model_name = endpoint_.model_name;
    rec.temperature = endpoint_.temperature;
    rec.run_index = run_index;
    rec.rendered_prompt = prompt;
    rec.cache_key = key;
    if (endpoint_.kind == LlmEndpoint::Kind::replay) {
        auto fixture = lookup(endpoint_.fixtures_dir, key);
        if (!fixture) {
            throw HttpError("no replay fixture for " + std::string(to_string(role)) + " request " + key + " in " +
                            endpoint_.fixtures_dir.string());
        }
        rec.response_raw = fixture->response_raw;
    } else {
        slots_.acquire();
        try {
            ++network_calls_;
            rec.response_raw = transport_->complete(endpoint_, prompt);
        } catch (...) {
            slots_.release();
            throw;
        }
        slots_.release();
    }
    if (trim(rec.response_raw).empty()) {
        throw EmptyResponse("empty " + std::string(to_string(role)) + " response");
    }
    rec.response_clean = role == Role::generator ? strip_code_fences(rec.response_raw) : trim(rec.response_raw);
    store(rec);
    return rec;
}

PromptRecord Gateway::generate_program(const std::string& description, int run_index) {
    if (trim(description).empty()) {
        throw Error(ErrorClass::usage, "empty problem description");
    }
    return request(Role::generator, render_generator_prompt(description), run_index);
}

std::pair<MatchResult, PromptRecord> Gateway::match_predicates(const std::string& gold, const std::string& candidate,
                                                               int run_index) {
    auto rec = request(Role::matcher, render_matcher_prompt(gold, candidate), run_index);
    return {parse_mapping_reply(rec.response_raw), rec};
}

std::string Gateway::paraphrase(const std::string& text, ParaphraseStage stage,
                                const std::optional<std::string>& shipped) {
    if (shipped) {
        return *shipped;
    }
    return request(Role::paraphraser, render_paraphrase_prompt(text, stage), 0).response_clean;
}

} // namespace aspbench
