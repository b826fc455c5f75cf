#include <cstdlib>
#include <fstream>

#include <httplib.h>
#include <json.hpp>

#include "vaxtag/errors.hpp"
#include "vaxtag/llm.hpp"

namespace vaxtag {

using nlohmann::json;

std::string build_completion_payload(const std::string& prompt, const LlmParams& params) {
    json body;
    body["model"] = params.model;
    body["prompt"] = prompt;
    body["temperature"] = params.temperature;
    body["max_tokens"] = params.max_tokens;
    return body.dump();
}

std::string extract_completion_text(const std::string& body) {
    json parsed;
    try {
        parsed = json::parse(body);
    } catch (const json::exception& e) {
        throw BackendError(std::string("malformed completion response: ") + e.what());
    }
    if (!parsed.contains("choices") || !parsed["choices"].is_array() ||
        parsed["choices"].empty()) {
        throw BackendError("completion response has no choices");
    }
    const auto& first = parsed["choices"][0];
    if (!first.contains("text") || !first["text"].is_string()) {
        throw BackendError("completion response choice has no text");
    }
    return first["text"].get<std::string>();
}

std::optional<std::string> extract_backtick_span(std::string_view prompt) {
    const std::string_view open_marker = "```";
    size_t open = prompt.rfind("Tweet: ```");
    if (open == std::string_view::npos) return std::nullopt;
    open += std::string_view("Tweet: ```").size();
    size_t close = prompt.find(open_marker, open);
    if (close == std::string_view::npos) return std::nullopt;
    return std::string(prompt.substr(open, close - open));
}

// -------------------------------------------------------------------- mock

namespace {

std::string unescape_tsv(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '\\' && i + 1 < s.size()) {
            char next = s[i + 1];
            if (next == 'n') { out += '\n'; ++i; continue; }
            if (next == 't') { out += '\t'; ++i; continue; }
            if (next == '\\') { out += '\\'; ++i; continue; }
        }
        out += s[i];
    }
    return out;
}

bool looks_like_digest(const std::string& key) {
    if (key.size() != 64) return false;
    for (char c : key) {
        if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
    }
    return true;
}

} // namespace

void MockBackend::load_table_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open mock table: " + path);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        size_t tab = line.find('\t');
        if (tab == std::string::npos) {
            throw ConfigError("mock table line " + std::to_string(lineno) + " has no tab");
        }
        set_response(line.substr(0, tab), unescape_tsv(line.substr(tab + 1)));
    }
}

void MockBackend::set_response(const std::string& key, const std::string& completion) {
    if (looks_like_digest(key)) by_digest_[key] = completion;
    else by_tweet_[key] = completion;
}

void MockBackend::set_default_response(const std::string& completion) {
    default_ = completion;
}

void MockBackend::push_scripted(const std::string& completion) {
    scripted_.push_back(completion);
}

std::string MockBackend::complete(const std::string& prompt, const LlmParams& params) {
    std::lock_guard<std::mutex> lock(mu_);
    calls_.fetch_add(1);
    if (!scripted_.empty()) {
        std::string out = scripted_.front();
        scripted_.erase(scripted_.begin());
        return out;
    }
    auto dit = by_digest_.find(ResponseCache::digest_of(prompt, params));
    if (dit != by_digest_.end()) return dit->second;
    if (auto tweet = extract_backtick_span(prompt)) {
        auto tit = by_tweet_.find(*tweet);
        if (tit != by_tweet_.end()) return tit->second;
    }
    if (default_) return *default_;
    throw BackendError("mock backend has no entry for this prompt");
}

// -------------------------------------------------------------------- http

HttpBackend::HttpBackend(HttpBackendConfig cfg) : cfg_(std::move(cfg)) {}

std::string HttpBackend::complete(const std::string& prompt, const LlmParams& params) {
    const char* key = std::getenv(cfg_.api_key_env.c_str());
    if (!key || !*key) {
        throw ConfigError("missing API key: set " + cfg_.api_key_env);
    }
    calls_.fetch_add(1);

    httplib::Client client(cfg_.base_url);
    client.set_connection_timeout(cfg_.timeout_seconds);
    client.set_read_timeout(cfg_.timeout_seconds);
    client.set_bearer_token_auth(key);

    auto res = client.Post(cfg_.path, build_completion_payload(prompt, params),
                           "application/json");
    if (!res) {
        throw BackendError("transport failure: " + httplib::to_string(res.error()));
    }
    if (res->status == 429) {
        throw RateLimitError("rate limited (429): " + res->body.substr(0, 200));
    }
    if (res->status < 200 || res->status >= 300) {
        throw BackendError("http " + std::to_string(res->status) + ": " +
                           res->body.substr(0, 200));
    }
    return extract_completion_text(res->body);
}

} // namespace vaxtag
