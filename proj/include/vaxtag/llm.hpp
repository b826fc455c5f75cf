#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "vaxtag/dataset.hpp"
#include "vaxtag/labels.hpp"

namespace vaxtag {

// ------------------------------------------------------------- prompt assets

// Everything the prompt template interpolates besides the exemplars:
// per-concern descriptions and keyword lists, loaded from the asset files.
struct PromptAssets {
    std::array<std::string, kNumLabels> descriptions;
    std::array<std::string, kNumLabels> keywords; // comma-separated text, may be empty

    static PromptAssets load(const std::string& asset_dir);
    void validate() const; // throws ConfigError when a description is missing
};

struct Exemplar {
    std::string text;
    LabelSet labels;
};

struct ExemplarSet {
    std::vector<Exemplar> items;
};

/// Seeded exemplar pick with coverage: first one record per uncovered label,
/// rarest label first, then uniform fill without replacement up to n.
/// Throws ConfigError when n < 12, DataError when a label never occurs in
/// train or n exceeds the number of records.
ExemplarSet select_exemplars(const Dataset& train, size_t n, uint64_t seed);

// --------------------------------------------------------------- completion

struct LlmParams {
    std::string model = "gpt-3.5-turbo-instruct";
    double temperature = 0.0;
    int max_tokens = 100;
};

struct PromptBundle {
    std::string text;
    std::vector<std::string> warnings; // e.g. backticks stripped from the tweet
};

/// Renders the full classification prompt: task, concern list, descriptions,
/// keywords, examples, response format, the backtick-wrapped tweet, closing
/// note. Deterministic; exactly one triple-backtick span.
PromptBundle build_prompt(std::string_view tweet, const PromptAssets& assets,
                          const ExemplarSet& exemplars);

/// `Concern: ['a', 'b']` in ordinal order (the response wire format).
std::string render_concern_line(const LabelSet& labels);

struct ParsedLlmOutput {
    LabelSet labels;
    std::string reasoning;
    std::vector<std::string> warnings;
    bool truncated = false;
};

/// Pulls the label list out of the first `Concern:` line and the reasoning
/// after `Reasoning:`. Unknown label tokens drop with a warning; "none"
/// drops when other labels are present. Returns nullopt (and the reason in
/// *error) when there is no Concern line or no valid label survives.
std::optional<ParsedLlmOutput> parse_response(std::string_view raw,
                                              std::string* error = nullptr);

// ----------------------------------------------------------------- backends

class CompletionBackend {
public:
    virtual ~CompletionBackend() = default;
    /// Returns the completion text. Throws BackendError (RateLimitError for
    /// HTTP 429) on failure; must be safe for concurrent calls.
    virtual std::string complete(const std::string& prompt, const LlmParams& params) = 0;
    virtual size_t call_count() const = 0;
};

// Deterministic offline backend. Completions come from a table keyed either
// by the tweet inside the prompt's backtick span or by the full
// digest(prompt, params); scripted responses (FIFO) take precedence so tests
// can force failure sequences.
class MockBackend final : public CompletionBackend {
public:
    MockBackend() = default;

    /// Merges "key<TAB>escaped completion" rows (\n, \t, \\ escapes) into the table.
    void load_table_file(const std::string& path);
    void set_response(const std::string& key, const std::string& completion);
    void set_default_response(const std::string& completion);
    void push_scripted(const std::string& completion);

    std::string complete(const std::string& prompt, const LlmParams& params) override;
    size_t call_count() const override { return calls_.load(); }

private:
    std::unordered_map<std::string, std::string> by_tweet_;
    std::unordered_map<std::string, std::string> by_digest_;
    std::vector<std::string> scripted_;
    std::optional<std::string> default_;
    std::mutex mu_;
    std::atomic<size_t> calls_{0};
};

struct HttpBackendConfig {
    std::string base_url = "https://api.openai.com";
    std::string path = "/v1/completions";
    std::string api_key_env = "LLM_API_KEY";
    int timeout_seconds = 120;
};

// POSTs {"model", "prompt", "temperature", "max_tokens"} and returns
// choices[0].text. The bearer token comes from the configured env var.
class HttpBackend final : public CompletionBackend {
public:
    explicit HttpBackend(HttpBackendConfig cfg);
    std::string complete(const std::string& prompt, const LlmParams& params) override;
    size_t call_count() const override { return calls_.load(); }

private:
    HttpBackendConfig cfg_;
    std::atomic<size_t> calls_{0};
};

/// JSON body for the completions call (exact wire format).
std::string build_completion_payload(const std::string& prompt, const LlmParams& params);
/// choices[0].text, or BackendError when the body does not look like one.
std::string extract_completion_text(const std::string& body);
/// Tweet text between the prompt's triple backticks (mock lookup key).
std::optional<std::string> extract_backtick_span(std::string_view prompt);

// -------------------------------------------------------------------- cache

// Append-only completion cache; one JSON record per line keyed by
// digest(prompt, params). Appends are serialized, lookups lock-free after load.
class ResponseCache {
public:
    /// Empty path keeps the cache in memory only.
    explicit ResponseCache(std::string path);

    static std::string digest_of(const std::string& prompt, const LlmParams& params);

    std::optional<std::string> lookup(const std::string& digest) const;
    void insert(const std::string& digest, const std::string& prompt,
                const LlmParams& params, const std::string& completion);
    size_t size() const;

private:
    std::string path_;
    mutable std::mutex mu_;
    std::unordered_map<std::string, std::string> entries_;
};

// ----------------------------------------------------------------- classify

struct RetryPolicy {
    int max_retries = 2;                       // extra attempts after the first
    std::vector<int> backoff_ms = {1000, 4000}; // transport/rate-limit waits
};

struct LlmProvenance {
    bool cache_hit = false;
    int attempts = 0;
    bool failed = false;
    std::vector<std::string> notes;
};

struct LlmResult {
    LabelSet labels;
    std::string reasoning;
    std::vector<std::string> warnings;
    LlmProvenance provenance;
};

/// Cache lookup, backend call with retries (immediate for parse failures,
/// with a format reminder appended; backed off for transport/429), {none}
/// sentinel on final failure. Successful completions land in the cache under
/// the original prompt digest.
LlmResult classify_llm(std::string_view tweet, CompletionBackend& backend,
                       const PromptAssets& assets, const ExemplarSet& exemplars,
                       const LlmParams& params, const RetryPolicy& policy,
                       ResponseCache* cache = nullptr);

} // namespace vaxtag
