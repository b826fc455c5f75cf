#include <chrono>
#include <thread>

#include "vaxtag/errors.hpp"
#include "vaxtag/llm.hpp"

namespace vaxtag {

namespace {

constexpr std::string_view kFormatReminder = "Respond strictly in the required format.";

int backoff_for_attempt(const RetryPolicy& policy, int attempt) {
    if (policy.backoff_ms.empty()) return 0;
    size_t idx = std::min(size_t(attempt), policy.backoff_ms.size() - 1);
    return policy.backoff_ms[idx];
}

} // namespace

LlmResult classify_llm(std::string_view tweet, CompletionBackend& backend,
                       const PromptAssets& assets, const ExemplarSet& exemplars,
                       const LlmParams& params, const RetryPolicy& policy,
                       ResponseCache* cache) {
    LlmResult result;
    PromptBundle prompt = build_prompt(tweet, assets, exemplars);
    result.warnings = prompt.warnings;

    const std::string digest = ResponseCache::digest_of(prompt.text, params);
    if (cache) {
        if (auto cached = cache->lookup(digest)) {
            std::string err;
            if (auto parsed = parse_response(*cached, &err)) {
                result.provenance.cache_hit = true;
                result.labels = parsed->labels;
                result.reasoning = parsed->reasoning;
                result.warnings.insert(result.warnings.end(), parsed->warnings.begin(),
                                       parsed->warnings.end());
                return result;
            }
            // cached garbage is not trusted; fall through to the backend
            result.provenance.notes.push_back("cached completion unparseable: " + err);
        }
    }

    std::string send_prompt = prompt.text;
    const int max_attempts = policy.max_retries + 1;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        result.provenance.attempts = attempt + 1;
        std::string completion;
        try {
            completion = backend.complete(send_prompt, params);
        } catch (const RateLimitError& e) {
            result.provenance.notes.push_back(e.what());
            if (attempt + 1 < max_attempts) {
                std::this_thread::sleep_for(
                    std::chrono::milliseconds(backoff_for_attempt(policy, attempt)));
                continue;
            }
            break;
        } catch (const BackendError& e) {
            result.provenance.notes.push_back(e.what());
            if (attempt + 1 < max_attempts) {
                std::this_thread::sleep_for(
                    std::chrono::milliseconds(backoff_for_attempt(policy, attempt)));
                continue;
            }
            break;
        }

        std::string err;
        if (auto parsed = parse_response(completion, &err)) {
            result.labels = parsed->labels;
            result.reasoning = parsed->reasoning;
            result.warnings.insert(result.warnings.end(), parsed->warnings.begin(),
                                   parsed->warnings.end());
            if (cache) cache->insert(digest, prompt.text, params, completion);
            return result;
        }
        // at temperature 0 an identical retry is pointless; nudge the format
        result.provenance.notes.push_back("parse failure: " + err);
        if (attempt == 0) {
            send_prompt = prompt.text + "\n" + std::string(kFormatReminder) + "\n";
        }
    }

    result.labels = LabelSet{ConcernLabel::None}; // failure sentinel keeps run files total
    result.provenance.failed = true;
    return result;
}

} // namespace vaxtag
