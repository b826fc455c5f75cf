#include <chrono>
#include <fstream>

#include <json.hpp>

#include "vaxtag/errors.hpp"
#include "vaxtag/llm.hpp"
#include "vaxtag/sha256.hpp"

namespace vaxtag {

using nlohmann::json;

ResponseCache::ResponseCache(std::string path) : path_(std::move(path)) {
    if (path_.empty()) return;
    std::ifstream in(path_, std::ios::binary);
    if (!in) return; // cold cache: file appears on first insert
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            json rec = json::parse(line);
            entries_[rec.at("digest").get<std::string>()] =
                rec.at("completion").get<std::string>();
        } catch (const json::exception& e) {
            throw DataError("corrupt cache record at " + path_ + ":" + std::to_string(lineno) +
                            ": " + e.what());
        }
    }
}

std::string ResponseCache::digest_of(const std::string& prompt, const LlmParams& params) {
    Sha256 h;
    h.update(params.model);
    h.update("\x1f");
    h.update(std::to_string(params.temperature));
    h.update("\x1f");
    h.update(std::to_string(params.max_tokens));
    h.update("\x1f");
    h.update(prompt);
    return h.hex_digest();
}

std::optional<std::string> ResponseCache::lookup(const std::string& digest) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = entries_.find(digest);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void ResponseCache::insert(const std::string& digest, const std::string& prompt,
                           const LlmParams& params, const std::string& completion) {
    std::lock_guard<std::mutex> lock(mu_);
    if (entries_.count(digest)) return; // append-only; first writer wins
    entries_[digest] = completion;
    if (path_.empty()) return;

    json rec;
    rec["digest"] = digest;
    rec["model"] = params.model;
    rec["temperature"] = params.temperature;
    rec["max_tokens"] = params.max_tokens;
    rec["prompt"] = prompt;
    rec["completion"] = completion;
    rec["timestamp"] =
        std::chrono::duration_cast<std::chrono::seconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count();
    std::ofstream out(path_, std::ios::binary | std::ios::app);
    if (!out) throw ConfigError("cannot append to cache file: " + path_);
    out << rec.dump() << '\n';
}

size_t ResponseCache::size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return entries_.size();
}

} // namespace vaxtag
