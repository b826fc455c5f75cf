#include "cli_helpers.hpp"

#include <sstream>

#include "vaxtag/errors.hpp"

namespace vaxtag::cli {

PipelineConfig pipeline_from_config(const KvConfig& cfg) {
    PipelineConfig p;
    p.lowercase = cfg.get_bool("textprep", "lowercase", p.lowercase);
    p.remove_urls = cfg.get_bool("textprep", "remove_urls", p.remove_urls);
    p.remove_handles = cfg.get_bool("textprep", "remove_handles", p.remove_handles);
    p.translate_emoji = cfg.get_bool("textprep", "translate_emoji", p.translate_emoji);
    p.expand_contractions =
        cfg.get_bool("textprep", "expand_contractions", p.expand_contractions);
    p.strip_nonalnum = cfg.get_bool("textprep", "strip_nonalnum", p.strip_nonalnum);
    p.collapse_whitespace =
        cfg.get_bool("textprep", "collapse_whitespace", p.collapse_whitespace);
    p.drop_stopwords = cfg.get_bool("textprep", "drop_stopwords", p.drop_stopwords);
    p.stopword_list = cfg.get("textprep", "stopword_list", p.stopword_list);
    p.emoji_table = cfg.get("textprep", "emoji_table", p.emoji_table);
    p.contraction_table = cfg.get("textprep", "contraction_table", p.contraction_table);
    return p;
}

TrainConfig train_from_config(const KvConfig& cfg) {
    TrainConfig t;
    t.threshold = cfg.get_double("train", "threshold", t.threshold);
    t.seed = cfg.get_uint("train", "seed", t.seed);
    t.nb_alpha = cfg.get_double("mnb", "alpha", t.nb_alpha);
    t.svm_lambda = cfg.get_double("svm", "lambda", t.svm_lambda);
    t.svm_epochs = uint32_t(cfg.get_uint("svm", "epochs", t.svm_epochs));
    t.rf_trees = uint32_t(cfg.get_uint("rf", "trees", t.rf_trees));
    t.rf_max_depth = uint32_t(cfg.get_uint("rf", "max_depth", t.rf_max_depth));
    t.rf_min_split = uint32_t(cfg.get_uint("rf", "min_split", t.rf_min_split));
    t.validate();
    return t;
}

TfidfMode tfidf_mode_from_config(const KvConfig& cfg) {
    std::string mode = cfg.get("features", "mode", "raw");
    if (mode == "raw") return TfidfMode::Raw;
    if (mode == "smooth_l2") return TfidfMode::SmoothL2;
    throw ConfigError("features.mode must be raw or smooth_l2, got " + mode);
}

uint32_t min_df_from_config(const KvConfig& cfg) {
    int64_t v = cfg.get_int("features", "min_df", 1);
    if (v < 1) throw ConfigError("features.min_df must be >= 1");
    return uint32_t(v);
}

LlmParams llm_params_from_config(const KvConfig& cfg) {
    LlmParams p;
    p.model = cfg.get("llm", "model", p.model);
    p.temperature = cfg.get_double("llm", "temperature", p.temperature);
    p.max_tokens = int(cfg.get_int("llm", "max_tokens", p.max_tokens));
    return p;
}

RetryPolicy retry_policy_from_config(const KvConfig& cfg) {
    RetryPolicy policy;
    policy.max_retries = int(cfg.get_int("llm", "retries", policy.max_retries));
    std::string backoff = cfg.get("llm", "backoff_ms", "");
    if (!backoff.empty()) {
        policy.backoff_ms.clear();
        std::istringstream in(backoff);
        std::string piece;
        while (std::getline(in, piece, ',')) {
            try {
                policy.backoff_ms.push_back(std::stoi(piece));
            } catch (const std::exception&) {
                throw ConfigError("llm.backoff_ms must be a comma list of milliseconds");
            }
        }
    }
    return policy;
}

HttpBackendConfig http_config_from_config(const KvConfig& cfg) {
    HttpBackendConfig http;
    http.base_url = cfg.get("llm", "endpoint", http.base_url);
    http.path = cfg.get("llm", "path", http.path);
    http.api_key_env = cfg.get("llm", "api_key_env", http.api_key_env);
    http.timeout_seconds = int(cfg.get_int("llm", "timeout_seconds", http.timeout_seconds));
    return http;
}

std::string snapshot_config(const KvConfig& cfg) { return cfg.render(); }

} // namespace vaxtag::cli
