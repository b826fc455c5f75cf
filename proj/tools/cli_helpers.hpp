#pragma once

#include <string>

#include "vaxtag/classifiers.hpp"
#include "vaxtag/config.hpp"
#include "vaxtag/llm.hpp"
#include "vaxtag/textprep.hpp"
#include "vaxtag/tfidf.hpp"

namespace vaxtag::cli {

// Effective settings = defaults, overlaid by --config, overlaid by flags.
PipelineConfig pipeline_from_config(const KvConfig& cfg);
TrainConfig train_from_config(const KvConfig& cfg);
TfidfMode tfidf_mode_from_config(const KvConfig& cfg);
uint32_t min_df_from_config(const KvConfig& cfg);
LlmParams llm_params_from_config(const KvConfig& cfg);
RetryPolicy retry_policy_from_config(const KvConfig& cfg);
HttpBackendConfig http_config_from_config(const KvConfig& cfg);

/// Renders the fully-resolved settings for the manifest snapshot.
std::string snapshot_config(const KvConfig& cfg);

} // namespace vaxtag::cli
