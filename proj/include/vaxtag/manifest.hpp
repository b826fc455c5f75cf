#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace vaxtag {

// Reproducibility record written next to every produced artifact. Manifests
// are write-once: rewriting is only allowed when nothing but the timestamp
// would change.
struct RunManifest {
    std::string run_name;
    std::string method; // mnb | svm | rf | br | cc | llm
    std::string config_snapshot;
    uint64_t seed = 0;
    std::map<std::string, std::string> dataset_digests; // path -> sha256 of file bytes
    std::string timestamp;                              // ISO 8601 UTC, set on write
};

/// True when the manifests agree on everything except the timestamp.
bool manifest_equivalent(const RunManifest& a, const RunManifest& b);

/// Writes (or verifies) the manifest. An existing equivalent manifest is left
/// untouched; a conflicting one raises ConfigError.
void write_manifest(const RunManifest& manifest, const std::string& path);

RunManifest read_manifest(const std::string& path);

/// sha256 hex of a file's bytes (DataError when unreadable).
std::string file_digest(const std::string& path);

std::string iso8601_utc_now();

} // namespace vaxtag
