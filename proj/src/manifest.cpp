#include "vaxtag/manifest.hpp"

#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vaxtag/errors.hpp"
#include "vaxtag/sha256.hpp"

namespace vaxtag {

using nlohmann::json;

bool manifest_equivalent(const RunManifest& a, const RunManifest& b) {
    return a.run_name == b.run_name && a.method == b.method &&
           a.config_snapshot == b.config_snapshot && a.seed == b.seed &&
           a.dataset_digests == b.dataset_digests;
}

void write_manifest(const RunManifest& manifest, const std::string& path) {
    if (std::ifstream probe(path, std::ios::binary); probe) {
        RunManifest existing = read_manifest(path);
        if (!manifest_equivalent(existing, manifest)) {
            throw ConfigError("manifest exists with different contents: " + path);
        }
        return; // identical rerun: keep the original record
    }

    json doc;
    doc["run_name"] = manifest.run_name;
    doc["method"] = manifest.method;
    doc["config_snapshot"] = manifest.config_snapshot;
    doc["seed"] = manifest.seed;
    doc["dataset_digests"] = manifest.dataset_digests;
    doc["timestamp"] = manifest.timestamp.empty() ? iso8601_utc_now() : manifest.timestamp;

    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write manifest: " + path);
    out << doc.dump(2) << '\n';
}

RunManifest read_manifest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open manifest: " + path);
    json doc;
    try {
        in >> doc;
        RunManifest m;
        m.run_name = doc.at("run_name").get<std::string>();
        m.method = doc.at("method").get<std::string>();
        m.config_snapshot = doc.at("config_snapshot").get<std::string>();
        m.seed = doc.at("seed").get<uint64_t>();
        m.dataset_digests =
            doc.at("dataset_digests").get<std::map<std::string, std::string>>();
        m.timestamp = doc.at("timestamp").get<std::string>();
        return m;
    } catch (const json::exception& e) {
        throw ConfigError("corrupt manifest " + path + ": " + e.what());
    }
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file for digest: " + path);
    Sha256 h;
    char buf[65536];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        h.update(buf, size_t(in.gcount()));
        if (!in) break;
    }
    return h.hex_digest();
}

std::string iso8601_utc_now() {
    std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

} // namespace vaxtag
