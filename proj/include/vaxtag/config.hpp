#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace vaxtag {

// Flat sectioned key = value config ("[section]" headers, '#' comments,
// optional double quotes around values). CLI flags override these values.
class KvConfig {
public:
    KvConfig() = default;

    static KvConfig parse_file(const std::string& path);  // ConfigError when unreadable
    static KvConfig parse_string(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& section, const std::string& key) const;
    std::string get(const std::string& section, const std::string& key,
                    const std::string& fallback = "") const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    int64_t get_int(const std::string& section, const std::string& key, int64_t fallback) const;
    uint64_t get_uint(const std::string& section, const std::string& key,
                      uint64_t fallback) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;

    void set(const std::string& section, const std::string& key, const std::string& value);

    /// Canonical re-rendering (sections and keys sorted); manifest snapshot.
    std::string render() const;

    const std::map<std::string, std::map<std::string, std::string>>& sections() const {
        return sections_;
    }

private:
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

} // namespace vaxtag
