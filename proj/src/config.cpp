#include "vaxtag/config.hpp"

#include <fstream>
#include <sstream>

#include "vaxtag/errors.hpp"

namespace vaxtag {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

KvConfig KvConfig::parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str(), path);
}

KvConfig KvConfig::parse_string(const std::string& text, const std::string& origin) {
    KvConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']' || t.size() < 3) {
                throw ConfigError(origin + ":" + std::to_string(lineno) +
                                  ": malformed section header: " + t);
            }
            section = trim(t.substr(1, t.size() - 2));
            cfg.sections_[section]; // a section may be empty
            continue;
        }
        size_t eq = t.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected 'key = value': " + t);
        }
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        }
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
        }
        cfg.sections_[section][key] = value;
    }
    return cfg;
}

bool KvConfig::has(const std::string& section, const std::string& key) const {
    auto sit = sections_.find(section);
    return sit != sections_.end() && sit->second.count(key) > 0;
}

std::string KvConfig::get(const std::string& section, const std::string& key,
                          const std::string& fallback) const {
    auto sit = sections_.find(section);
    if (sit == sections_.end()) return fallback;
    auto kit = sit->second.find(key);
    return kit == sit->second.end() ? fallback : kit->second;
}

double KvConfig::get_double(const std::string& section, const std::string& key,
                            double fallback) const {
    if (!has(section, key)) return fallback;
    try {
        return std::stod(get(section, key));
    } catch (const std::exception&) {
        throw ConfigError("config value " + section + "." + key + " is not a number: " +
                          get(section, key));
    }
}

int64_t KvConfig::get_int(const std::string& section, const std::string& key,
                          int64_t fallback) const {
    if (!has(section, key)) return fallback;
    try {
        return std::stoll(get(section, key));
    } catch (const std::exception&) {
        throw ConfigError("config value " + section + "." + key + " is not an integer: " +
                          get(section, key));
    }
}

uint64_t KvConfig::get_uint(const std::string& section, const std::string& key,
                            uint64_t fallback) const {
    if (!has(section, key)) return fallback;
    try {
        return std::stoull(get(section, key));
    } catch (const std::exception&) {
        throw ConfigError("config value " + section + "." + key +
                          " is not a non-negative integer: " + get(section, key));
    }
}

bool KvConfig::get_bool(const std::string& section, const std::string& key,
                        bool fallback) const {
    if (!has(section, key)) return fallback;
    std::string v = get(section, key);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("config value " + section + "." + key + " is not a boolean: " + v);
}

void KvConfig::set(const std::string& section, const std::string& key,
                   const std::string& value) {
    sections_[section][key] = value;
}

std::string KvConfig::render() const {
    std::ostringstream out;
    bool first = true;
    for (const auto& [section, keys] : sections_) {
        if (!first) out << '\n';
        first = false;
        out << '[' << section << "]\n";
        for (const auto& [key, value] : keys) {
            out << key << " = " << value << '\n';
        }
    }
    return out.str();
}

} // namespace vaxtag
