#include "vaxtag/assets.hpp"

#include <cstdlib>
#include <fstream>

#include "vaxtag/errors.hpp"

#ifndef VAXTAG_DEFAULT_ASSET_DIR
#define VAXTAG_DEFAULT_ASSET_DIR "assets"
#endif

namespace vaxtag {

std::vector<AssetLine> load_asset_table(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open asset file: " + path);
    std::vector<AssetLine> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        AssetLine entry;
        size_t start = 0;
        for (;;) {
            size_t tab = line.find('\t', start);
            if (tab == std::string::npos) {
                entry.cols.push_back(line.substr(start));
                break;
            }
            entry.cols.push_back(line.substr(start, tab - start));
            start = tab + 1;
        }
        lines.push_back(std::move(entry));
    }
    return lines;
}

std::string resolve_asset_dir(const std::string& explicit_dir) {
    if (!explicit_dir.empty()) return explicit_dir;
    if (const char* env = std::getenv("VAXTAG_ASSETS"); env && *env) return env;
    return VAXTAG_DEFAULT_ASSET_DIR;
}

} // namespace vaxtag
