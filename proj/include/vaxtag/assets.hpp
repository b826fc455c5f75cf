#pragma once

#include <string>
#include <utility>
#include <vector>

namespace vaxtag {

// Bundled data tables live as plain-text files: UTF-8, one entry per line,
// tab-separated columns, '#' starts a comment line. A line with no tab is a
// single-column entry (used by the stopword list).

struct AssetLine {
    std::vector<std::string> cols;
};

/// Reads an asset table, dropping comments and blank lines.
/// Throws ConfigError if the file cannot be opened.
std::vector<AssetLine> load_asset_table(const std::string& path);

/// Resolution order for the asset directory: explicit argument (if non-empty),
/// then $VAXTAG_ASSETS, then the build-time default.
std::string resolve_asset_dir(const std::string& explicit_dir = "");

} // namespace vaxtag
