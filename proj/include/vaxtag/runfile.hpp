#pragma once

#include <string>
#include <vector>

#include "vaxtag/labels.hpp"

namespace vaxtag {

// Run file: CSV "id,labels", one row per input tweet, labels space-separated
// canonical names. The reasoning sidecar is "id,reasoning,warnings".

struct RunRow {
    std::string id;
    LabelSet labels;
};

struct ReasoningRow {
    std::string id;
    std::string reasoning;
    std::string warnings; // '; '-joined
};

void write_run_file(const std::string& path, const std::vector<RunRow>& rows);

/// Reads and normalizes predictions ("none" drops when other labels are
/// present, each occurrence warned). Throws DataError on format problems.
std::vector<RunRow> read_run_file(const std::string& path,
                                  std::vector<std::string>* warnings = nullptr);

void write_reasoning_sidecar(const std::string& path, const std::vector<ReasoningRow>& rows);

} // namespace vaxtag
