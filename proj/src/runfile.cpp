#include "vaxtag/runfile.hpp"

#include <fstream>
#include <unordered_set>

#include "vaxtag/csv.hpp"
#include "vaxtag/errors.hpp"

namespace vaxtag {

void write_run_file(const std::string& path, const std::vector<RunRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write run file: " + path);
    write_csv_row(out, {"id", "labels"});
    for (const auto& row : rows) {
        if (row.labels.empty()) {
            throw DataError("run row '" + row.id + "' has no labels; run files must be total");
        }
        write_csv_row(out, {row.id, render_labels(row.labels)});
    }
    if (!out) throw DataError("short write: " + path);
}

std::vector<RunRow> read_run_file(const std::string& path,
                                  std::vector<std::string>* warnings) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open run file: " + path);
    auto rows = parse_csv(in);
    if (rows.empty() || rows[0] != CsvRow{"id", "labels"}) {
        throw DataError("run file header must be id,labels: " + path);
    }
    std::vector<RunRow> out;
    out.reserve(rows.size() - 1);
    std::unordered_set<std::string> seen;
    for (size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != 2) {
            throw DataError("run file row " + std::to_string(r + 1) + " needs 2 columns");
        }
        RunRow row;
        row.id = rows[r][0];
        if (row.id.empty()) throw DataError("empty id in run file row " + std::to_string(r + 1));
        if (!seen.insert(row.id).second) {
            throw DataError("duplicate id '" + row.id + "' in run file");
        }
        std::string bad;
        auto labels = parse_labels(rows[r][1], &bad);
        if (!labels) {
            throw DataError("unknown label token '" + bad + "' in run file row " +
                            std::to_string(r + 1));
        }
        if (labels->empty()) {
            throw DataError("empty label set in run file row " + std::to_string(r + 1));
        }
        LabelSet normalized = labels->normalized();
        if (normalized != *labels && warnings) {
            warnings->push_back("row '" + row.id + "': dropped 'none' from a multi-label set");
        }
        row.labels = normalized;
        out.push_back(std::move(row));
    }
    return out;
}

void write_reasoning_sidecar(const std::string& path, const std::vector<ReasoningRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write reasoning sidecar: " + path);
    write_csv_row(out, {"id", "reasoning", "warnings"});
    for (const auto& row : rows) {
        write_csv_row(out, {row.id, row.reasoning, row.warnings});
    }
    if (!out) throw DataError("short write: " + path);
}

} // namespace vaxtag
