#include "vaxtag/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include "vaxtag/csv.hpp"
#include "vaxtag/errors.hpp"
#include "vaxtag/rng.hpp"

namespace vaxtag {

Dataset load_dataset(const std::string& path, DatasetFormat format,
                     std::vector<std::string>* warnings) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open dataset: " + path);

    auto rows = parse_csv(in);
    if (rows.empty()) throw DataError("dataset is empty (no header): " + path);

    const size_t expected_cols = format == DatasetFormat::Labeled ? 3 : 2;
    const CsvRow expected_header = format == DatasetFormat::Labeled
                                       ? CsvRow{"id", "text", "labels"}
                                       : CsvRow{"id", "text"};
    if (rows[0] != expected_header) {
        throw DataError("dataset header mismatch in " + path + " (expected " +
                        (format == DatasetFormat::Labeled ? "id,text,labels" : "id,text") + ")");
    }

    Dataset ds;
    ds.source_path = path;
    ds.format = format;
    ds.records.reserve(rows.size() - 1);
    std::unordered_set<std::string> seen_ids;

    for (size_t r = 1; r < rows.size(); ++r) {
        const CsvRow& row = rows[r];
        const std::string where = "row " + std::to_string(r + 1); // 1-based incl. header
        if (row.size() != expected_cols) {
            throw DataError("malformed " + where + " in " + path + ": expected " +
                            std::to_string(expected_cols) + " columns, got " +
                            std::to_string(row.size()));
        }
        TweetRecord rec;
        rec.id = row[0];
        rec.text = row[1];
        if (rec.id.empty()) throw DataError("empty id at " + where + " in " + path);
        if (!seen_ids.insert(rec.id).second) {
            throw DataError("duplicate id '" + rec.id + "' at " + where + " in " + path);
        }
        if (format == DatasetFormat::Labeled) {
            std::string bad;
            auto labels = parse_labels(row[2], &bad);
            if (!labels) {
                throw DataError("unknown label token '" + bad + "' at " + where + " in " + path);
            }
            if (labels->empty()) {
                throw DataError("empty gold label set at " + where + " in " + path);
            }
            if (labels->contains(ConcernLabel::None) && labels->size() > 1 && warnings) {
                warnings->push_back("record '" + rec.id + "': 'none' paired with other labels");
            }
            rec.gold = *labels;
        }
        ds.records.push_back(std::move(rec));
    }
    return ds;
}

void save_dataset(const Dataset& ds, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write dataset: " + path);
    if (ds.format == DatasetFormat::Labeled) {
        write_csv_row(out, {"id", "text", "labels"});
        for (const auto& rec : ds.records) {
            if (!rec.gold) throw DataError("record '" + rec.id + "' has no gold labels");
            write_csv_row(out, {rec.id, rec.text, render_labels(*rec.gold)});
        }
    } else {
        write_csv_row(out, {"id", "text"});
        for (const auto& rec : ds.records) {
            write_csv_row(out, {rec.id, rec.text});
        }
    }
    if (!out) throw DataError("short write: " + path);
}

std::pair<Dataset, Dataset> split_train_validation(const Dataset& ds, double ratio,
                                                   uint64_t seed) {
    if (!(ratio > 0.0 && ratio < 1.0)) throw DataError("split ratio must be in (0,1)");
    if (ds.records.empty()) throw DataError("cannot split an empty dataset");

    const size_t n = ds.records.size();
    // validation rounds up, so 9921 at 0.8 goes 7936/1985
    const size_t valid_size = static_cast<size_t>(std::ceil((1.0 - ratio) * double(n)));
    const size_t train_size = n - valid_size;
    if (train_size == 0 || valid_size == 0) {
        throw DataError("degenerate split: ratio " + std::to_string(ratio) + " on " +
                        std::to_string(n) + " records leaves an empty partition");
    }

    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    Rng rng(seed);
    rng.shuffle(order);

    Dataset train, valid;
    train.format = valid.format = ds.format;
    train.source_path = valid.source_path = ds.source_path;
    train.records.reserve(train_size);
    valid.records.reserve(valid_size);
    for (size_t i = 0; i < train_size; ++i) train.records.push_back(ds.records[order[i]]);
    for (size_t i = train_size; i < n; ++i) valid.records.push_back(ds.records[order[i]]);
    return {std::move(train), std::move(valid)};
}

std::map<ConcernLabel, size_t> label_distribution(const Dataset& ds) {
    std::map<ConcernLabel, size_t> counts;
    for (ConcernLabel l : all_labels()) counts[l] = 0;
    for (const auto& rec : ds.records) {
        if (!rec.gold) throw DataError("record '" + rec.id + "' has no gold labels");
        for (ConcernLabel l : rec.gold->to_vector()) ++counts[l];
    }
    return counts;
}

std::vector<std::pair<std::string, size_t>> top_terms(const Dataset& ds, size_t k,
                                                      const PipelineConfig& cfg,
                                                      const PrepTables& tables) {
    std::unordered_map<std::string, size_t> freq;
    for (const auto& rec : ds.records) {
        for (auto& term : preprocess(rec.text, cfg, tables)) ++freq[term];
    }
    std::vector<std::pair<std::string, size_t>> ranked(freq.begin(), freq.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (ranked.size() > k) ranked.resize(k);
    return ranked;
}

} // namespace vaxtag
