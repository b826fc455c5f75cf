#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vaxtag/labels.hpp"
#include "vaxtag/textprep.hpp"

namespace vaxtag {

struct TweetRecord {
    std::string id;
    std::string text; // raw bytes as ingested; cleaning never touches this
    std::optional<LabelSet> gold;
};

enum class DatasetFormat { Labeled, Unlabeled };

struct Dataset {
    std::vector<TweetRecord> records;
    std::string source_path;
    DatasetFormat format = DatasetFormat::Labeled;

    size_t size() const { return records.size(); }
};

/// Loads a CSV dataset. Labeled format expects header "id,text,labels" with
/// space-separated canonical label names; unlabeled expects "id,text".
/// Throws DataError on a missing file, bad header, wrong column count,
/// unknown label token or duplicate id (all naming the offending row).
/// A gold set pairing "none" with other labels is kept as-is but warned about.
Dataset load_dataset(const std::string& path, DatasetFormat format,
                     std::vector<std::string>* warnings = nullptr);

/// Writes the dataset back in its own format (gold sets only when labeled).
void save_dataset(const Dataset& ds, const std::string& path);

/// Deterministic Fisher-Yates shuffle under the seed, then a prefix/suffix
/// cut. The validation partition takes ceil((1-ratio)*N) records so an
/// 80:20 split of 9921 yields 7936/1985. Throws DataError when either side
/// would be empty.
std::pair<Dataset, Dataset> split_train_validation(const Dataset& ds, double ratio,
                                                   uint64_t seed);

/// Per-label record counts. Throws DataError if any record lacks a gold set.
std::map<ConcernLabel, size_t> label_distribution(const Dataset& ds);

/// Top-k preprocessed terms by frequency, ties broken lexicographically.
std::vector<std::pair<std::string, size_t>> top_terms(const Dataset& ds, size_t k,
                                                      const PipelineConfig& cfg,
                                                      const PrepTables& tables);

} // namespace vaxtag
