#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

namespace vaxtag {

// Sorted sparse row; indices strictly increasing, weights finite and >= 0.
class SparseVector {
public:
    SparseVector() = default;
    explicit SparseVector(uint32_t dimension) : dimension_(dimension) {}

    /// Entries must arrive in strictly increasing index order; enforced.
    void push_back(uint32_t index, double weight);

    const std::vector<std::pair<uint32_t, double>>& entries() const { return entries_; }
    uint32_t dimension() const { return dimension_; }
    bool empty() const { return entries_.empty(); }

    double at(uint32_t index) const; // 0.0 when absent
    double l2_norm() const;
    void scale(double factor);

    /// Same entries re-homed into a wider vector (chain augmentation).
    SparseVector widened(uint32_t new_dimension) const;

private:
    std::vector<std::pair<uint32_t, double>> entries_;
    uint32_t dimension_ = 0;
};

double dot(const SparseVector& x, const std::vector<double>& dense_w);

enum class TfidfMode {
    Raw,      // tf = count/len, idf = ln(N/df), no normalization
    SmoothL2, // idf = ln((1+N)/(1+df)) + 1, then L2 row normalization
};

struct Vocabulary {
    std::vector<std::string> terms;           // lexicographic, index = column
    std::vector<uint32_t> df;                 // per-term document frequency
    uint64_t doc_count = 0;                   // N
    std::unordered_map<std::string, uint32_t> index;

    uint32_t size() const { return static_cast<uint32_t>(terms.size()); }
};

struct TfidfModel {
    Vocabulary vocab;
    std::vector<double> idf;
    TfidfMode mode = TfidfMode::Raw;
};

/// Builds the vocabulary (terms with df >= min_df, lexicographic order) and
/// the idf table. Throws DataError when docs is empty or min_df filters
/// everything out.
TfidfModel fit_vocabulary(const std::vector<std::vector<std::string>>& docs,
                          uint32_t min_df = 1, TfidfMode mode = TfidfMode::Raw);

/// count(term in doc) / len(doc). Throws DataError on an empty doc.
double term_frequency(const std::string& term, const std::vector<std::string>& doc);

/// tf-idf weights for in-vocabulary terms; out-of-vocabulary terms drop out
/// silently, an empty doc maps to the zero vector.
SparseVector transform(const std::vector<std::string>& doc, const TfidfModel& model);

/// Raw in-vocabulary term counts (multinomial features).
SparseVector count_vector(const std::vector<std::string>& doc, const TfidfModel& model);

// Versioned text persistence: header "tfidf 1 <mode> <N> <V>", then one
// "term<TAB>df<TAB>idf" line per column in index order.
void save_tfidf(const TfidfModel& model, std::ostream& out);
TfidfModel load_tfidf(std::istream& in);

} // namespace vaxtag
