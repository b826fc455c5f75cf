#include "vaxtag/tfidf.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "vaxtag/errors.hpp"

namespace vaxtag {

void SparseVector::push_back(uint32_t index, double weight) {
    if (!entries_.empty() && index <= entries_.back().first) {
        throw DataError("sparse vector indices must be strictly increasing");
    }
    if (index >= dimension_) throw DataError("sparse vector index out of range");
    if (!std::isfinite(weight)) throw DataError("sparse vector weights must be finite");
    entries_.emplace_back(index, weight);
}

double SparseVector::at(uint32_t index) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                               [](const auto& e, uint32_t i) { return e.first < i; });
    if (it != entries_.end() && it->first == index) return it->second;
    return 0.0;
}

double SparseVector::l2_norm() const {
    double sum = 0.0;
    for (const auto& [i, w] : entries_) sum += w * w;
    return std::sqrt(sum);
}

void SparseVector::scale(double factor) {
    for (auto& [i, w] : entries_) w *= factor;
}

SparseVector SparseVector::widened(uint32_t new_dimension) const {
    if (new_dimension < dimension_) throw DataError("widened() cannot shrink a vector");
    SparseVector out(new_dimension);
    out.entries_ = entries_;
    return out;
}

double dot(const SparseVector& x, const std::vector<double>& dense_w) {
    double sum = 0.0;
    for (const auto& [i, w] : x.entries()) {
        if (i < dense_w.size()) sum += w * dense_w[i];
    }
    return sum;
}

TfidfModel fit_vocabulary(const std::vector<std::vector<std::string>>& docs,
                          uint32_t min_df, TfidfMode mode) {
    if (docs.empty()) throw DataError("cannot fit a vocabulary on zero documents");
    if (min_df < 1) throw DataError("min_df must be >= 1");

    std::map<std::string, uint32_t> df; // ordered: vocabulary comes out lexicographic
    for (const auto& doc : docs) {
        std::map<std::string, bool> seen;
        for (const auto& term : doc) {
            if (!seen[term]) {
                seen[term] = true;
                ++df[term];
            }
        }
    }

    TfidfModel model;
    model.mode = mode;
    model.vocab.doc_count = docs.size();
    for (const auto& [term, count] : df) {
        if (count < min_df) continue;
        model.vocab.index[term] = model.vocab.size();
        model.vocab.terms.push_back(term);
        model.vocab.df.push_back(count);
    }
    if (model.vocab.terms.empty()) {
        throw DataError("empty vocabulary: min_df " + std::to_string(min_df) +
                        " filtered out every term");
    }
    const double n = static_cast<double>(model.vocab.doc_count);
    model.idf.reserve(model.vocab.size());
    for (uint32_t i = 0; i < model.vocab.size(); ++i) {
        const double d = static_cast<double>(model.vocab.df[i]);
        double idf = mode == TfidfMode::Raw ? std::log(n / d)
                                            : std::log((1.0 + n) / (1.0 + d)) + 1.0;
        model.idf.push_back(idf);
    }
    return model;
}

double term_frequency(const std::string& term, const std::vector<std::string>& doc) {
    if (doc.empty()) throw DataError("term_frequency over an empty document");
    size_t count = 0;
    for (const auto& t : doc) {
        if (t == term) ++count;
    }
    return static_cast<double>(count) / static_cast<double>(doc.size());
}

namespace {

// (column, raw count) pairs for in-vocabulary terms, index-sorted
std::map<uint32_t, uint32_t> vocab_counts(const std::vector<std::string>& doc,
                                          const TfidfModel& model) {
    std::map<uint32_t, uint32_t> counts;
    for (const auto& term : doc) {
        auto it = model.vocab.index.find(term);
        if (it != model.vocab.index.end()) ++counts[it->second];
    }
    return counts;
}

} // namespace

SparseVector transform(const std::vector<std::string>& doc, const TfidfModel& model) {
    SparseVector vec(model.vocab.size());
    if (doc.empty()) return vec;
    const double len = static_cast<double>(doc.size());
    for (const auto& [col, count] : vocab_counts(doc, model)) {
        vec.push_back(col, (static_cast<double>(count) / len) * model.idf[col]);
    }
    if (model.mode == TfidfMode::SmoothL2) {
        double norm = vec.l2_norm();
        if (norm > 0.0) vec.scale(1.0 / norm);
    }
    return vec;
}

SparseVector count_vector(const std::vector<std::string>& doc, const TfidfModel& model) {
    SparseVector vec(model.vocab.size());
    for (const auto& [col, count] : vocab_counts(doc, model)) {
        vec.push_back(col, static_cast<double>(count));
    }
    return vec;
}

void save_tfidf(const TfidfModel& model, std::ostream& out) {
    out << "tfidf 1 " << (model.mode == TfidfMode::Raw ? "raw" : "smooth_l2") << ' '
        << model.vocab.doc_count << ' ' << model.vocab.size() << '\n';
    out.precision(17);
    for (uint32_t i = 0; i < model.vocab.size(); ++i) {
        out << model.vocab.terms[i] << '\t' << model.vocab.df[i] << '\t' << model.idf[i] << '\n';
    }
}

TfidfModel load_tfidf(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw DataError("tfidf model: missing header");
    std::istringstream hs(header);
    std::string magic, mode_str;
    int version = 0;
    uint64_t n = 0;
    uint32_t v = 0;
    hs >> magic >> version >> mode_str >> n >> v;
    if (magic != "tfidf" || version != 1) throw DataError("tfidf model: bad header: " + header);

    TfidfModel model;
    if (mode_str == "raw") model.mode = TfidfMode::Raw;
    else if (mode_str == "smooth_l2") model.mode = TfidfMode::SmoothL2;
    else throw DataError("tfidf model: unknown mode: " + mode_str);
    model.vocab.doc_count = n;

    // exactly V term lines, so models can live inside larger bundle files
    std::string line;
    for (uint32_t k = 0; k < v; ++k) {
        if (!std::getline(in, line)) {
            throw DataError("tfidf model: header promises " + std::to_string(v) +
                            " terms, found " + std::to_string(k));
        }
        size_t t1 = line.find('\t');
        size_t t2 = line.find('\t', t1 == std::string::npos ? t1 : t1 + 1);
        if (t1 == std::string::npos || t2 == std::string::npos) {
            throw DataError("tfidf model: malformed line: " + line);
        }
        std::string term = line.substr(0, t1);
        uint32_t df = static_cast<uint32_t>(std::stoul(line.substr(t1 + 1, t2 - t1 - 1)));
        double idf = std::stod(line.substr(t2 + 1));
        model.vocab.index[term] = model.vocab.size();
        model.vocab.terms.push_back(term);
        model.vocab.df.push_back(df);
        model.idf.push_back(idf);
    }
    return model;
}

} // namespace vaxtag
