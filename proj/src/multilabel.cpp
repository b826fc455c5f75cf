#include "vaxtag/multilabel.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "vaxtag/errors.hpp"
#include "vaxtag/rng.hpp"

namespace vaxtag {

std::string_view base_learner_name(BaseLearner base) {
    switch (base) {
    case BaseLearner::Mnb: return "mnb";
    case BaseLearner::Svm: return "svm";
    case BaseLearner::RandomForest: return "rf";
    }
    return "svm";
}

BaseLearner parse_base_learner(std::string_view name) {
    if (name == "mnb") return BaseLearner::Mnb;
    if (name == "svm") return BaseLearner::Svm;
    if (name == "rf") return BaseLearner::RandomForest;
    throw ConfigError("unknown base learner: " + std::string(name));
}

ChainOrder::ChainOrder(std::vector<ConcernLabel> order) : order_(std::move(order)) {
    if (order_.size() != kNumLabels) throw ConfigError("chain order must list all 12 labels");
    uint16_t seen = 0;
    for (ConcernLabel l : order_) seen = uint16_t(seen | (1u << int(l)));
    if (seen != 0x0fff) throw ConfigError("chain order must be a permutation of the 12 labels");
}

ChainOrder ChainOrder::identity() {
    std::vector<ConcernLabel> order(all_labels().begin(), all_labels().end());
    return ChainOrder(std::move(order));
}

ChainOrder ChainOrder::frequency_descending(const std::vector<LabelSet>& Y) {
    std::array<size_t, kNumLabels> counts{};
    for (const auto& set : Y) {
        for (ConcernLabel l : set.to_vector()) ++counts[size_t(l)];
    }
    std::vector<ConcernLabel> order(all_labels().begin(), all_labels().end());
    std::stable_sort(order.begin(), order.end(), [&](ConcernLabel a, ConcernLabel b) {
        if (counts[size_t(a)] != counts[size_t(b)]) return counts[size_t(a)] > counts[size_t(b)];
        return label_name(a) < label_name(b);
    });
    return ChainOrder(std::move(order));
}

ChainOrder ChainOrder::seeded_random(uint64_t seed) {
    std::vector<ConcernLabel> order(all_labels().begin(), all_labels().end());
    Rng rng(seed);
    rng.shuffle(order);
    return ChainOrder(std::move(order));
}

SparseVector augment_with_indicators(const SparseVector& x, uint32_t base_dim,
                                     const std::vector<uint8_t>& indicators) {
    SparseVector out = x.widened(base_dim + uint32_t(indicators.size()));
    for (size_t j = 0; j < indicators.size(); ++j) {
        if (indicators[j]) out.push_back(base_dim + uint32_t(j), 1.0);
    }
    return out;
}

namespace {

std::unique_ptr<BinaryClassifier> fit_base(BaseLearner base,
                                           const std::vector<SparseVector>& X,
                                           const std::vector<uint8_t>& y,
                                           const TrainConfig& cfg) {
    switch (base) {
    case BaseLearner::Mnb: return fit_mnb(X, y, cfg);
    case BaseLearner::Svm: return fit_linear_svm(X, y, cfg);
    case BaseLearner::RandomForest: return fit_random_forest(X, y, cfg);
    }
    throw ConfigError("unreachable base learner");
}

// Trains one per-label classifier, degrading to a constant stub when the
// label has no learnable signal (absent, singleton, or on every row).
std::unique_ptr<BinaryClassifier> fit_label_classifier(
    BaseLearner base, const std::vector<SparseVector>& X, const std::vector<uint8_t>& y,
    uint32_t dim, ConcernLabel label, const TrainConfig& cfg,
    std::vector<std::string>* warnings) {
    size_t pos = 0;
    for (uint8_t v : y) pos += v ? 1 : 0;
    auto warn = [&](const std::string& msg) {
        if (warnings) warnings->push_back(msg);
    };
    if (pos == 0) {
        return std::make_unique<ConstantClassifier>(dim, 0.0, cfg.threshold);
    }
    if (pos == 1) {
        warn("label '" + std::string(label_name(label)) +
             "' appears once; using a constant-negative stub");
        return std::make_unique<ConstantClassifier>(dim, 0.0, cfg.threshold);
    }
    if (pos == y.size()) {
        warn("label '" + std::string(label_name(label)) +
             "' appears on every row; using a constant-positive stub");
        return std::make_unique<ConstantClassifier>(dim, 1.0, cfg.threshold);
    }
    return fit_base(base, X, y, cfg);
}

LabelSet decide_with_fallback(const std::array<double, kNumLabels>& scores, double threshold) {
    LabelSet out;
    for (int i = 0; i < kNumLabels; ++i) {
        if (scores[i] >= threshold) out.insert(static_cast<ConcernLabel>(i));
    }
    if (out.empty()) {
        int best = 0;
        for (int i = 1; i < kNumLabels; ++i) {
            if (scores[i] > scores[best]) best = i;
        }
        out.insert(static_cast<ConcernLabel>(best));
    }
    return out;
}

void check_multilabel_inputs(const std::vector<SparseVector>& X,
                             const std::vector<LabelSet>& Y) {
    if (X.empty()) throw DataError("empty training set");
    if (X.size() != Y.size()) throw DataError("feature/label row counts differ");
    for (const auto& set : Y) {
        if (set.empty()) throw DataError("gold label sets must be non-empty");
    }
}

} // namespace

// ---------------------------------------------------------------- binary relevance

LabelSet BinaryRelevanceModel::predict(const SparseVector& x) const {
    return decide_with_fallback(scores(x), per_label_[0]->threshold());
}

std::array<double, kNumLabels> BinaryRelevanceModel::scores(const SparseVector& x) const {
    if (x.dimension() != dim_) {
        throw DataError("input dimension " + std::to_string(x.dimension()) +
                        " does not match model dimension " + std::to_string(dim_));
    }
    std::array<double, kNumLabels> out{};
    for (int i = 0; i < kNumLabels; ++i) out[i] = per_label_[i]->score(x);
    return out;
}

const BinaryClassifier& BinaryRelevanceModel::classifier(ConcernLabel l) const {
    return *per_label_[size_t(l)];
}

void BinaryRelevanceModel::save(std::ostream& out) const {
    out << "multilabel 1 br " << base_learner_name(base_) << ' ' << dim_ << '\n';
    for (int i = 0; i < kNumLabels; ++i) {
        out << "label " << label_name(static_cast<ConcernLabel>(i)) << '\n';
        per_label_[i]->save(out);
    }
}

std::unique_ptr<BinaryRelevanceModel>
fit_binary_relevance(const std::vector<SparseVector>& X, const std::vector<LabelSet>& Y,
                     BaseLearner base, const TrainConfig& cfg,
                     std::vector<std::string>* warnings) {
    check_multilabel_inputs(X, Y);
    auto model = std::make_unique<BinaryRelevanceModel>();
    model->dim_ = X[0].dimension();
    model->base_ = base;
    for (int i = 0; i < kNumLabels; ++i) {
        const auto label = static_cast<ConcernLabel>(i);
        std::vector<uint8_t> y(X.size());
        for (size_t r = 0; r < X.size(); ++r) y[r] = Y[r].contains(label) ? 1 : 0;
        model->per_label_[i] =
            fit_label_classifier(base, X, y, model->dim_, label, cfg, warnings);
    }
    return model;
}

// ---------------------------------------------------------------- classifier chain

LabelSet ClassifierChainModel::predict(const SparseVector& x) const {
    if (x.dimension() != dim_) {
        throw DataError("input dimension " + std::to_string(x.dimension()) +
                        " does not match model dimension " + std::to_string(dim_));
    }
    std::array<double, kNumLabels> scores{};
    std::vector<uint8_t> indicators;
    indicators.reserve(kNumLabels);
    for (int k = 0; k < kNumLabels; ++k) {
        SparseVector augmented = augment_with_indicators(x, dim_, indicators);
        const ConcernLabel label = order_.labels()[size_t(k)];
        const double s = links_[size_t(k)]->score(augmented);
        scores[size_t(label)] = s;
        indicators.push_back(s >= links_[size_t(k)]->threshold() ? 1 : 0);
    }
    return decide_with_fallback(scores, links_[0]->threshold());
}

void ClassifierChainModel::save(std::ostream& out) const {
    out << "multilabel 1 cc " << base_learner_name(base_) << ' ' << dim_ << '\n';
    out << "order";
    for (ConcernLabel l : order_.labels()) out << ' ' << label_name(l);
    out << '\n';
    for (int k = 0; k < kNumLabels; ++k) {
        out << "link " << k << '\n';
        links_[size_t(k)]->save(out);
    }
}

std::unique_ptr<ClassifierChainModel>
fit_classifier_chain(const std::vector<SparseVector>& X, const std::vector<LabelSet>& Y,
                     const ChainOrder& order, BaseLearner base, const TrainConfig& cfg,
                     std::vector<std::string>* warnings) {
    check_multilabel_inputs(X, Y);
    auto model = std::make_unique<ClassifierChainModel>();
    model->dim_ = X[0].dimension();
    model->base_ = base;
    model->order_ = order;

    // gold indicators for the chain prefix, per row
    std::vector<std::vector<uint8_t>> prefix(X.size());
    for (int k = 0; k < kNumLabels; ++k) {
        const ConcernLabel label = order.labels()[size_t(k)];
        std::vector<SparseVector> X_aug;
        X_aug.reserve(X.size());
        std::vector<uint8_t> y(X.size());
        for (size_t r = 0; r < X.size(); ++r) {
            X_aug.push_back(augment_with_indicators(X[r], model->dim_, prefix[r]));
            y[r] = Y[r].contains(label) ? 1 : 0;
        }
        model->links_[size_t(k)] = fit_label_classifier(
            base, X_aug, y, model->dim_ + uint32_t(k), label, cfg, warnings);
        for (size_t r = 0; r < X.size(); ++r) prefix[r].push_back(y[r]);
    }
    return model;
}

// ---------------------------------------------------------------- shared

std::vector<LabelSet> predict_batch(const MultiLabelModel& model,
                                    const std::vector<SparseVector>& X) {
    std::vector<LabelSet> out;
    out.reserve(X.size());
    for (const auto& x : X) out.push_back(model.predict(x));
    return out;
}

std::unique_ptr<MultiLabelModel> load_multilabel(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw DataError("multilabel model: missing header");
    std::istringstream hs(header);
    std::string magic, kind, base_str;
    int version = 0;
    uint32_t dim = 0;
    hs >> magic >> version >> kind >> base_str >> dim;
    if (magic != "multilabel" || version != 1) {
        throw DataError("multilabel model: bad header: " + header);
    }
    const BaseLearner base = parse_base_learner(base_str);

    auto expect_line = [&](const std::string& prefix) {
        std::string line;
        if (!std::getline(in, line) || line.compare(0, prefix.size(), prefix) != 0) {
            throw DataError("multilabel model: expected '" + prefix + "' line");
        }
        return line;
    };

    if (kind == "br") {
        auto model = std::make_unique<BinaryRelevanceModel>();
        model->dim_ = dim;
        model->base_ = base;
        for (int i = 0; i < kNumLabels; ++i) {
            expect_line("label ");
            model->per_label_[i] = load_classifier(in);
        }
        return model;
    }
    if (kind == "cc") {
        auto model = std::make_unique<ClassifierChainModel>();
        model->dim_ = dim;
        model->base_ = base;
        std::string order_line = expect_line("order");
        std::istringstream os(order_line);
        std::string word;
        os >> word; // "order"
        std::vector<ConcernLabel> order;
        while (os >> word) {
            auto label = parse_label(word);
            if (!label) throw DataError("multilabel model: bad order label: " + word);
            order.push_back(*label);
        }
        model->order_ = ChainOrder(std::move(order));
        for (int k = 0; k < kNumLabels; ++k) {
            expect_line("link ");
            model->links_[size_t(k)] = load_classifier(in);
        }
        return model;
    }
    throw DataError("multilabel model: unknown kind '" + kind + "'");
}

} // namespace vaxtag
