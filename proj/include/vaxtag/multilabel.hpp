#pragma once

#include <array>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "vaxtag/classifiers.hpp"
#include "vaxtag/labels.hpp"
#include "vaxtag/tfidf.hpp"

namespace vaxtag {

enum class BaseLearner { Mnb, Svm, RandomForest };

std::string_view base_learner_name(BaseLearner base);
BaseLearner parse_base_learner(std::string_view name); // throws ConfigError

// Permutation of the 12 label ordinals; drives chain training order.
class ChainOrder {
public:
    ChainOrder() = default;
    explicit ChainOrder(std::vector<ConcernLabel> order); // throws on non-permutation

    static ChainOrder identity();
    /// Label frequency descending over Y, ties by canonical name.
    static ChainOrder frequency_descending(const std::vector<LabelSet>& Y);
    static ChainOrder seeded_random(uint64_t seed);

    const std::vector<ConcernLabel>& labels() const { return order_; }

private:
    std::vector<ConcernLabel> order_;
};

// Multi-label predictor contract. predict() never returns an empty set:
// when every per-label decision is negative the highest-scoring label wins
// (ties to the lowest ordinal).
class MultiLabelModel {
public:
    virtual ~MultiLabelModel() = default;
    virtual LabelSet predict(const SparseVector& x) const = 0;
    virtual uint32_t feature_dimension() const = 0;
    virtual std::string kind() const = 0;
    virtual BaseLearner base() const = 0;
    virtual void save(std::ostream& out) const = 0;
};

class BinaryRelevanceModel final : public MultiLabelModel {
public:
    LabelSet predict(const SparseVector& x) const override;
    uint32_t feature_dimension() const override { return dim_; }
    std::string kind() const override { return "br"; }
    BaseLearner base() const override { return base_; }
    void save(std::ostream& out) const override;

    const BinaryClassifier& classifier(ConcernLabel l) const;
    /// Per-label scores in ordinal order.
    std::array<double, kNumLabels> scores(const SparseVector& x) const;

private:
    friend std::unique_ptr<BinaryRelevanceModel>
    fit_binary_relevance(const std::vector<SparseVector>&, const std::vector<LabelSet>&,
                         BaseLearner, const TrainConfig&, std::vector<std::string>*);
    friend std::unique_ptr<MultiLabelModel> load_multilabel(std::istream&);
    uint32_t dim_ = 0;
    BaseLearner base_ = BaseLearner::Svm;
    std::array<std::unique_ptr<BinaryClassifier>, kNumLabels> per_label_;
};

// Chain link k is trained on the base features plus indicator columns for
// the gold values of the chain-previous labels; prediction feeds its own
// decisions forward instead.
class ClassifierChainModel final : public MultiLabelModel {
public:
    LabelSet predict(const SparseVector& x) const override;
    uint32_t feature_dimension() const override { return dim_; }
    std::string kind() const override { return "cc"; }
    BaseLearner base() const override { return base_; }
    void save(std::ostream& out) const override;

    const ChainOrder& order() const { return order_; }
    const BinaryClassifier& link(size_t k) const { return *links_[k]; }

private:
    friend std::unique_ptr<ClassifierChainModel>
    fit_classifier_chain(const std::vector<SparseVector>&, const std::vector<LabelSet>&,
                         const ChainOrder&, BaseLearner, const TrainConfig&,
                         std::vector<std::string>*);
    friend std::unique_ptr<MultiLabelModel> load_multilabel(std::istream&);
    uint32_t dim_ = 0;
    BaseLearner base_ = BaseLearner::Svm;
    ChainOrder order_;
    std::array<std::unique_ptr<BinaryClassifier>, kNumLabels> links_; // by chain position
};

/// One classifier per label. Labels with fewer than two positive examples
/// get a constant-negative stub (warned when they appear exactly once);
/// labels positive on every row get a constant-positive stub, also warned.
std::unique_ptr<BinaryRelevanceModel>
fit_binary_relevance(const std::vector<SparseVector>& X, const std::vector<LabelSet>& Y,
                     BaseLearner base, const TrainConfig& cfg,
                     std::vector<std::string>* warnings = nullptr);

std::unique_ptr<ClassifierChainModel>
fit_classifier_chain(const std::vector<SparseVector>& X, const std::vector<LabelSet>& Y,
                     const ChainOrder& order, BaseLearner base, const TrainConfig& cfg,
                     std::vector<std::string>* warnings = nullptr);

/// Element-wise predict, order preserving. Throws DataError when an input
/// dimension disagrees with the model.
std::vector<LabelSet> predict_batch(const MultiLabelModel& model,
                                    const std::vector<SparseVector>& X);

std::unique_ptr<MultiLabelModel> load_multilabel(std::istream& in);

/// Builds the chain-augmented vector: x widened to base_dim + indicators.size()
/// with one 0/1 column per already-decided label.
SparseVector augment_with_indicators(const SparseVector& x, uint32_t base_dim,
                                     const std::vector<uint8_t>& indicators);

} // namespace vaxtag
