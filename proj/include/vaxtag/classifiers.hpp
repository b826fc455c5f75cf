#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "vaxtag/tfidf.hpp"

namespace vaxtag {

struct TrainConfig {
    double threshold = 0.5; // decision cutoff on score
    uint64_t seed = 0;

    double nb_alpha = 1.0;       // additive smoothing
    double svm_lambda = 1e-4;    // L2 regularizer
    uint32_t svm_epochs = 20;
    uint32_t rf_trees = 100;
    uint32_t rf_max_depth = 32;
    uint32_t rf_min_split = 2;

    void validate() const; // throws ConfigError
};

// Fitted binary classifier: score() in [0,1], decide() = score >= threshold.
// Fitted state is immutable; instances are safe for concurrent scoring.
class BinaryClassifier {
public:
    virtual ~BinaryClassifier() = default;
    virtual double score(const SparseVector& x) const = 0;
    virtual std::string kind() const = 0;
    virtual uint32_t dimension() const = 0;
    virtual void save(std::ostream& out) const = 0;

    double threshold() const { return threshold_; }
    bool decide(const SparseVector& x) const { return score(x) >= threshold_; }

protected:
    double threshold_ = 0.5;
};

/// Always scores the same value (0 or 1); stands in for labels that lack
/// trainable data in a multi-label decomposition.
class ConstantClassifier final : public BinaryClassifier {
public:
    ConstantClassifier(uint32_t dimension, double score_value, double threshold);
    double score(const SparseVector&) const override { return score_; }
    std::string kind() const override { return "const"; }
    uint32_t dimension() const override { return dim_; }
    void save(std::ostream& out) const override;

private:
    uint32_t dim_;
    double score_;
};

// Two-class multinomial Naive Bayes over raw count features. score() is the
// sigmoid of the log-posterior margin, so the 0.5 cutoff is the MAP rule.
class MultinomialNbClassifier final : public BinaryClassifier {
public:
    double score(const SparseVector& x) const override;
    std::string kind() const override { return "mnb"; }
    uint32_t dimension() const override { return static_cast<uint32_t>(log_lik_pos_.size()); }
    void save(std::ostream& out) const override;

    double log_likelihood_pos(uint32_t term) const { return log_lik_pos_[term]; }
    double log_likelihood_neg(uint32_t term) const { return log_lik_neg_[term]; }

private:
    friend std::unique_ptr<BinaryClassifier> fit_mnb(const std::vector<SparseVector>&,
                                                     const std::vector<uint8_t>&,
                                                     const TrainConfig&);
    friend std::unique_ptr<BinaryClassifier> load_classifier(std::istream&);
    double log_prior_pos_ = 0.0;
    double log_prior_neg_ = 0.0;
    std::vector<double> log_lik_pos_;
    std::vector<double> log_lik_neg_;
};

// Linear SVM trained with the Pegasos stochastic subgradient schedule
// (step 1/(lambda*t), iterate averaging). score() = sigmoid(w.x + b).
class LinearSvmClassifier final : public BinaryClassifier {
public:
    double score(const SparseVector& x) const override;
    std::string kind() const override { return "svm"; }
    uint32_t dimension() const override { return static_cast<uint32_t>(weights_.size()); }
    void save(std::ostream& out) const override;

    const std::vector<double>& weights() const { return weights_; }
    double bias() const { return bias_; }
    double margin(const SparseVector& x) const { return dot(x, weights_) + bias_; }

private:
    friend std::unique_ptr<BinaryClassifier> fit_linear_svm(const std::vector<SparseVector>&,
                                                            const std::vector<uint8_t>&,
                                                            const TrainConfig&);
    friend std::unique_ptr<BinaryClassifier> load_classifier(std::istream&);
    std::vector<double> weights_;
    double bias_ = 0.0;
};

// CART forest: Gini splits, bootstrap resampling, sqrt(V) features per
// split. score() is the fraction of trees voting positive.
class RandomForestClassifier final : public BinaryClassifier {
public:
    struct Node {
        int32_t feature = -1; // -1 marks a leaf
        double threshold = 0.0;
        int32_t left = -1;
        int32_t right = -1;
        double leaf_value = 0.0; // positive fraction at the leaf
    };

    double score(const SparseVector& x) const override;
    std::string kind() const override { return "rf"; }
    uint32_t dimension() const override { return dim_; }
    void save(std::ostream& out) const override;

    size_t tree_count() const { return trees_.size(); }

    /// Accuracy over training rows using only trees whose bootstrap missed
    /// the row; rows covered by no tree are excluded from the denominator.
    double oob_accuracy(const std::vector<SparseVector>& X,
                        const std::vector<uint8_t>& y) const;

private:
    friend std::unique_ptr<BinaryClassifier> fit_random_forest(const std::vector<SparseVector>&,
                                                               const std::vector<uint8_t>&,
                                                               const TrainConfig&);
    friend std::unique_ptr<BinaryClassifier> load_classifier(std::istream&);
    bool tree_vote(const std::vector<Node>& tree, const SparseVector& x) const;

    uint32_t dim_ = 0;
    std::vector<std::vector<Node>> trees_;
    std::vector<std::vector<uint8_t>> inbag_; // per tree, per training row
};

// Fitting entry points. All throw DataError when y is single-class, empty,
// or inconsistent with X.
std::unique_ptr<BinaryClassifier> fit_mnb(const std::vector<SparseVector>& X,
                                          const std::vector<uint8_t>& y,
                                          const TrainConfig& cfg);
std::unique_ptr<BinaryClassifier> fit_linear_svm(const std::vector<SparseVector>& X,
                                                 const std::vector<uint8_t>& y,
                                                 const TrainConfig& cfg);
std::unique_ptr<BinaryClassifier> fit_random_forest(const std::vector<SparseVector>& X,
                                                    const std::vector<uint8_t>& y,
                                                    const TrainConfig& cfg);

std::unique_ptr<BinaryClassifier> load_classifier(std::istream& in);

double sigmoid(double z);

} // namespace vaxtag
