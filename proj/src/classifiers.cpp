#include "vaxtag/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "vaxtag/errors.hpp"
#include "vaxtag/rng.hpp"

namespace vaxtag {

double sigmoid(double z) {
    if (z >= 0) {
        double e = std::exp(-z);
        return 1.0 / (1.0 + e);
    }
    double e = std::exp(z);
    return e / (1.0 + e);
}

void TrainConfig::validate() const {
    if (!(threshold > 0.0 && threshold < 1.0)) throw ConfigError("threshold must be in (0,1)");
    if (!(nb_alpha > 0.0)) throw ConfigError("nb_alpha must be > 0");
    if (!(svm_lambda > 0.0)) throw ConfigError("svm_lambda must be > 0");
    if (svm_epochs < 1) throw ConfigError("svm_epochs must be >= 1");
    if (rf_trees < 1) throw ConfigError("rf_trees must be >= 1");
    if (rf_max_depth < 1) throw ConfigError("rf_max_depth must be >= 1");
    if (rf_min_split < 2) throw ConfigError("rf_min_split must be >= 2");
}

namespace {

uint32_t check_training_inputs(const std::vector<SparseVector>& X,
                               const std::vector<uint8_t>& y) {
    if (X.empty()) throw DataError("empty training set");
    if (X.size() != y.size()) throw DataError("feature/target row counts differ");
    size_t pos = 0;
    for (uint8_t v : y) pos += v ? 1 : 0;
    if (pos == 0 || pos == y.size()) {
        throw DataError("training data contains a single class");
    }
    uint32_t dim = X[0].dimension();
    for (const auto& x : X) {
        if (x.dimension() != dim) throw DataError("inconsistent feature dimensions");
    }
    return dim;
}

} // namespace

// ---------------------------------------------------------------- constant

ConstantClassifier::ConstantClassifier(uint32_t dimension, double score_value,
                                       double threshold)
    : dim_(dimension), score_(score_value) {
    threshold_ = threshold;
}

void ConstantClassifier::save(std::ostream& out) const {
    out.precision(17);
    out << "const " << dim_ << ' ' << threshold_ << ' ' << score_ << '\n';
}

// ---------------------------------------------------------------- naive bayes

double MultinomialNbClassifier::score(const SparseVector& x) const {
    double margin = log_prior_pos_ - log_prior_neg_;
    for (const auto& [i, count] : x.entries()) {
        margin += count * (log_lik_pos_[i] - log_lik_neg_[i]);
    }
    return sigmoid(margin);
}

void MultinomialNbClassifier::save(std::ostream& out) const {
    out.precision(17);
    out << "mnb " << log_lik_pos_.size() << ' ' << threshold_ << '\n'
        << log_prior_pos_ << ' ' << log_prior_neg_ << '\n';
    for (size_t i = 0; i < log_lik_pos_.size(); ++i) {
        out << log_lik_pos_[i] << ' ' << log_lik_neg_[i] << '\n';
    }
}

std::unique_ptr<BinaryClassifier> fit_mnb(const std::vector<SparseVector>& X,
                                          const std::vector<uint8_t>& y,
                                          const TrainConfig& cfg) {
    cfg.validate();
    uint32_t dim = check_training_inputs(X, y);

    std::vector<double> count_pos(dim, 0.0), count_neg(dim, 0.0);
    double total_pos = 0.0, total_neg = 0.0;
    size_t n_pos = 0;
    for (size_t r = 0; r < X.size(); ++r) {
        auto& counts = y[r] ? count_pos : count_neg;
        auto& total = y[r] ? total_pos : total_neg;
        n_pos += y[r] ? 1 : 0;
        for (const auto& [i, c] : X[r].entries()) {
            counts[i] += c;
            total += c;
        }
    }

    auto model = std::make_unique<MultinomialNbClassifier>();
    model->threshold_ = cfg.threshold;
    model->log_prior_pos_ = std::log(double(n_pos) / double(X.size()));
    model->log_prior_neg_ = std::log(double(X.size() - n_pos) / double(X.size()));
    model->log_lik_pos_.resize(dim);
    model->log_lik_neg_.resize(dim);
    const double a = cfg.nb_alpha;
    for (uint32_t i = 0; i < dim; ++i) {
        model->log_lik_pos_[i] = std::log((count_pos[i] + a) / (total_pos + a * dim));
        model->log_lik_neg_[i] = std::log((count_neg[i] + a) / (total_neg + a * dim));
    }
    return model;
}

// ---------------------------------------------------------------- linear svm

double LinearSvmClassifier::score(const SparseVector& x) const {
    return sigmoid(margin(x));
}

void LinearSvmClassifier::save(std::ostream& out) const {
    out.precision(17);
    out << "svm " << weights_.size() << ' ' << threshold_ << '\n' << bias_ << '\n';
    for (double w : weights_) out << w << '\n';
}

std::unique_ptr<BinaryClassifier> fit_linear_svm(const std::vector<SparseVector>& X,
                                                 const std::vector<uint8_t>& y,
                                                 const TrainConfig& cfg) {
    cfg.validate();
    uint32_t dim = check_training_inputs(X, y);
    for (const auto& x : X) {
        for (const auto& [i, w] : x.entries()) {
            if (!std::isfinite(w)) throw DataError("non-finite feature value");
        }
    }

    // bias rides along as a regularized constant feature at index dim;
    // iterates are projected onto the 1/sqrt(lambda) ball like the original
    // algorithm, which keeps the averaged solution bounded
    const size_t n = X.size();
    std::vector<double> w(dim + 1, 0.0), w_sum(dim + 1, 0.0);
    uint64_t t = 0;
    const double radius = 1.0 / std::sqrt(cfg.svm_lambda);

    Rng rng(cfg.seed);
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;

    for (uint32_t epoch = 0; epoch < cfg.svm_epochs; ++epoch) {
        rng.shuffle(order);
        for (size_t idx : order) {
            ++t;
            const double eta = 1.0 / (cfg.svm_lambda * double(t));
            const double label = y[idx] ? 1.0 : -1.0;
            const double m = label * (dot(X[idx], w) + w[dim]);
            const double decay = 1.0 - eta * cfg.svm_lambda;
            for (double& wi : w) wi *= decay;
            if (m < 1.0) {
                for (const auto& [i, v] : X[idx].entries()) w[i] += eta * label * v;
                w[dim] += eta * label;
            }
            double norm_sq = 0.0;
            for (double wi : w) norm_sq += wi * wi;
            if (norm_sq > radius * radius) {
                const double shrink = radius / std::sqrt(norm_sq);
                for (double& wi : w) wi *= shrink;
            }
            for (uint32_t i = 0; i <= dim; ++i) w_sum[i] += w[i];
        }
    }

    auto model = std::make_unique<LinearSvmClassifier>();
    model->threshold_ = cfg.threshold;
    model->weights_.resize(dim);
    const double steps = double(t);
    for (uint32_t i = 0; i < dim; ++i) model->weights_[i] = w_sum[i] / steps;
    model->bias_ = w_sum[dim] / steps;
    return model;
}

// ---------------------------------------------------------------- random forest

bool RandomForestClassifier::tree_vote(const std::vector<Node>& tree,
                                       const SparseVector& x) const {
    int32_t node = 0;
    while (tree[node].feature >= 0) {
        double v = x.at(static_cast<uint32_t>(tree[node].feature));
        node = v < tree[node].threshold ? tree[node].left : tree[node].right;
    }
    return tree[node].leaf_value >= 0.5;
}

double RandomForestClassifier::score(const SparseVector& x) const {
    size_t votes = 0;
    for (const auto& tree : trees_) votes += tree_vote(tree, x) ? 1 : 0;
    return double(votes) / double(trees_.size());
}

double RandomForestClassifier::oob_accuracy(const std::vector<SparseVector>& X,
                                            const std::vector<uint8_t>& y) const {
    if (X.size() != y.size() || inbag_.empty() || inbag_[0].size() != X.size()) {
        throw DataError("oob_accuracy wants the training rows the forest was fit on");
    }
    size_t scored = 0, correct = 0;
    for (size_t r = 0; r < X.size(); ++r) {
        size_t votes = 0, voters = 0;
        for (size_t ti = 0; ti < trees_.size(); ++ti) {
            if (inbag_[ti][r]) continue;
            ++voters;
            votes += tree_vote(trees_[ti], X[r]) ? 1 : 0;
        }
        if (voters == 0) continue;
        ++scored;
        bool pred = 2 * votes >= voters;
        if (pred == (y[r] != 0)) ++correct;
    }
    if (scored == 0) throw DataError("no out-of-bag rows to score");
    return double(correct) / double(scored);
}

void RandomForestClassifier::save(std::ostream& out) const {
    out.precision(17);
    out << "rf " << dim_ << ' ' << threshold_ << ' ' << trees_.size() << '\n';
    for (const auto& tree : trees_) {
        out << tree.size() << '\n';
        for (const auto& n : tree) {
            out << n.feature << ' ' << n.threshold << ' ' << n.left << ' ' << n.right << ' '
                << n.leaf_value << '\n';
        }
    }
}

namespace {

struct TreeBuilder {
    const std::vector<SparseVector>& X;
    const std::vector<uint8_t>& y;
    uint32_t dim;
    const TrainConfig& cfg;
    Rng& rng;
    uint32_t features_per_split;
    std::vector<RandomForestClassifier::Node> nodes;

    static double gini(size_t pos, size_t total) {
        if (total == 0) return 0.0;
        double p = double(pos) / double(total);
        return 2.0 * p * (1.0 - p);
    }

    int32_t build(std::vector<uint32_t>& rows, uint32_t depth) {
        size_t pos = 0;
        for (uint32_t r : rows) pos += y[r] ? 1 : 0;
        const double leaf_value = double(pos) / double(rows.size());

        auto make_leaf = [&]() {
            nodes.push_back({-1, 0.0, -1, -1, leaf_value});
            return int32_t(nodes.size() - 1);
        };
        if (pos == 0 || pos == rows.size() || depth >= cfg.rf_max_depth ||
            rows.size() < cfg.rf_min_split) {
            return make_leaf();
        }

        // sample sqrt(V) distinct candidate features
        std::vector<uint32_t> feats(dim);
        for (uint32_t i = 0; i < dim; ++i) feats[i] = i;
        for (uint32_t i = 0; i < features_per_split; ++i) {
            uint32_t j = i + uint32_t(rng.bounded(dim - i));
            std::swap(feats[i], feats[j]);
        }

        const double parent = gini(pos, rows.size());
        double best_impurity = parent - 1e-12;
        int32_t best_feature = -1;
        double best_threshold = 0.0;

        std::vector<std::pair<double, uint8_t>> vals;
        vals.reserve(rows.size());
        for (uint32_t fi = 0; fi < features_per_split; ++fi) {
            uint32_t f = feats[fi];
            vals.clear();
            for (uint32_t r : rows) vals.emplace_back(X[r].at(f), y[r]);
            std::sort(vals.begin(), vals.end());
            if (vals.front().first == vals.back().first) continue;

            size_t left_pos = 0;
            for (size_t i = 0; i + 1 < vals.size(); ++i) {
                left_pos += vals[i].second ? 1 : 0;
                if (vals[i].first == vals[i + 1].first) continue;
                const size_t left_n = i + 1;
                const size_t right_n = vals.size() - left_n;
                const size_t right_pos = pos - left_pos;
                double impurity = (double(left_n) * gini(left_pos, left_n) +
                                   double(right_n) * gini(right_pos, right_n)) /
                                  double(vals.size());
                if (impurity < best_impurity) {
                    best_impurity = impurity;
                    best_feature = int32_t(f);
                    best_threshold = vals[i].first + (vals[i + 1].first - vals[i].first) / 2.0;
                }
            }
        }
        if (best_feature < 0) return make_leaf();

        std::vector<uint32_t> left_rows, right_rows;
        for (uint32_t r : rows) {
            if (X[r].at(uint32_t(best_feature)) < best_threshold) left_rows.push_back(r);
            else right_rows.push_back(r);
        }
        if (left_rows.empty() || right_rows.empty()) return make_leaf();

        nodes.push_back({best_feature, best_threshold, -1, -1, leaf_value});
        int32_t self = int32_t(nodes.size() - 1);
        int32_t left = build(left_rows, depth + 1);
        int32_t right = build(right_rows, depth + 1);
        nodes[self].left = left;
        nodes[self].right = right;
        return self;
    }
};

} // namespace

std::unique_ptr<BinaryClassifier> fit_random_forest(const std::vector<SparseVector>& X,
                                                    const std::vector<uint8_t>& y,
                                                    const TrainConfig& cfg) {
    cfg.validate();
    uint32_t dim = check_training_inputs(X, y);

    auto model = std::make_unique<RandomForestClassifier>();
    model->threshold_ = cfg.threshold;
    model->dim_ = dim;

    Rng rng(cfg.seed);
    const uint32_t per_split =
        std::max<uint32_t>(1, uint32_t(std::floor(std::sqrt(double(dim)))));
    const size_t n = X.size();

    for (uint32_t ti = 0; ti < cfg.rf_trees; ++ti) {
        std::vector<uint8_t> inbag(n, 0);
        std::vector<uint32_t> rows(n);
        for (size_t i = 0; i < n; ++i) {
            uint32_t pick = uint32_t(rng.bounded(n));
            rows[i] = pick;
            inbag[pick] = 1;
        }
        size_t pos = 0;
        for (uint32_t r : rows) pos += y[r] ? 1 : 0;

        TreeBuilder builder{X, y, dim, cfg, rng, per_split, {}};
        if (pos == 0 || pos == rows.size()) {
            // single-class bootstrap degenerates to a leaf
            builder.nodes.push_back({-1, 0.0, -1, -1, double(pos) / double(rows.size())});
        } else {
            builder.build(rows, 0);
        }
        model->trees_.push_back(std::move(builder.nodes));
        model->inbag_.push_back(std::move(inbag));
    }
    return model;
}

// ---------------------------------------------------------------- persistence

std::unique_ptr<BinaryClassifier> load_classifier(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw DataError("classifier: missing header");
    std::istringstream hs(line);
    std::string kind;
    hs >> kind;

    if (kind == "const") {
        uint32_t dim;
        double threshold, score;
        if (!(hs >> dim >> threshold >> score)) throw DataError("classifier: bad const header");
        return std::make_unique<ConstantClassifier>(dim, score, threshold);
    }
    if (kind == "mnb") {
        uint32_t dim;
        double threshold;
        if (!(hs >> dim >> threshold)) throw DataError("classifier: bad mnb header");
        auto model = std::make_unique<MultinomialNbClassifier>();
        model->threshold_ = threshold;
        in >> model->log_prior_pos_ >> model->log_prior_neg_;
        model->log_lik_pos_.resize(dim);
        model->log_lik_neg_.resize(dim);
        for (uint32_t i = 0; i < dim; ++i) in >> model->log_lik_pos_[i] >> model->log_lik_neg_[i];
        if (!in) throw DataError("classifier: truncated mnb parameters");
        std::getline(in, line); // finish the last line
        return model;
    }
    if (kind == "svm") {
        uint32_t dim;
        double threshold;
        if (!(hs >> dim >> threshold)) throw DataError("classifier: bad svm header");
        auto model = std::make_unique<LinearSvmClassifier>();
        model->threshold_ = threshold;
        in >> model->bias_;
        model->weights_.resize(dim);
        for (uint32_t i = 0; i < dim; ++i) in >> model->weights_[i];
        if (!in) throw DataError("classifier: truncated svm parameters");
        std::getline(in, line);
        return model;
    }
    if (kind == "rf") {
        uint32_t dim;
        double threshold;
        size_t trees;
        if (!(hs >> dim >> threshold >> trees)) throw DataError("classifier: bad rf header");
        auto model = std::make_unique<RandomForestClassifier>();
        model->threshold_ = threshold;
        model->dim_ = dim;
        for (size_t ti = 0; ti < trees; ++ti) {
            size_t count;
            in >> count;
            std::vector<RandomForestClassifier::Node> tree(count);
            for (auto& node : tree) {
                in >> node.feature >> node.threshold >> node.left >> node.right >>
                    node.leaf_value;
            }
            if (!in) throw DataError("classifier: truncated rf tree");
            model->trees_.push_back(std::move(tree));
        }
        std::getline(in, line);
        return model;
    }
    throw DataError("classifier: unknown kind '" + kind + "'");
}

} // namespace vaxtag
