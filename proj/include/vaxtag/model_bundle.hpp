#pragma once

#include <memory>
#include <string>

#include "vaxtag/multilabel.hpp"
#include "vaxtag/textprep.hpp"
#include "vaxtag/tfidf.hpp"

namespace vaxtag {

// Everything predict needs in one file: the preprocessing switches, the
// fitted tf-idf state and the multi-label model. Naive Bayes bases consume
// raw counts; SVM and random forest consume tf-idf weights.
struct ModelBundle {
    std::string method; // manifest tag: mnb | svm | rf | br | cc
    uint64_t seed = 0;
    PipelineConfig prep;
    TfidfModel tfidf;
    std::unique_ptr<MultiLabelModel> model;

    bool uses_counts() const { return model->base() == BaseLearner::Mnb; }
};

void save_bundle(const ModelBundle& bundle, const std::string& path);
ModelBundle load_bundle(const std::string& path);

/// Tokens -> feature vector via the bundle's routing rule.
SparseVector featurize(const ModelBundle& bundle, const std::vector<std::string>& tokens);

} // namespace vaxtag
