#include <doctest.h>

#include <sstream>

#include "vaxtag/classifiers.hpp"
#include "vaxtag/errors.hpp"
#include "vaxtag/rng.hpp"
#include "vaxtag/tfidf.hpp"

using namespace vaxtag;

namespace {

// one perfectly separating binary feature, 20 rows per class
struct StumpToy {
    std::vector<SparseVector> X;
    std::vector<uint8_t> y;

    StumpToy() {
        for (int i = 0; i < 20; ++i) {
            SparseVector pos(1);
            pos.push_back(0, 1.0);
            X.push_back(pos);
            y.push_back(1);
            X.emplace_back(1); // implicit zero
            y.push_back(0);
        }
    }
};

} // namespace

TEST_CASE("a depth-1 stump separates the toy (oracle for the forest test)") {
    StumpToy toy;
    // threshold 0.5 on feature 0: everything below is negative, above positive
    size_t correct = 0;
    for (size_t i = 0; i < toy.X.size(); ++i) {
        bool pred = toy.X[i].at(0) >= 0.5;
        if (pred == (toy.y[i] != 0)) ++correct;
    }
    CHECK(correct == toy.X.size());
}

TEST_CASE("out-of-bag accuracy hits 1.0 with 25 trees on the stump toy") {
    StumpToy toy;
    TrainConfig cfg;
    cfg.rf_trees = 25;
    cfg.seed = 3;
    auto model = fit_random_forest(toy.X, toy.y, cfg);
    auto* forest = dynamic_cast<RandomForestClassifier*>(model.get());
    REQUIRE(forest != nullptr);
    CHECK(forest->tree_count() == 25);
    CHECK(forest->oob_accuracy(toy.X, toy.y) == 1.0);
}

TEST_CASE("score is a vote fraction in [0,1]") {
    StumpToy toy;
    TrainConfig cfg;
    cfg.rf_trees = 25;
    cfg.seed = 3;
    auto model = fit_random_forest(toy.X, toy.y, cfg);
    Rng rng(17);
    for (int i = 0; i < 50; ++i) {
        SparseVector probe(1);
        if (rng.bounded(2)) probe.push_back(0, rng.unit() * 2.0);
        double s = model->score(probe);
        CHECK(s >= 0.0);
        CHECK(s <= 1.0);
    }
    SparseVector pos(1);
    pos.push_back(0, 1.0);
    CHECK(model->score(pos) == 1.0);
    CHECK(model->score(SparseVector(1)) == 0.0);
}

TEST_CASE("equal seeds grow identical forests") {
    StumpToy toy;
    TrainConfig cfg;
    cfg.rf_trees = 15;
    cfg.seed = 42;
    auto a = fit_random_forest(toy.X, toy.y, cfg);
    auto b = fit_random_forest(toy.X, toy.y, cfg);
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        SparseVector probe(1);
        probe.push_back(0, rng.unit() * 2.0 - 0.5);
        CHECK(a->score(probe) == b->score(probe));
    }
}

TEST_CASE("noise features do not break a learnable signal") {
    // feature 0 is the signal, features 1..3 are noise
    std::vector<SparseVector> X;
    std::vector<uint8_t> y;
    Rng rng(11);
    for (int i = 0; i < 60; ++i) {
        bool label = i % 2 == 0;
        SparseVector v(4);
        v.push_back(0, label ? 1.0 : 0.0);
        for (uint32_t f = 1; f < 4; ++f) v.push_back(f, rng.unit());
        X.push_back(v);
        y.push_back(label ? 1 : 0);
    }
    TrainConfig cfg;
    cfg.rf_trees = 50;
    cfg.seed = 4;
    auto model = fit_random_forest(X, y, cfg);
    size_t correct = 0;
    for (size_t i = 0; i < X.size(); ++i) {
        if (model->decide(X[i]) == (y[i] != 0)) ++correct;
    }
    CHECK(double(correct) / double(X.size()) >= 0.95);
}

TEST_CASE("single-class data is rejected") {
    StumpToy toy;
    CHECK_THROWS_AS(fit_random_forest(toy.X, std::vector<uint8_t>(40, 0), TrainConfig{}),
                    DataError);
}

TEST_CASE("forest persistence round-trips predictions") {
    StumpToy toy;
    TrainConfig cfg;
    cfg.rf_trees = 10;
    cfg.seed = 6;
    auto model = fit_random_forest(toy.X, toy.y, cfg);
    std::stringstream buf;
    model->save(buf);
    auto loaded = load_classifier(buf);
    CHECK(loaded->kind() == "rf");
    Rng rng(2);
    for (int i = 0; i < 50; ++i) {
        SparseVector probe(1);
        probe.push_back(0, rng.unit() * 2.0 - 0.5);
        CHECK(loaded->score(probe) == model->score(probe));
    }
}
