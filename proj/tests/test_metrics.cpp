#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "vaxtag/errors.hpp"
#include "vaxtag/metrics.hpp"
#include "vaxtag/rng.hpp"

using namespace vaxtag;

namespace {

constexpr auto A = ConcernLabel::Unnecessary;
constexpr auto B = ConcernLabel::Mandatory;

// independent set-based scorer over an explicit label universe
struct BruteForce {
    double p, r, f1_harmonic, f1_counts, jaccard;

    BruteForce(const std::set<int>& gold, const std::set<int>& pred, int label) {
        int tp = 0, fp = 0, fn = 0;
        if (gold.count(label) && pred.count(label)) tp = 1;
        if (!gold.count(label) && pred.count(label)) fp = 1;
        if (gold.count(label) && !pred.count(label)) fn = 1;
        p = (tp + fp) ? double(tp) / (tp + fp) : 0.0;
        r = (tp + fn) ? double(tp) / (tp + fn) : 0.0;
        f1_harmonic = (p + r) > 0 ? 2 * p * r / (p + r) : 0.0;
        f1_counts = (tp + 0.5 * (fp + fn)) > 0 ? tp / (tp + 0.5 * (fp + fn)) : 0.0;
        std::set<int> inter, uni;
        for (int l : gold) {
            if (pred.count(l)) inter.insert(l);
            uni.insert(l);
        }
        for (int l : pred) uni.insert(l);
        jaccard = uni.empty() ? 1.0 : double(inter.size()) / double(uni.size());
    }
};

} // namespace

TEST_CASE("classwise counts over aligned lists") {
    auto c1 = count_classwise({LabelSet{A}}, {LabelSet{A}});
    CHECK(c1[size_t(A)].tp == 1);
    CHECK(c1[size_t(A)].fp == 0);
    CHECK(c1[size_t(A)].fn == 0);

    auto c2 = count_classwise({LabelSet{A}}, {LabelSet{B}});
    CHECK(c2[size_t(A)].fn == 1);
    CHECK(c2[size_t(B)].fp == 1);

    auto c3 = count_classwise({LabelSet{A, B}, LabelSet{A}}, {LabelSet{A}, LabelSet{A, B}});
    CHECK(c3[size_t(A)].tp == 2);
    CHECK(c3[size_t(B)].fn == 1);
    CHECK(c3[size_t(B)].fp == 1);

    CHECK_THROWS_AS(count_classwise({LabelSet{A}}, {}), DataError);
}

TEST_CASE("precision, recall, f1 from counts") {
    auto m1 = precision_recall_f1({2, 1, 1});
    CHECK(m1.precision == doctest::Approx(2.0 / 3.0));
    CHECK(m1.recall == doctest::Approx(2.0 / 3.0));
    CHECK(m1.f1 == doctest::Approx(2.0 / 3.0));

    auto m2 = precision_recall_f1({1, 1, 0});
    CHECK(m2.precision == doctest::Approx(0.5));
    CHECK(m2.recall == doctest::Approx(1.0));
    CHECK(m2.f1 == doctest::Approx(2.0 / 3.0)); // or 1/(1 + 0.5): both forms agree

    auto m3 = precision_recall_f1({0, 0, 0});
    CHECK(m3.precision == 0.0);
    CHECK(m3.recall == 0.0);
    CHECK(m3.f1 == 0.0);

    EvalPolicy ones;
    ones.zero_division = 1.0;
    CHECK(precision_recall_f1({0, 0, 0}, ones).precision == 1.0);
}

TEST_CASE("the two f1 forms agree for every small count triple") {
    for (size_t tp = 0; tp <= 6; ++tp) {
        for (size_t fp = 0; fp <= 6; ++fp) {
            for (size_t fn = 0; fn <= 6; ++fn) {
                auto m = precision_recall_f1({tp, fp, fn});
                double denom = double(tp) + 0.5 * double(fp + fn);
                double alt = denom > 0 ? double(tp) / denom : 0.0;
                CHECK(std::abs(m.f1 - alt) < 1e-12);
            }
        }
    }
}

TEST_CASE("f1 sits between precision and recall when either is positive") {
    Rng rng(33);
    for (int i = 0; i < 300; ++i) {
        LabelCounts c{rng.bounded(20), rng.bounded(20), rng.bounded(20)};
        auto m = precision_recall_f1(c);
        if (m.precision + m.recall > 0) {
            CHECK(m.f1 >= std::min(m.precision, m.recall) - 1e-12);
            CHECK(m.f1 <= std::max(m.precision, m.recall) + 1e-12);
        }
    }
}

TEST_CASE("macro average is the unweighted mean over all 12 classes") {
    std::array<double, kNumLabels> flat{};
    flat.fill(0.5);
    CHECK(macro_average(flat) == doctest::Approx(0.5));

    std::array<double, kNumLabels> eleven{};
    eleven.fill(1.0);
    eleven[3] = 0.0;
    CHECK(macro_average(eleven) == doctest::Approx(11.0 / 12.0));

    std::array<double, kNumLabels> values{};
    for (int i = 0; i < kNumLabels; ++i) values[i] = i * 0.05;
    auto rotated = values;
    std::rotate(rotated.begin(), rotated.begin() + 5, rotated.end());
    CHECK(macro_average(values) == doctest::Approx(macro_average(rotated)));
}

TEST_CASE("per-sample jaccard") {
    LabelSet gold{ConcernLabel::SideEffect, ConcernLabel::Mandatory, ConcernLabel::Political};
    LabelSet pred{ConcernLabel::SideEffect, ConcernLabel::Pharma};
    CHECK(jaccard_sample(gold, pred) == doctest::Approx(0.25));
    CHECK(jaccard_sample(gold, gold) == 1.0);
    CHECK(jaccard_sample(LabelSet{A}, LabelSet{B}) == 0.0);
    CHECK(jaccard_sample({}, {}) == 1.0); // both-empty policy default
    EvalPolicy zero;
    zero.jaccard_both_empty = 0.0;
    CHECK(jaccard_sample({}, {}, zero) == 0.0);
    CHECK(jaccard_sample(gold, pred) == jaccard_sample(pred, gold));
}

TEST_CASE("evaluate composes counts, macros and mean jaccard") {
    std::vector<LabelSet> gold = {LabelSet{A}, LabelSet{A, B}, LabelSet{B}};
    MetricsReport perfect = evaluate(gold, gold);
    CHECK(perfect.macro_f1 == doctest::Approx(2.0 / 12.0)); // only A and B occur
    CHECK(perfect.per_class[size_t(A)].f1 == doctest::Approx(1.0));
    CHECK(perfect.jaccard == doctest::Approx(1.0));
    CHECK(perfect.sample_count == 3);
    CHECK(perfect.policy.zero_division == 0.0);
}

TEST_CASE("all 64 three-label gold/pred pairs match the brute-force oracle") {
    const std::array<ConcernLabel, 3> universe = {A, B, ConcernLabel::Pharma};
    for (int g = 0; g < 8; ++g) {
        for (int p = 0; p < 8; ++p) {
            LabelSet gold_set, pred_set;
            std::set<int> gold_ids, pred_ids;
            for (int bit = 0; bit < 3; ++bit) {
                if (g & (1 << bit)) {
                    gold_set.insert(universe[size_t(bit)]);
                    gold_ids.insert(bit);
                }
                if (p & (1 << bit)) {
                    pred_set.insert(universe[size_t(bit)]);
                    pred_ids.insert(bit);
                }
            }
            MetricsReport report = evaluate({gold_set}, {pred_set});
            for (int bit = 0; bit < 3; ++bit) {
                BruteForce oracle(gold_ids, pred_ids, bit);
                const auto& got = report.per_class[size_t(universe[size_t(bit)])];
                CHECK(std::abs(got.precision - oracle.p) < 1e-12);
                CHECK(std::abs(got.recall - oracle.r) < 1e-12);
                CHECK(std::abs(got.f1 - oracle.f1_harmonic) < 1e-12);
                CHECK(std::abs(got.f1 - oracle.f1_counts) < 1e-12);
            }
            BruteForce sample(gold_ids, pred_ids, 0);
            CHECK(std::abs(report.jaccard - sample.jaccard) < 1e-12);
        }
    }
}

TEST_CASE("evaluate is invariant under consistent sample permutation") {
    std::vector<LabelSet> gold = {LabelSet{A}, LabelSet{B}, LabelSet{A, B}, LabelSet{A}};
    std::vector<LabelSet> pred = {LabelSet{A}, LabelSet{A}, LabelSet{B}, LabelSet{}};
    pred[3] = LabelSet{B};
    MetricsReport forward = evaluate(gold, pred);
    std::vector<LabelSet> gold_r(gold.rbegin(), gold.rend());
    std::vector<LabelSet> pred_r(pred.rbegin(), pred.rend());
    MetricsReport backward = evaluate(gold_r, pred_r);
    CHECK(forward.macro_f1 == doctest::Approx(backward.macro_f1).epsilon(1e-15));
    CHECK(forward.jaccard == doctest::Approx(backward.jaccard).epsilon(1e-15));
}

TEST_CASE("appending a perfect sample never lowers mean jaccard") {
    std::vector<LabelSet> gold = {LabelSet{A}, LabelSet{A, B}};
    std::vector<LabelSet> pred = {LabelSet{B}, LabelSet{A}};
    double before = evaluate(gold, pred).jaccard;
    gold.push_back(LabelSet{ConcernLabel::Rushed});
    pred.push_back(LabelSet{ConcernLabel::Rushed});
    double after = evaluate(gold, pred).jaccard;
    CHECK(after >= before - 1e-15);
}

TEST_CASE("macro-labels jaccard averaging is available behind the policy") {
    EvalPolicy policy;
    policy.jaccard_averaging = EvalPolicy::JaccardAveraging::MacroLabels;
    std::vector<LabelSet> gold = {LabelSet{A}, LabelSet{B}};
    std::vector<LabelSet> pred = {LabelSet{A}, LabelSet{A}};
    MetricsReport report = evaluate(gold, pred, policy);
    // label A: tp=1 fp=1 fn=0 -> 1/2; label B: tp=0 fp=0 fn=1 -> 0; others both-empty -> 1
    CHECK(report.jaccard == doctest::Approx((0.5 + 0.0 + 10.0) / 12.0));
}

TEST_CASE("report csv carries per-class rows and summary rows") {
    std::vector<LabelSet> gold = {LabelSet{A}};
    MetricsReport report = evaluate(gold, gold);
    std::ostringstream csv;
    write_report_csv(report, csv);
    std::string text = csv.str();
    CHECK(text.find("class,P,R,F1") != std::string::npos);
    CHECK(text.find("macro,") != std::string::npos);
    CHECK(text.find("jaccard_samples,") != std::string::npos);
    CHECK(text.find("unnecessary,") != std::string::npos);
}
