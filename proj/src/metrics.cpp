#include "vaxtag/metrics.hpp"

#include <iomanip>
#include <ostream>

#include "vaxtag/csv.hpp"
#include "vaxtag/errors.hpp"

namespace vaxtag {

ClasswiseCounts count_classwise(const std::vector<LabelSet>& gold,
                                const std::vector<LabelSet>& pred) {
    if (gold.size() != pred.size()) {
        throw DataError("gold and prediction lists differ in length (" +
                        std::to_string(gold.size()) + " vs " + std::to_string(pred.size()) + ")");
    }
    ClasswiseCounts counts{};
    for (size_t r = 0; r < gold.size(); ++r) {
        for (int i = 0; i < kNumLabels; ++i) {
            const auto label = static_cast<ConcernLabel>(i);
            const bool g = gold[r].contains(label);
            const bool p = pred[r].contains(label);
            if (g && p) ++counts[i].tp;
            else if (!g && p) ++counts[i].fp;
            else if (g && !p) ++counts[i].fn;
        }
    }
    return counts;
}

PerClassMetrics precision_recall_f1(const LabelCounts& c, const EvalPolicy& policy) {
    PerClassMetrics m;
    const double tp = double(c.tp), fp = double(c.fp), fn = double(c.fn);
    m.precision = (c.tp + c.fp) == 0 ? policy.zero_division : tp / (tp + fp);
    m.recall = (c.tp + c.fn) == 0 ? policy.zero_division : tp / (tp + fn);
    m.f1 = (m.precision + m.recall) == 0.0 ? policy.zero_division
                                           : 2.0 * m.precision * m.recall /
                                                 (m.precision + m.recall);
    return m;
}

double macro_average(const std::array<double, kNumLabels>& values) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / double(kNumLabels);
}

double jaccard_sample(const LabelSet& gold, const LabelSet& pred, const EvalPolicy& policy) {
    const int inter = gold.set_intersection(pred).size();
    const int uni = gold.set_union(pred).size();
    if (uni == 0) return policy.jaccard_both_empty;
    return double(inter) / double(uni);
}

MetricsReport evaluate(const std::vector<LabelSet>& gold, const std::vector<LabelSet>& pred,
                       const EvalPolicy& policy) {
    const ClasswiseCounts counts = count_classwise(gold, pred);

    MetricsReport report;
    report.policy = policy;
    report.sample_count = gold.size();

    std::array<double, kNumLabels> ps{}, rs{}, f1s{};
    for (int i = 0; i < kNumLabels; ++i) {
        report.per_class[i] = precision_recall_f1(counts[i], policy);
        ps[i] = report.per_class[i].precision;
        rs[i] = report.per_class[i].recall;
        f1s[i] = report.per_class[i].f1;
    }
    report.macro_precision = macro_average(ps);
    report.macro_recall = macro_average(rs);
    report.macro_f1 = macro_average(f1s);

    if (policy.jaccard_averaging == EvalPolicy::JaccardAveraging::Samples) {
        double sum = 0.0;
        for (size_t r = 0; r < gold.size(); ++r) {
            sum += jaccard_sample(gold[r], pred[r], policy);
        }
        report.jaccard = gold.empty() ? 0.0 : sum / double(gold.size());
    } else {
        // per-label Jaccard = TP / (TP + FP + FN), averaged over labels
        std::array<double, kNumLabels> per_label{};
        for (int i = 0; i < kNumLabels; ++i) {
            const size_t denom = counts[i].tp + counts[i].fp + counts[i].fn;
            per_label[i] = denom == 0 ? policy.jaccard_both_empty
                                      : double(counts[i].tp) / double(denom);
        }
        report.jaccard = macro_average(per_label);
    }
    return report;
}

namespace {

const char* averaging_name(const EvalPolicy& policy) {
    return policy.jaccard_averaging == EvalPolicy::JaccardAveraging::Samples
               ? "jaccard_samples"
               : "jaccard_macro_labels";
}

} // namespace

void print_report(const MetricsReport& report, std::ostream& out) {
    out << std::left << std::setw(14) << "class" << std::right << std::setw(8) << "P"
        << std::setw(8) << "R" << std::setw(8) << "F1" << '\n';
    out << std::fixed << std::setprecision(4);
    for (int i = 0; i < kNumLabels; ++i) {
        out << std::left << std::setw(14) << label_name(static_cast<ConcernLabel>(i))
            << std::right << std::setw(8) << report.per_class[i].precision << std::setw(8)
            << report.per_class[i].recall << std::setw(8) << report.per_class[i].f1 << '\n';
    }
    out << std::left << std::setw(14) << "macro" << std::right << std::setw(8)
        << report.macro_precision << std::setw(8) << report.macro_recall << std::setw(8)
        << report.macro_f1 << '\n';
    out << averaging_name(report.policy) << " = " << report.jaccard << " over "
        << report.sample_count << " samples (zero_division=" << report.policy.zero_division
        << ")\n";
    out.unsetf(std::ios::fixed);
}

void write_report_csv(const MetricsReport& report, std::ostream& out) {
    auto num = [](double v) {
        std::ostringstream s;
        s.precision(17);
        s << v;
        return s.str();
    };
    write_csv_row(out, {"class", "P", "R", "F1"});
    for (int i = 0; i < kNumLabels; ++i) {
        write_csv_row(out, {std::string(label_name(static_cast<ConcernLabel>(i))),
                            num(report.per_class[i].precision), num(report.per_class[i].recall),
                            num(report.per_class[i].f1)});
    }
    write_csv_row(out, {"macro", num(report.macro_precision), num(report.macro_recall),
                        num(report.macro_f1)});
    write_csv_row(out, {averaging_name(report.policy), num(report.jaccard)});
}

} // namespace vaxtag
