#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "vaxtag/labels.hpp"

namespace vaxtag {

struct LabelCounts {
    size_t tp = 0;
    size_t fp = 0;
    size_t fn = 0;
};

using ClasswiseCounts = std::array<LabelCounts, kNumLabels>;

// How 0/0 resolves in precision/recall/F1. Jaccard has its own both-empty
// policy (default 1: identical sets).
struct EvalPolicy {
    double zero_division = 0.0;
    double jaccard_both_empty = 1.0;
    enum class JaccardAveraging { Samples, MacroLabels } jaccard_averaging =
        JaccardAveraging::Samples;
};

struct PerClassMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct MetricsReport {
    std::array<PerClassMetrics, kNumLabels> per_class{};
    double macro_precision = 0.0;
    double macro_recall = 0.0;
    double macro_f1 = 0.0;
    double jaccard = 0.0;
    size_t sample_count = 0;
    EvalPolicy policy;
};

/// Per-label confusion counts over aligned gold/pred lists.
/// Throws DataError on a length mismatch.
ClasswiseCounts count_classwise(const std::vector<LabelSet>& gold,
                                const std::vector<LabelSet>& pred);

PerClassMetrics precision_recall_f1(const LabelCounts& counts, const EvalPolicy& policy = {});

/// Unweighted mean over all 12 classes, zero-count classes included.
double macro_average(const std::array<double, kNumLabels>& values);

double jaccard_sample(const LabelSet& gold, const LabelSet& pred,
                      const EvalPolicy& policy = {});

MetricsReport evaluate(const std::vector<LabelSet>& gold, const std::vector<LabelSet>& pred,
                       const EvalPolicy& policy = {});

/// Human-readable table.
void print_report(const MetricsReport& report, std::ostream& out);

/// Machine-readable CSV: "class,P,R,F1" rows, then macro and jaccard summary rows.
void write_report_csv(const MetricsReport& report, std::ostream& out);

} // namespace vaxtag
