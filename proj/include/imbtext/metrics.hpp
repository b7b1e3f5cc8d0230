#pragma once

#include <span>
#include <string>
#include <vector>

#include "imbtext/decision.hpp"

namespace imbtext {

struct ConfusionCounts {
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;

    std::size_t total() const { return tp + fp + tn + fn; }
};

// Monotone (fpr, tpr) polyline from (0,0) to (1,1); tied scores share a point.
struct RocCurve {
    std::vector<double> fpr;
    std::vector<double> tpr;

    std::size_t size() const { return fpr.size(); }
};

struct MetricReport {
    double balanced_accuracy = 0.0;
    double accuracy = 0.0;
    double sensitivity = 0.0;
    double specificity = 0.0;
    double f1 = 0.0;
    double auc = 0.0;
    double brier = 0.0;
    bool f1_degenerate = false; // no predicted and no actual positives
};

enum class Objective { balanced_accuracy, f1, accuracy };

ConfusionCounts confusion_counts(std::span<const int> predicted, std::span<const int> actual);

// (sensitivity + specificity) / 2; requires both classes present.
double balanced_accuracy(const ConfusionCounts& counts);
double accuracy(const ConfusionCounts& counts);
// F1 of class 1; 0 with the degenerate flag when no positives exist on either side.
double f1_score(const ConfusionCounts& counts, bool* degenerate = nullptr);

// Relative improvement (value_new - value_base) / value_base. Applies to any
// metric; note the sign reads inversely for loss-oriented scores (Brier).
double percentage_gain(double value_new, double value_base);

// Descending-score sweep with ties grouped. The returned AUC equals the
// Mann-Whitney pair statistic with ties counted 1/2; it is accumulated in
// integer arithmetic so it matches pair counting bit for bit.
std::pair<RocCurve, double> roc_and_auc(std::span<const double> scores,
                                        std::span<const int> labels);

double brier_score(std::span<const double> probs, std::span<const int> labels);

// Exact maximizer of the objective over all achievable cutoffs: candidates are
// {0} + midpoints of consecutive distinct scores + {1}; smallest optimum wins.
ThresholdRule optimize_threshold(std::span<const double> scores, std::span<const int> labels,
                                 Objective objective = Objective::balanced_accuracy);

// Map scores estimated under the augmented distribution back to the original
// scale before computing AUC / Brier. Elementwise inverse remap.
std::vector<double> remap_scores_for_scoring(std::span<const double> aug_scores,
                                             const PriorVector& orig_prior,
                                             const PriorVector& aug_prior);

// Full report for thresholded labels plus score-based AUC and Brier.
MetricReport compute_report(std::span<const double> scores, std::span<const int> labels,
                            const ThresholdRule& rule);

std::string metric_report_json(const MetricReport& report);

} // namespace imbtext
