#include "imbtext/metrics.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace imbtext {

ConfusionCounts confusion_counts(std::span<const int> predicted, std::span<const int> actual) {
    if (predicted.size() != actual.size())
        throw std::invalid_argument("confusion_counts: size mismatch");
    if (predicted.empty()) throw std::invalid_argument("confusion_counts: empty input");
    ConfusionCounts c;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        if (actual[i] == 1)
            predicted[i] == 1 ? ++c.tp : ++c.fn;
        else
            predicted[i] == 1 ? ++c.fp : ++c.tn;
    }
    return c;
}

double balanced_accuracy(const ConfusionCounts& c) {
    if (c.tp + c.fn == 0 || c.tn + c.fp == 0)
        throw std::invalid_argument("balanced_accuracy: both classes must be present");
    double sens = double(c.tp) / double(c.tp + c.fn);
    double spec = double(c.tn) / double(c.tn + c.fp);
    return (sens + spec) / 2.0;
}

double accuracy(const ConfusionCounts& c) {
    return double(c.tp + c.tn) / double(c.total());
}

double f1_score(const ConfusionCounts& c, bool* degenerate) {
    if (degenerate) *degenerate = false;
    std::size_t denom = 2 * c.tp + c.fp + c.fn;
    if (denom == 0) {
        if (degenerate) *degenerate = true;
        return 0.0;
    }
    return 2.0 * double(c.tp) / double(denom);
}

double percentage_gain(double value_new, double value_base) {
    if (value_base == 0.0)
        throw std::invalid_argument("percentage_gain: baseline value is zero");
    return (value_new - value_base) / value_base;
}

std::pair<RocCurve, double> roc_and_auc(std::span<const double> scores,
                                        std::span<const int> labels) {
    if (scores.size() != labels.size())
        throw std::invalid_argument("roc_and_auc: size mismatch");
    std::size_t n_pos = 0, n_neg = 0;
    for (int l : labels) (l == 1 ? n_pos : n_neg)++;
    if (n_pos == 0 || n_neg == 0)
        throw std::invalid_argument("roc_and_auc: both classes must be present");

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    RocCurve curve;
    curve.fpr.push_back(0.0);
    curve.tpr.push_back(0.0);

    // Trapezoid area accumulated as an integer: for each tie group,
    // d_fp * (tp_before + tp_after) = 2*(strictly-won pairs) + (tied pairs).
    std::uint64_t tp = 0, fp = 0;
    std::uint64_t twice_area = 0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        std::uint64_t d_tp = 0, d_fp = 0;
        while (j < order.size() && scores[order[j]] == scores[order[i]]) {
            labels[order[j]] == 1 ? ++d_tp : ++d_fp;
            ++j;
        }
        twice_area += d_fp * (2 * tp + d_tp);
        tp += d_tp;
        fp += d_fp;
        curve.fpr.push_back(double(fp) / double(n_neg));
        curve.tpr.push_back(double(tp) / double(n_pos));
        i = j;
    }
    double auc = double(twice_area) / (2.0 * double(n_pos) * double(n_neg));
    return {std::move(curve), auc};
}

double brier_score(std::span<const double> probs, std::span<const int> labels) {
    if (probs.size() != labels.size()) throw std::invalid_argument("brier_score: size mismatch");
    if (probs.empty()) throw std::invalid_argument("brier_score: empty input");
    double sum = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (!(probs[i] >= 0.0 && probs[i] <= 1.0))
            throw std::invalid_argument("brier_score: probability outside [0, 1]");
        double d = double(labels[i]) - probs[i];
        sum += d * d;
    }
    return sum / double(probs.size());
}

namespace {

double objective_value(const ConfusionCounts& c, Objective objective) {
    switch (objective) {
        case Objective::balanced_accuracy: return balanced_accuracy(c);
        case Objective::f1: return f1_score(c);
        case Objective::accuracy: return accuracy(c);
    }
    throw std::logic_error("objective_value: unknown objective");
}

} // namespace

ThresholdRule optimize_threshold(std::span<const double> scores, std::span<const int> labels,
                                 Objective objective) {
    if (scores.size() != labels.size())
        throw std::invalid_argument("optimize_threshold: size mismatch");
    std::size_t n_pos = 0;
    for (int l : labels)
        if (l == 1) ++n_pos;
    if (objective == Objective::balanced_accuracy && (n_pos == 0 || n_pos == labels.size()))
        throw std::invalid_argument("optimize_threshold: both classes must be present");

    std::vector<double> unique_scores(scores.begin(), scores.end());
    std::sort(unique_scores.begin(), unique_scores.end());
    unique_scores.erase(std::unique(unique_scores.begin(), unique_scores.end()),
                        unique_scores.end());

    std::vector<double> candidates;
    candidates.push_back(0.0);
    for (std::size_t i = 0; i + 1 < unique_scores.size(); ++i)
        candidates.push_back((unique_scores[i] + unique_scores[i + 1]) / 2.0);
    candidates.push_back(1.0);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    double best_value = 0.0;
    double best_cutoff = 0.0;
    bool have_best = false;
    std::vector<int> predicted(labels.size());
    for (double cutoff : candidates) {
        for (std::size_t i = 0; i < scores.size(); ++i)
            predicted[i] = scores[i] >= cutoff ? 1 : 0;
        double value = objective_value(confusion_counts(predicted, labels), objective);
        if (!have_best || value > best_value) {
            best_value = value;
            best_cutoff = cutoff;
            have_best = true;
        }
    }
    return ThresholdRule{best_cutoff};
}

std::vector<double> remap_scores_for_scoring(std::span<const double> aug_scores,
                                             const PriorVector& orig_prior,
                                             const PriorVector& aug_prior) {
    std::vector<double> out;
    out.reserve(aug_scores.size());
    for (double s : aug_scores) {
        ProbVector p{{1.0 - s, s}, DistKind::augmented};
        out.push_back(remap_to_original(p, orig_prior, aug_prior).probs[1]);
    }
    return out;
}

MetricReport compute_report(std::span<const double> scores, std::span<const int> labels,
                            const ThresholdRule& rule) {
    std::vector<int> predicted(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) predicted[i] = rule.apply(scores[i]);
    ConfusionCounts c = confusion_counts(predicted, labels);

    MetricReport r;
    r.sensitivity = c.tp + c.fn > 0 ? double(c.tp) / double(c.tp + c.fn) : 0.0;
    r.specificity = c.tn + c.fp > 0 ? double(c.tn) / double(c.tn + c.fp) : 0.0;
    r.balanced_accuracy = balanced_accuracy(c);
    r.accuracy = accuracy(c);
    r.f1 = f1_score(c, &r.f1_degenerate);
    r.auc = roc_and_auc(scores, labels).second;
    r.brier = brier_score(scores, labels);
    return r;
}

std::string metric_report_json(const MetricReport& r) {
    nlohmann::json j;
    j["balanced_accuracy"] = r.balanced_accuracy;
    j["accuracy"] = r.accuracy;
    j["sensitivity"] = r.sensitivity;
    j["specificity"] = r.specificity;
    j["f1"] = r.f1;
    j["auc"] = r.auc;
    j["brier"] = r.brier;
    j["f1_degenerate"] = r.f1_degenerate;
    return j.dump();
}

} // namespace imbtext
