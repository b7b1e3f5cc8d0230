#include "imbtext/decision.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace imbtext {

namespace {

void check_prob_entries(const std::vector<double>& probs, double sum_tol, const char* what) {
    if (probs.size() < 2)
        throw std::invalid_argument(std::string(what) + ": needs at least two classes");
    double sum = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument(std::string(what) + ": entry outside [0, 1]");
        sum += p;
    }
    if (std::fabs(sum - 1.0) > sum_tol)
        throw std::invalid_argument(std::string(what) + ": entries do not sum to 1");
}

void normalize(std::vector<double>& probs) {
    double sum = std::accumulate(probs.begin(), probs.end(), 0.0);
    for (double& p : probs) p /= sum;
}

// Shared ratio form: out_j proportional to target_prior_j * (p_j / source_prior_j).
// Computing the per-class factor as p_j / source_prior_j keeps the fixed point
// p = source_prior exact in floating point.
ProbVector reweight(const ProbVector& cond, const PriorVector& source_prior,
                    const PriorVector& target_prior, DistKind out_kind) {
    cond.validate();
    source_prior.validate();
    target_prior.validate();
    std::size_t k = cond.num_classes();
    if (source_prior.num_classes() != k || target_prior.num_classes() != k)
        throw std::invalid_argument("remap: class count mismatch");
    for (double p : source_prior.probs)
        if (p <= 0.0)
            throw std::invalid_argument("remap: source prior has a zero entry; ratio undefined");

    ProbVector out;
    out.kind = out_kind;
    out.probs.resize(k);
    for (std::size_t j = 0; j < k; ++j)
        out.probs[j] = target_prior.probs[j] * (cond.probs[j] / source_prior.probs[j]);
    normalize(out.probs);
    return out;
}

} // namespace

void PriorVector::validate() const { check_prob_entries(probs, 1e-12, "PriorVector"); }

void ProbVector::validate() const { check_prob_entries(probs, 1e-9, "ProbVector"); }

void AugmentationPlan::validate() const {
    if (n == 0) throw std::invalid_argument("AugmentationPlan: n must be positive");
    check_prob_entries(weights, 1e-12, "AugmentationPlan weights");
}

void LossMatrix::validate() const {
    if (num_classes < 2) throw std::invalid_argument("LossMatrix: needs at least two classes");
    if (entries.size() != num_classes * num_classes)
        throw std::invalid_argument("LossMatrix: entry count mismatch");
    double off_diag = 0.0;
    for (std::size_t k = 0; k < num_classes; ++k) {
        for (std::size_t j = 0; j < num_classes; ++j) {
            double v = at(k, j);
            if (v < 0.0) throw std::invalid_argument("LossMatrix: negative entry");
            if (k == j && v != 0.0)
                throw std::invalid_argument("LossMatrix: diagonal must be exactly zero");
            if (k != j) off_diag += v;
        }
    }
    if (off_diag <= 0.0)
        throw std::invalid_argument("LossMatrix: at least one off-diagonal entry must be positive");
}

LossMatrix LossMatrix::zero_one(std::size_t num_classes) {
    LossMatrix loss;
    loss.num_classes = num_classes;
    loss.entries.assign(num_classes * num_classes, 1.0);
    for (std::size_t k = 0; k < num_classes; ++k) loss.at(k, k) = 0.0;
    return loss;
}

PriorVector augmented_prior(const PriorVector& orig, const AugmentationPlan& plan) {
    orig.validate();
    plan.validate();
    if (orig.kind != DistKind::original)
        throw std::invalid_argument("augmented_prior: input prior must be original-kind");
    if (plan.weights.size() != orig.num_classes())
        throw std::invalid_argument("augmented_prior: weight count mismatch");

    double total = double(plan.n + plan.m);
    PriorVector out;
    out.kind = DistKind::augmented;
    out.probs.resize(orig.num_classes());
    for (std::size_t j = 0; j < orig.num_classes(); ++j)
        out.probs[j] =
            (double(plan.n) * orig.probs[j] + double(plan.m) * plan.weights[j]) / total;
    normalize(out.probs);
    return out;
}

std::size_t minority_copies_for_balance(std::size_t n, const PriorVector& prior) {
    prior.validate();
    if (prior.num_classes() != 2)
        throw std::invalid_argument("minority_copies_for_balance: binary prior required");
    if (n == 0) throw std::invalid_argument("minority_copies_for_balance: n must be positive");
    double p1 = prior.probs[1];
    if (p1 > 0.5)
        throw std::invalid_argument("minority_copies_for_balance: class 1 is not the minority");
    return std::size_t(std::llround(double(n) * (prior.probs[0] - p1)));
}

ProbVector remap_to_augmented(const ProbVector& cond, const PriorVector& orig_prior,
                              const PriorVector& aug_prior) {
    if (cond.kind != DistKind::original)
        throw std::invalid_argument("remap_to_augmented: conditional must be original-kind");
    return reweight(cond, orig_prior, aug_prior, DistKind::augmented);
}

ProbVector remap_to_original(const ProbVector& cond, const PriorVector& orig_prior,
                             const PriorVector& aug_prior) {
    if (cond.kind != DistKind::augmented)
        throw std::invalid_argument("remap_to_original: conditional must be augmented-kind");
    return reweight(cond, aug_prior, orig_prior, DistKind::original);
}

std::size_t bayes_classify(const ProbVector& cond, const LossMatrix& loss) {
    cond.validate();
    loss.validate();
    std::size_t k = cond.num_classes();
    if (loss.num_classes != k)
        throw std::invalid_argument("bayes_classify: class count mismatch");
    std::size_t best = 0;
    double best_cost = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        double cost = 0.0;
        for (std::size_t truth = 0; truth < k; ++truth)
            cost += loss.at(truth, j) * cond.probs[truth];
        if (j == 0 || cost < best_cost) {
            best = j;
            best_cost = cost;
        }
    }
    return best;
}

ThresholdRule loss_to_threshold(const LossMatrix& loss) {
    loss.validate();
    if (loss.num_classes != 2)
        throw std::invalid_argument("loss_to_threshold: binary loss required");
    double denom = loss.at(0, 1) + loss.at(1, 0);
    if (denom <= 0.0)
        throw std::invalid_argument("loss_to_threshold: both off-diagonal losses are zero");
    return ThresholdRule{loss.at(0, 1) / denom};
}

LossMatrix equivalent_loss(const LossMatrix& loss, const PriorVector& orig_prior,
                           const PriorVector& aug_prior) {
    loss.validate();
    orig_prior.validate();
    aug_prior.validate();
    std::size_t k = loss.num_classes;
    if (orig_prior.num_classes() != k || aug_prior.num_classes() != k)
        throw std::invalid_argument("equivalent_loss: class count mismatch");
    for (double p : orig_prior.probs)
        if (p <= 0.0)
            throw std::invalid_argument("equivalent_loss: original prior has a zero entry");

    LossMatrix out = loss;
    for (std::size_t truth = 0; truth < k; ++truth) {
        double ratio = aug_prior.probs[truth] / orig_prior.probs[truth];
        for (std::size_t j = 0; j < k; ++j) out.at(truth, j) = loss.at(truth, j) * ratio;
    }
    return out;
}

ThresholdRule prior_threshold(const PriorVector& orig_prior) {
    orig_prior.validate();
    if (orig_prior.num_classes() != 2)
        throw std::invalid_argument("prior_threshold: binary prior required");
    return ThresholdRule{orig_prior.probs[1]};
}

} // namespace imbtext
