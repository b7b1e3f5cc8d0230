#pragma once

#include <cstdint>
#include <vector>

namespace imbtext {

// Whether a probability vector refers to the original data distribution or to
// the distribution induced by merging the oversampled copies into the data.
enum class DistKind { original, augmented };

// Class prior P(Y=k), K >= 2, entries summing to 1 within 1e-12.
struct PriorVector {
    std::vector<double> probs;
    DistKind kind = DistKind::original;

    std::size_t num_classes() const { return probs.size(); }
    void validate() const;
};

// Conditional class probabilities P(Y=k|x); looser sum tolerance (1e-9)
// because these typically come out of fitted models.
struct ProbVector {
    std::vector<double> probs;
    DistKind kind = DistKind::original;

    std::size_t num_classes() const { return probs.size(); }
    void validate() const;
};

// The two-step oversampling scheme: m extra observations, each drawn by first
// picking a class with probability weights[k] and then copying a uniformly
// chosen original observation of that class.
struct AugmentationPlan {
    std::size_t n = 0;            // original sample size
    std::size_t m = 0;            // number of added observations
    std::vector<double> weights;  // class-pick probabilities, sum to 1

    void validate() const;
};

// Misclassification costs; entry (k, j) is the cost of predicting j when the
// truth is k. Diagonal must be exactly zero.
struct LossMatrix {
    std::size_t num_classes = 0;
    std::vector<double> entries; // row-major K x K

    double at(std::size_t truth, std::size_t predicted) const {
        return entries[truth * num_classes + predicted];
    }
    double& at(std::size_t truth, std::size_t predicted) {
        return entries[truth * num_classes + predicted];
    }
    void validate() const;

    static LossMatrix zero_one(std::size_t num_classes = 2);
};

// Binary decision cutoff; score >= cutoff classifies as 1.
struct ThresholdRule {
    double cutoff = 0.5;

    int apply(double prob1) const { return prob1 >= cutoff ? 1 : 0; }
};

// Prior of the merged sample: (n * P(Y=j) + m * w_j) / (n + m).
PriorVector augmented_prior(const PriorVector& orig, const AugmentationPlan& plan);

// Number of minority copies that balances a binary sample: round(n * (P0 - P1)).
// Requires class 1 to be the (weak) minority.
std::size_t minority_copies_for_balance(std::size_t n, const PriorVector& prior);

// Conditional probabilities under the merged-sample distribution. Each class
// is reweighted by the prior ratio and renormalized; requires strictly
// positive original priors.
ProbVector remap_to_augmented(const ProbVector& cond, const PriorVector& orig_prior,
                              const PriorVector& aug_prior);

// Inverse map back to the original distribution; requires strictly positive
// augmented priors.
ProbVector remap_to_original(const ProbVector& cond, const PriorVector& orig_prior,
                             const PriorVector& aug_prior);

// Class minimizing expected loss sum_k L(k, j) * P(Y=k|x); ties go to the
// smaller class index.
std::size_t bayes_classify(const ProbVector& cond, const LossMatrix& loss);

// Binary expected-loss minimization as a cutoff: L(0,1) / (L(0,1) + L(1,0)).
ThresholdRule loss_to_threshold(const LossMatrix& loss);

// Loss L'(k, j) = L(k, j) * P_a(Y=k) / P(Y=k): deciding under the original
// conditionals with L' reproduces the augmented-distribution decision.
LossMatrix equivalent_loss(const LossMatrix& loss, const PriorVector& orig_prior,
                           const PriorVector& aug_prior);

// Cutoff equal to P(Y=1): the balanced-accuracy-optimal rule on original
// probabilities, equivalent to 0.5 on 50-50 remapped probabilities.
ThresholdRule prior_threshold(const PriorVector& orig_prior);

} // namespace imbtext
