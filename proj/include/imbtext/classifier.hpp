#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "imbtext/decision.hpp"
#include "imbtext/parallel.hpp"
#include "imbtext/vectorize.hpp"

namespace imbtext {

struct ForestConfig {
    std::size_t n_trees = 100;
    std::size_t max_depth = 0; // 0 = unlimited
    std::size_t min_split = 2;
    std::size_t mtry = 0; // features tried per split; 0 = ceil(sqrt(V))
    std::uint64_t seed = 0;
};

struct TreeNode {
    int feature = -1; // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double leaf_p1 = 0.0; // class-1 proportion at the leaf
};

struct Tree {
    std::vector<TreeNode> nodes;

    double predict(const std::uint32_t* row) const;
};

struct LogisticModel {
    std::vector<double> weights;
    double intercept = 0.0;
    bool converged = false;
    double grad_norm = 0.0;
    std::vector<double> objective_trace; // penalized mean log-likelihood per iteration
};

struct FittedModel {
    enum class Kind { forest, logistic };
    Kind kind = Kind::forest;
    Vocabulary vocab;
    ForestConfig forest_config;
    std::vector<Tree> trees;
    LogisticModel logistic;
};

// CART trees on bootstrap resamples with Gini splits over mtry sampled
// features; leaves store the class-1 proportion. Deterministic in cfg.seed;
// Exec::parallel distributes trees over threads with per-tree seeds.
FittedModel fit_forest(const DocTermMatrix& matrix, const ForestConfig& cfg,
                       Exec exec = Exec::parallel);

// L2-penalized logistic regression (intercept unpenalized) maximized by
// gradient ascent with backtracking; stops at gradient norm <= tol. A model
// that hits max_iter is returned flagged, not thrown.
FittedModel fit_logistic(const DocTermMatrix& matrix, double l2 = 1e-4,
                         std::size_t max_iter = 1000, double tol = 1e-6);

// Estimated P(Y=1|x) per row: mean of per-tree leaf proportions, or the
// sigmoid of the linear score. Throws on vocabulary mismatch.
std::vector<double> predict_proba(const FittedModel& model, const DocTermMatrix& matrix);

std::vector<int> classify_with_rule(const std::vector<double>& probs, const ThresholdRule& rule);

// Versioned JSON round-trip for experiment resumability.
std::string model_to_json(const FittedModel& model);
FittedModel model_from_json(const std::string& text);
void save_model(const FittedModel& model, const std::filesystem::path& path);
FittedModel load_model(const std::filesystem::path& path);

} // namespace imbtext
