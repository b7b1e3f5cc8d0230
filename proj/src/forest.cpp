#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "imbtext/classifier.hpp"
#include "imbtext/rng.hpp"

namespace imbtext {

double Tree::predict(const std::uint32_t* row) const {
    int at = 0;
    while (nodes[at].feature >= 0)
        at = double(row[nodes[at].feature]) <= nodes[at].threshold ? nodes[at].left
                                                                   : nodes[at].right;
    return nodes[at].leaf_p1;
}

namespace {

struct TreeBuilder {
    const DocTermMatrix& matrix;
    const ForestConfig& cfg;
    std::size_t mtry;
    Rng rng;
    Tree tree;
    std::vector<std::size_t> feature_pool; // scratch for per-node feature draws

    TreeBuilder(const DocTermMatrix& m, const ForestConfig& c, std::size_t mtry_,
                std::uint64_t seed)
        : matrix(m), cfg(c), mtry(mtry_), rng(seed) {
        feature_pool.resize(m.n_features());
        for (std::size_t j = 0; j < feature_pool.size(); ++j) feature_pool[j] = j;
    }

    int make_leaf(const std::vector<std::size_t>& samples) {
        std::size_t pos = 0;
        for (std::size_t s : samples) pos += std::size_t(matrix.labels[s] == 1);
        TreeNode node;
        node.leaf_p1 = double(pos) / double(samples.size());
        tree.nodes.push_back(node);
        return int(tree.nodes.size() - 1);
    }

    // Best Gini split of `samples` on `feature`; returns impurity decrease or
    // a negative value when the feature is constant on the node.
    double best_split_on(const std::vector<std::size_t>& samples, std::size_t feature,
                         double parent_gini, double* threshold_out) {
        thread_local std::vector<std::pair<std::uint32_t, int>> values;
        values.clear();
        for (std::size_t s : samples)
            values.emplace_back(matrix.at(s, feature), matrix.labels[s]);
        std::sort(values.begin(), values.end());
        if (values.front().first == values.back().first) return -1.0;

        std::size_t total = values.size();
        std::size_t total_pos = 0;
        for (auto& [v, l] : values) total_pos += std::size_t(l == 1);

        double best = -1.0;
        std::size_t left_n = 0, left_pos = 0;
        for (std::size_t i = 0; i + 1 < total; ++i) {
            ++left_n;
            left_pos += std::size_t(values[i].second == 1);
            if (values[i].first == values[i + 1].first) continue;
            double ln = double(left_n), rn = double(total - left_n);
            double lp = double(left_pos) / ln;
            double rp = double(total_pos - left_pos) / rn;
            double gini_left = 2.0 * lp * (1.0 - lp);
            double gini_right = 2.0 * rp * (1.0 - rp);
            double decrease = parent_gini - (ln * gini_left + rn * gini_right) / double(total);
            if (decrease > best) {
                best = decrease;
                *threshold_out = (double(values[i].first) + double(values[i + 1].first)) / 2.0;
            }
        }
        return best;
    }

    int build(std::vector<std::size_t>& samples, std::size_t depth) {
        std::size_t pos = 0;
        for (std::size_t s : samples) pos += std::size_t(matrix.labels[s] == 1);
        bool pure = pos == 0 || pos == samples.size();
        bool depth_capped = cfg.max_depth > 0 && depth >= cfg.max_depth;
        if (pure || depth_capped || samples.size() < cfg.min_split) return make_leaf(samples);

        double p = double(pos) / double(samples.size());
        double parent_gini = 2.0 * p * (1.0 - p);

        // partial Fisher-Yates draw of mtry distinct features
        for (std::size_t i = 0; i < mtry; ++i) {
            std::size_t j = i + rng.uniform_index(feature_pool.size() - i);
            std::swap(feature_pool[i], feature_pool[j]);
        }

        double best_decrease = 1e-12;
        int best_feature = -1;
        double best_threshold = 0.0;
        for (std::size_t i = 0; i < mtry; ++i) {
            double threshold = 0.0;
            double decrease = best_split_on(samples, feature_pool[i], parent_gini, &threshold);
            if (decrease > best_decrease) {
                best_decrease = decrease;
                best_feature = int(feature_pool[i]);
                best_threshold = threshold;
            }
        }
        if (best_feature < 0) return make_leaf(samples);

        std::vector<std::size_t> left, right;
        for (std::size_t s : samples)
            (double(matrix.at(s, std::size_t(best_feature))) <= best_threshold ? left : right)
                .push_back(s);
        samples.clear();
        samples.shrink_to_fit();

        TreeNode node;
        node.feature = best_feature;
        node.threshold = best_threshold;
        tree.nodes.push_back(node);
        int index = int(tree.nodes.size() - 1);
        int l = build(left, depth + 1);
        int r = build(right, depth + 1);
        tree.nodes[index].left = l;
        tree.nodes[index].right = r;
        return index;
    }
};

} // namespace

FittedModel fit_forest(const DocTermMatrix& matrix, const ForestConfig& cfg, Exec exec) {
    if (cfg.n_trees == 0) throw std::invalid_argument("fit_forest: n_trees must be >= 1");
    if (matrix.n_docs == 0 || matrix.n_features() == 0)
        throw std::invalid_argument("fit_forest: empty matrix");
    std::size_t pos = matrix.count_label(1);
    if (pos == 0 || pos == matrix.n_docs)
        throw std::invalid_argument("fit_forest: both classes must be present");

    std::size_t mtry = cfg.mtry;
    if (mtry == 0) mtry = std::size_t(std::ceil(std::sqrt(double(matrix.n_features()))));
    mtry = std::min(mtry, matrix.n_features());

    FittedModel model;
    model.kind = FittedModel::Kind::forest;
    model.vocab = matrix.vocab;
    model.forest_config = cfg;
    model.forest_config.mtry = mtry;
    model.trees.resize(cfg.n_trees);

    for_each_index(cfg.n_trees, exec, [&](std::size_t t) {
        std::uint64_t seed = derive_seed(cfg.seed, std::string_view("tree"), std::uint64_t(t));
        TreeBuilder builder(matrix, cfg, mtry, seed);
        std::vector<std::size_t> samples(matrix.n_docs);
        for (std::size_t i = 0; i < matrix.n_docs; ++i)
            samples[i] = builder.rng.uniform_index(matrix.n_docs);
        builder.build(samples, 0);
        model.trees[t] = std::move(builder.tree);
    });
    return model;
}

} // namespace imbtext
