#include "imbtext/classifier.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace imbtext {

namespace {

inline double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    double e = std::exp(z);
    return e / (1.0 + e);
}

struct LogisticObjective {
    const DocTermMatrix& matrix;
    double l2;

    double linear_score(const std::vector<double>& w, double b, std::size_t row) const {
        double z = b;
        const std::uint32_t* r = &matrix.counts[row * matrix.n_features()];
        for (std::size_t j = 0; j < matrix.n_features(); ++j)
            if (r[j]) z += w[j] * double(r[j]);
        return z;
    }

    // penalized mean log-likelihood
    double value(const std::vector<double>& w, double b) const {
        double ll = 0.0;
        for (std::size_t i = 0; i < matrix.n_docs; ++i) {
            double z = linear_score(w, b, i);
            // log p(y|z) = y*z - log(1 + e^z), computed stably
            double log1pez = z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
            ll += double(matrix.labels[i]) * z - log1pez;
        }
        ll /= double(matrix.n_docs);
        double penalty = 0.0;
        for (double wj : w) penalty += wj * wj;
        return ll - 0.5 * l2 * penalty;
    }

    void gradient(const std::vector<double>& w, double b, std::vector<double>* gw,
                  double* gb) const {
        gw->assign(w.size(), 0.0);
        *gb = 0.0;
        for (std::size_t i = 0; i < matrix.n_docs; ++i) {
            double residual = double(matrix.labels[i]) - sigmoid(linear_score(w, b, i));
            const std::uint32_t* r = &matrix.counts[i * matrix.n_features()];
            for (std::size_t j = 0; j < matrix.n_features(); ++j)
                if (r[j]) (*gw)[j] += residual * double(r[j]);
            *gb += residual;
        }
        double inv = 1.0 / double(matrix.n_docs);
        for (std::size_t j = 0; j < w.size(); ++j) (*gw)[j] = (*gw)[j] * inv - l2 * w[j];
        *gb *= inv;
    }
};

} // namespace

FittedModel fit_logistic(const DocTermMatrix& matrix, double l2, std::size_t max_iter, double tol) {
    if (l2 < 0.0) throw std::invalid_argument("fit_logistic: l2 must be non-negative");
    if (matrix.n_docs == 0) throw std::invalid_argument("fit_logistic: empty matrix");
    std::size_t pos = matrix.count_label(1);
    if (pos == 0 || pos == matrix.n_docs)
        throw std::invalid_argument("fit_logistic: both classes must be present");

    LogisticObjective obj{matrix, l2};
    std::vector<double> w(matrix.n_features(), 0.0);
    double b = 0.0;

    FittedModel model;
    model.kind = FittedModel::Kind::logistic;
    model.vocab = matrix.vocab;

    double step = 1.0;
    double current = obj.value(w, b);
    model.logistic.objective_trace.push_back(current);
    std::vector<double> gw;
    double gb = 0.0;
    std::vector<double> trial_w(w.size());

    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        obj.gradient(w, b, &gw, &gb);
        double norm_sq = gb * gb;
        for (double g : gw) norm_sq += g * g;
        double norm = std::sqrt(norm_sq);
        model.logistic.grad_norm = norm;
        if (norm <= tol) {
            model.logistic.converged = true;
            break;
        }
        // backtracking ascent step; the objective never decreases
        bool accepted = false;
        while (step > 1e-14) {
            for (std::size_t j = 0; j < w.size(); ++j) trial_w[j] = w[j] + step * gw[j];
            double trial_b = b + step * gb;
            double trial = obj.value(trial_w, trial_b);
            if (trial >= current) {
                w.swap(trial_w);
                b = trial_b;
                current = trial;
                accepted = true;
                step *= 2.0;
                break;
            }
            step /= 2.0;
        }
        model.logistic.objective_trace.push_back(current);
        if (!accepted) break; // step underflow: numerically at the optimum
    }
    if (!model.logistic.converged) {
        obj.gradient(w, b, &gw, &gb);
        double norm_sq = gb * gb;
        for (double g : gw) norm_sq += g * g;
        model.logistic.grad_norm = std::sqrt(norm_sq);
        model.logistic.converged = model.logistic.grad_norm <= tol;
    }
    model.logistic.weights = std::move(w);
    model.logistic.intercept = b;
    return model;
}

std::vector<double> predict_proba(const FittedModel& model, const DocTermMatrix& matrix) {
    if (!(model.vocab == matrix.vocab))
        throw std::invalid_argument("predict_proba: matrix vocabulary does not match the model");
    std::vector<double> probs(matrix.n_docs);
    if (model.kind == FittedModel::Kind::forest) {
        for (std::size_t i = 0; i < matrix.n_docs; ++i) {
            const std::uint32_t* row = &matrix.counts[i * matrix.n_features()];
            double sum = 0.0;
            for (const Tree& tree : model.trees) sum += tree.predict(row);
            probs[i] = sum / double(model.trees.size());
        }
    } else {
        for (std::size_t i = 0; i < matrix.n_docs; ++i) {
            double z = model.logistic.intercept;
            const std::uint32_t* row = &matrix.counts[i * matrix.n_features()];
            for (std::size_t j = 0; j < matrix.n_features(); ++j)
                if (row[j]) z += model.logistic.weights[j] * double(row[j]);
            probs[i] = sigmoid(z);
        }
    }
    return probs;
}

std::vector<int> classify_with_rule(const std::vector<double>& probs, const ThresholdRule& rule) {
    std::vector<int> labels(probs.size());
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (!(probs[i] >= 0.0 && probs[i] <= 1.0))
            throw std::invalid_argument("classify_with_rule: probability outside [0, 1]");
        labels[i] = rule.apply(probs[i]);
    }
    return labels;
}

std::string model_to_json(const FittedModel& model) {
    nlohmann::json j;
    j["format_version"] = 1;
    j["vocab"] = model.vocab.tokens();
    if (model.kind == FittedModel::Kind::forest) {
        j["kind"] = "forest";
        j["config"] = {{"n_trees", model.forest_config.n_trees},
                       {"max_depth", model.forest_config.max_depth},
                       {"min_split", model.forest_config.min_split},
                       {"mtry", model.forest_config.mtry},
                       {"seed", model.forest_config.seed}};
        nlohmann::json trees = nlohmann::json::array();
        for (const Tree& tree : model.trees) {
            nlohmann::json nodes = nlohmann::json::array();
            for (const TreeNode& n : tree.nodes)
                nodes.push_back({n.feature, n.threshold, n.left, n.right, n.leaf_p1});
            trees.push_back(std::move(nodes));
        }
        j["trees"] = std::move(trees);
    } else {
        j["kind"] = "logistic";
        j["weights"] = model.logistic.weights;
        j["intercept"] = model.logistic.intercept;
        j["converged"] = model.logistic.converged;
        j["grad_norm"] = model.logistic.grad_norm;
    }
    return j.dump();
}

void save_model(const FittedModel& model, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_model: cannot open " + path.string());
    out << model_to_json(model) << "\n";
}

FittedModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_model: cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return model_from_json(buf.str());
}

FittedModel model_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("format_version").get<int>() != 1)
        throw std::runtime_error("model_from_json: unsupported format version");
    FittedModel model;
    model.vocab = Vocabulary(j.at("vocab").get<std::vector<std::string>>());
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "forest") {
        model.kind = FittedModel::Kind::forest;
        const auto& cfg = j.at("config");
        model.forest_config.n_trees = cfg.at("n_trees").get<std::size_t>();
        model.forest_config.max_depth = cfg.at("max_depth").get<std::size_t>();
        model.forest_config.min_split = cfg.at("min_split").get<std::size_t>();
        model.forest_config.mtry = cfg.at("mtry").get<std::size_t>();
        model.forest_config.seed = cfg.at("seed").get<std::uint64_t>();
        for (const auto& tree_json : j.at("trees")) {
            Tree tree;
            for (const auto& n : tree_json) {
                TreeNode node;
                node.feature = n.at(0).get<int>();
                node.threshold = n.at(1).get<double>();
                node.left = n.at(2).get<int>();
                node.right = n.at(3).get<int>();
                node.leaf_p1 = n.at(4).get<double>();
                tree.nodes.push_back(node);
            }
            model.trees.push_back(std::move(tree));
        }
    } else if (kind == "logistic") {
        model.kind = FittedModel::Kind::logistic;
        model.logistic.weights = j.at("weights").get<std::vector<double>>();
        model.logistic.intercept = j.at("intercept").get<double>();
        model.logistic.converged = j.at("converged").get<bool>();
        model.logistic.grad_norm = j.at("grad_norm").get<double>();
    } else {
        throw std::runtime_error("model_from_json: unknown kind '" + kind + "'");
    }
    return model;
}

} // namespace imbtext
