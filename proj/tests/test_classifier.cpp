#include <doctest.h>

#include <stdexcept>
#include <algorithm>
#include <filesystem>
#include <cstdint>

#include <cmath>

#include "imbtext/classifier.hpp"
#include "imbtext/corpus.hpp"
#include "imbtext/metrics.hpp"
#include "imbtext/rng.hpp"

using namespace imbtext;

namespace {

DocTermMatrix matrix_from_rows(const std::vector<std::vector<std::uint32_t>>& rows,
                               const std::vector<int>& labels) {
    std::size_t v = rows[0].size();
    std::vector<std::string> tokens;
    for (std::size_t j = 0; j < v; ++j) tokens.push_back("f" + std::to_string(j));
    DocTermMatrix m;
    m.vocab = Vocabulary(tokens);
    m.n_docs = rows.size();
    m.labels = labels;
    for (const auto& row : rows)
        m.counts.insert(m.counts.end(), row.begin(), row.end());
    return m;
}

// label = indicator of feature 0 being positive, plus a noise feature
DocTermMatrix separable_matrix(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::vector<std::uint32_t>> rows;
    std::vector<int> labels;
    for (std::size_t i = 0; i < n; ++i) {
        bool positive = i % 3 == 0;
        rows.push_back({positive ? std::uint32_t(1 + rng.uniform_index(4)) : 0,
                        std::uint32_t(rng.uniform_index(6))});
        labels.push_back(positive ? 1 : 0);
    }
    return matrix_from_rows(rows, labels);
}

DocTermMatrix noise_matrix(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::vector<std::uint32_t>> rows;
    std::vector<int> labels;
    for (std::size_t i = 0; i < n; ++i) {
        rows.push_back({std::uint32_t(rng.uniform_index(6)), std::uint32_t(rng.uniform_index(6)),
                        std::uint32_t(rng.uniform_index(6))});
        labels.push_back(int(rng.uniform_index(2)));
    }
    bool has0 = false, has1 = false;
    for (int l : labels) (l ? has1 : has0) = true;
    if (!has0) labels[0] = 0;
    if (!has1) labels[1] = 1;
    return matrix_from_rows(rows, labels);
}

} // namespace

TEST_CASE("a forest separates linearly separable data") {
    DocTermMatrix m = separable_matrix(120, 5);
    ForestConfig cfg;
    cfg.n_trees = 30;
    cfg.seed = 9;
    FittedModel model = fit_forest(m, cfg);
    std::vector<double> probs = predict_proba(model, m);
    std::vector<int> predicted = classify_with_rule(probs, ThresholdRule{0.5});
    for (std::size_t i = 0; i < m.n_docs; ++i) CHECK(predicted[i] == m.labels[i]);
}

TEST_CASE("forest training is deterministic given the seed") {
    DocTermMatrix m = separable_matrix(80, 2);
    ForestConfig cfg;
    cfg.n_trees = 15;
    cfg.seed = 77;
    FittedModel a = fit_forest(m, cfg);
    FittedModel b = fit_forest(m, cfg);
    CHECK(predict_proba(a, m) == predict_proba(b, m));
    CHECK(model_to_json(a) == model_to_json(b));
}

TEST_CASE("forest auc stays near chance on pure-noise labels") {
    double auc_sum = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        DocTermMatrix train = noise_matrix(200, 100 + seed);
        DocTermMatrix test = noise_matrix(200, 200 + seed);
        ForestConfig cfg;
        cfg.n_trees = 25;
        cfg.seed = seed;
        FittedModel model = fit_forest(train, cfg);
        auc_sum += roc_and_auc(predict_proba(model, test), test.labels).second;
    }
    double mean_auc = auc_sum / 10.0;
    CHECK(mean_auc >= 0.4);
    CHECK(mean_auc <= 0.6);
}

TEST_CASE("forest probabilities average the per-tree leaf proportions") {
    Vocabulary vocab({"f0"});
    FittedModel model;
    model.kind = FittedModel::Kind::forest;
    model.vocab = vocab;
    Tree t1, t2;
    t1.nodes.push_back(TreeNode{-1, 0.0, -1, -1, 0.2});
    t2.nodes.push_back(TreeNode{-1, 0.0, -1, -1, 0.6});
    model.trees = {t1, t2};

    LabeledCorpus doc;
    doc.docs = {{"f0", 0}};
    std::vector<double> probs = predict_proba(model, transform(doc, vocab));
    CHECK(probs[0] == doctest::Approx(0.4).epsilon(1e-12));

    // all trees voting 1 gives exactly 1
    t1.nodes[0].leaf_p1 = 1.0;
    t2.nodes[0].leaf_p1 = 1.0;
    model.trees = {t1, t2};
    CHECK(predict_proba(model, transform(doc, vocab))[0] == 1.0);
}

TEST_CASE("forest rejects single-class input and mismatched vocabularies") {
    DocTermMatrix m = separable_matrix(30, 1);
    std::fill(m.labels.begin(), m.labels.end(), 0);
    ForestConfig cfg;
    CHECK_THROWS_AS(fit_forest(m, cfg), std::invalid_argument);

    DocTermMatrix ok = separable_matrix(30, 1);
    cfg.n_trees = 3;
    FittedModel model = fit_forest(ok, cfg);
    DocTermMatrix other = ok;
    other.vocab = Vocabulary({"f0", "f1", "extra"});
    other.counts.assign(other.n_docs * 3, 0);
    CHECK_THROWS_AS(predict_proba(model, other), std::invalid_argument);
}

TEST_CASE("logistic regression learns a perfectly correlated feature") {
    std::vector<std::vector<std::uint32_t>> rows;
    std::vector<int> labels;
    for (int i = 0; i < 40; ++i) {
        bool positive = i % 2 == 0;
        rows.push_back({positive ? 3u : 0u});
        labels.push_back(positive ? 1 : 0);
    }
    DocTermMatrix m = matrix_from_rows(rows, labels);
    FittedModel model = fit_logistic(m, 1e-4, 2000, 1e-6);
    std::vector<double> probs = predict_proba(model, m);
    for (std::size_t i = 0; i < m.n_docs; ++i)
        if (m.labels[i] == 1) CHECK(probs[i] > 0.9);
}

TEST_CASE("intercept-only logistic fit recovers the positive rate") {
    std::vector<std::vector<std::uint32_t>> rows;
    std::vector<int> labels;
    for (int i = 0; i < 100; ++i) {
        rows.push_back({0}); // no usable feature
        labels.push_back(i < 30 ? 1 : 0);
    }
    DocTermMatrix m = matrix_from_rows(rows, labels);
    FittedModel model = fit_logistic(m, 1e-4, 5000, 1e-6);
    std::vector<double> probs = predict_proba(model, m);
    for (double p : probs) CHECK(std::fabs(p - 0.3) <= 1e-6);
    CHECK(model.logistic.converged);
    CHECK(model.logistic.grad_norm <= 1e-6);
}

TEST_CASE("logistic objective never decreases across iterations") {
    DocTermMatrix m = separable_matrix(90, 8);
    FittedModel model = fit_logistic(m, 1e-4, 500, 1e-8);
    const auto& trace = model.logistic.objective_trace;
    REQUIRE(trace.size() >= 2);
    for (std::size_t i = 1; i < trace.size(); ++i) CHECK(trace[i] >= trace[i - 1]);
}

TEST_CASE("a zero logistic model scores one half everywhere") {
    Vocabulary vocab({"f0", "f1"});
    FittedModel model;
    model.kind = FittedModel::Kind::logistic;
    model.vocab = vocab;
    model.logistic.weights = {0.0, 0.0};
    model.logistic.intercept = 0.0;

    LabeledCorpus docs;
    docs.docs = {{"f0 f0 f1", 0}, {"f1", 1}, {"", 0}};
    for (double p : predict_proba(model, transform(docs, vocab))) CHECK(p == 0.5);
}

TEST_CASE("predictions are finite for any count input") {
    DocTermMatrix m = separable_matrix(60, 3);
    ForestConfig cfg;
    cfg.n_trees = 10;
    FittedModel forest = fit_forest(m, cfg);
    FittedModel logistic = fit_logistic(m);
    DocTermMatrix extreme = m;
    for (auto& c : extreme.counts) c = c * 1000u + 1u;
    for (double p : predict_proba(forest, extreme)) CHECK(std::isfinite(p));
    for (double p : predict_proba(logistic, extreme)) {
        CHECK(std::isfinite(p));
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
    }
}

TEST_CASE("models survive a JSON round trip") {
    DocTermMatrix m = separable_matrix(50, 4);
    ForestConfig cfg;
    cfg.n_trees = 8;
    cfg.seed = 21;
    FittedModel forest = fit_forest(m, cfg);
    FittedModel forest_back = model_from_json(model_to_json(forest));
    CHECK(predict_proba(forest, m) == predict_proba(forest_back, m));

    auto path = std::filesystem::temp_directory_path() / "imbtext_model.json";
    save_model(forest, path);
    CHECK(predict_proba(load_model(path), m) == predict_proba(forest, m));

    FittedModel logistic = fit_logistic(m);
    FittedModel logistic_back = model_from_json(model_to_json(logistic));
    CHECK(predict_proba(logistic, m) == predict_proba(logistic_back, m));

    CHECK_THROWS_AS(model_from_json("{\"format_version\": 99}"), std::exception);
}

TEST_CASE("the true conditional probability has the best average brier score") {
    // the exact oracle minimizes expected squared error, so no fitted model
    // beats it on average
    double oracle_sum = 0.0, fitted_sum = 0.0;
    for (std::uint64_t draw = 0; draw < 20; ++draw) {
        SyntheticSpec spec;
        spec.n_docs = 600;
        spec.minority_ratio = 0.25;
        spec.vocab_size = 12;
        spec.length_mean = 8.0;
        spec.seed = 1000 + draw;
        auto [d0, d1] = default_synthetic_dists(12, 0.6);
        spec.class0_word_dist = d0;
        spec.class1_word_dist = d1;
        auto [corpus, oracle_fn] = generate_synthetic(spec);

        LabeledCorpus train, test;
        for (std::size_t i = 0; i < 300; ++i) train.docs.push_back(corpus.docs[i]);
        for (std::size_t i = 300; i < 600; ++i) test.docs.push_back(corpus.docs[i]);

        Vocabulary vocab = fit_vocabulary(train, 1);
        ForestConfig cfg;
        cfg.n_trees = 20;
        cfg.seed = draw;
        FittedModel model = fit_forest(transform(train, vocab), cfg);
        std::vector<double> fitted = predict_proba(model, transform(test, vocab));

        std::vector<double> truth;
        std::vector<int> labels;
        for (const auto& doc : test.docs) {
            truth.push_back(oracle_fn(doc.text));
            labels.push_back(doc.label);
        }
        oracle_sum += brier_score(truth, labels);
        fitted_sum += brier_score(fitted, labels);
    }
    CHECK(oracle_sum / 20.0 <= fitted_sum / 20.0);
}

TEST_CASE("threshold rules classify with the documented tie policy") {
    std::vector<double> probs = {0.4, 0.6};
    CHECK(classify_with_rule(probs, ThresholdRule{0.5}) == std::vector<int>{0, 1});
    CHECK(classify_with_rule({0.5}, ThresholdRule{0.5}) == std::vector<int>{1});
    CHECK(classify_with_rule({0.0, 0.3, 1.0}, ThresholdRule{0.0}) == std::vector<int>{1, 1, 1});
    CHECK_THROWS_AS(classify_with_rule({1.5}, ThresholdRule{0.5}), std::invalid_argument);
}
