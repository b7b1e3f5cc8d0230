// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line and
// the program exits nonzero if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "imbtext/augment.hpp"
#include "imbtext/classifier.hpp"
#include "imbtext/corpus.hpp"
#include "imbtext/decision.hpp"
#include "imbtext/metrics.hpp"
#include "imbtext/rng.hpp"
#include "imbtext/runner.hpp"
#include "imbtext/stats.hpp"
#include "imbtext/vectorize.hpp"
#include "oracles.hpp"

using namespace imbtext;

namespace {

std::vector<double> random_simplex(Rng& rng, std::size_t k) {
    std::vector<double> v(k);
    double sum = 0.0;
    for (double& x : v) {
        x = 0.01 + rng.uniform();
        sum += x;
    }
    for (double& x : v) x /= sum;
    double s2 = 0.0;
    for (double x : v) s2 += x;
    v.back() += 1.0 - s2;
    return v;
}

// --- 1 -----------------------------------------------------------------
bool remap_round_trip(std::string& detail) {
    Rng rng(101);
    double worst = 0.0;
    for (int trial = 0; trial < 10000; ++trial) {
        std::size_t k = 2 + rng.uniform_index(4);
        PriorVector orig{random_simplex(rng, k), DistKind::original};
        PriorVector aug{random_simplex(rng, k), DistKind::augmented};
        ProbVector cond{random_simplex(rng, k), DistKind::original};
        ProbVector back = remap_to_original(remap_to_augmented(cond, orig, aug), orig, aug);
        for (std::size_t i = 0; i < k; ++i)
            worst = std::max(worst, std::fabs(back.probs[i] - cond.probs[i]));
    }
    std::ostringstream os;
    os << "max round-trip error " << worst;
    detail = os.str();
    return worst <= 1e-12;
}

// --- 2 -----------------------------------------------------------------
bool prior_threshold_identity(std::string& detail) {
    SyntheticSpec spec;
    spec.n_docs = 10000;
    spec.minority_ratio = 0.2;
    spec.vocab_size = 2;
    spec.length_mean = 4.0;
    spec.class1_word_dist = {0.9, 0.1};
    spec.class0_word_dist = {0.3, 0.7};
    spec.seed = 202;
    auto [corpus, oracle_fn] = generate_synthetic(spec);

    PriorVector orig{{0.8, 0.2}, DistKind::original};
    PriorVector fifty{{0.5, 0.5}, DistKind::augmented};
    ThresholdRule at_prior = prior_threshold(orig);
    ThresholdRule at_half{0.5};

    std::size_t disagreements = 0;
    for (const auto& doc : corpus.docs) {
        double p = oracle_fn(doc.text);
        ProbVector cond{{1.0 - p, p}, DistKind::original};
        double remapped = remap_to_augmented(cond, orig, fifty).probs[1];
        if (at_prior.apply(p) != at_half.apply(remapped)) ++disagreements;
    }
    detail = std::to_string(disagreements) + " disagreements on 10000 documents";
    return disagreements == 0;
}

// --- 3 -----------------------------------------------------------------
bool two_step_empirical_prior(std::string& detail) {
    LabeledCorpus corpus;
    for (int i = 0; i < 1800; ++i) corpus.docs.push_back({"neg " + std::to_string(i), 0});
    for (int i = 0; i < 200; ++i) corpus.docs.push_back({"pos " + std::to_string(i), 1});

    PriorVector prior{{0.9, 0.1}, DistKind::original};
    std::size_t m = minority_copies_for_balance(2000, prior);
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        AugmentationPlan plan{2000, m, {0.0, 1.0}};
        auto [augmented, info] = random_oversample(corpus, plan, seed);
        double ratio = double(augmented.count_label(1)) / double(augmented.size());
        worst = std::max(worst, std::fabs(ratio - 0.5));
    }
    std::ostringstream os;
    os << "m=" << m << ", worst |ratio - 0.5| = " << worst;
    detail = os.str();
    return worst <= 0.02;
}

// --- 4 -----------------------------------------------------------------
bool auc_pair_equality(std::string& detail) {
    Rng rng(404);
    std::size_t mismatches = 0;
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 2 + rng.uniform_index(199);
        std::vector<double> scores(n);
        std::vector<int> labels(n);
        for (std::size_t i = 0; i < n; ++i) {
            scores[i] = double(rng.uniform_index(101)) / 100.0; // forces ties
            labels[i] = int(rng.uniform_index(2));
        }
        labels[0] = 0;
        labels[n > 1 ? 1 : 0] = 1;
        if (roc_and_auc(scores, labels).second != oracle::auc_pair_counting(scores, labels))
            ++mismatches;
    }
    detail = std::to_string(mismatches) + " mismatches on 200 instances";
    return mismatches == 0;
}

// --- 5 -----------------------------------------------------------------
bool threshold_scan_optimality(std::string& detail) {
    Rng rng(505);
    std::size_t mismatches = 0;
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 4 + rng.uniform_index(120);
        std::vector<double> scores(n);
        std::vector<int> labels(n);
        for (std::size_t i = 0; i < n; ++i) {
            scores[i] = double(rng.uniform_index(1001)) / 1000.0;
            labels[i] = int(rng.uniform_index(2));
        }
        labels[0] = 0;
        labels[n > 1 ? 1 : 0] = 1;
        ThresholdRule rule = optimize_threshold(scores, labels, Objective::balanced_accuracy);
        std::vector<int> predicted(n);
        for (std::size_t i = 0; i < n; ++i) predicted[i] = rule.apply(scores[i]);
        double achieved = balanced_accuracy(confusion_counts(predicted, labels));
        double grid = oracle::grid_scan_best(scores, labels, Objective::balanced_accuracy, 10001);
        if (achieved != grid) ++mismatches;
    }
    detail = std::to_string(mismatches) + " value mismatches on 100 instances";
    return mismatches == 0;
}

// --- 6 -----------------------------------------------------------------
bool bootstrap_null_size(std::string& detail) {
    const std::size_t I = 5, J = 40, B = 500, TESTS = 2000;
    const double sigma = 1.0, sigma_r = 2.0;
    std::size_t rejections = 0;
    for (std::size_t t = 0; t < TESTS; ++t) {
        Rng rng(derive_seed(606, std::string_view("null"), std::uint64_t(t)));
        GainSample sample;
        sample.values.assign(I, std::vector<double>(J));
        for (auto& row : sample.values) {
            double m = rng.normal(0.0, sigma);
            for (double& v : row) v = m + rng.normal(0.0, sigma_r);
        }
        BootstrapResult r =
            bootstrap_test(sample, B, derive_seed(707, std::uint64_t(t)), Exec::parallel);
        if (r.p_value <= 0.01) ++rejections;
    }
    double rate = double(rejections) / double(TESTS);
    std::ostringstream os;
    os << "rejection rate " << rate * 100.0 << "% at nominal 1% (bounds [0.3%, 1.7%])";
    detail = os.str();
    return rate >= 0.003 && rate <= 0.017;
}

// --- 7 -----------------------------------------------------------------
bool band_depth_equality(std::string& detail) {
    Rng rng(808);
    std::size_t mismatches = 0;
    for (int trial = 0; trial < 50; ++trial) {
        CurveEnsemble e;
        e.grid = uniform_grid(101);
        std::size_t n = 3 + rng.uniform_index(13);
        for (std::size_t c = 0; c < n; ++c) {
            std::vector<double> curve(101);
            double bend = rng.uniform(0.3, 3.0);
            for (std::size_t g = 0; g < 101; ++g)
                curve[g] = std::pow(e.grid[g], bend) + rng.uniform(-0.02, 0.02);
            e.curves.push_back(std::move(curve));
        }
        FunctionalBoxplot box = functional_boxplot(e);
        if (box.depths != oracle::mbd_bruteforce(e)) ++mismatches;
    }
    detail = std::to_string(mismatches) + " depth mismatches on 50 ensembles";
    return mismatches == 0;
}

// --- 8 -----------------------------------------------------------------
bool word_sampler_distributions(std::string& detail) {
    LabeledCorpus corpus;
    corpus.docs = {{"a a b b c c d", 1}, {"a b b c c d d e", 1}, {"x y z", 0}};
    DocTermMatrix m = transform(corpus, fit_vocabulary(corpus, 1));
    IowaModel model = iowa_fit(m, 1, IowaVariant::frequency);
    const double lambda = 7.5;

    LabeledCorpus generated = iowa_generate(model, 10000, 909);
    double length_sum = 0.0, token_total = 0.0;
    std::vector<double> counts(m.n_features(), 0.0);
    for (const auto& doc : generated.docs) {
        auto tokens = tokenize(doc.text);
        length_sum += double(tokens.size());
        for (const auto& tok : tokens) {
            ++counts[m.vocab.lookup(tok)];
            ++token_total;
        }
    }
    double mean_len = length_sum / 10000.0;
    double worst_freq = 0.0;
    for (std::size_t j = 0; j < m.n_features(); ++j)
        worst_freq = std::max(worst_freq, std::fabs(counts[j] / token_total - model.weights[j]));
    std::ostringstream os;
    os << "mean length " << mean_len << " (lambda " << lambda << "), worst |freq - g| = "
       << worst_freq;
    detail = os.str();
    return std::fabs(mean_len - lambda) <= 0.1 && worst_freq <= 0.02;
}

// --- 9 -----------------------------------------------------------------
bool oversampling_vs_tuned_threshold(std::string& detail) {
    ExperimentConfig config;
    config.dataset_name = "synthetic10";
    config.corpus.type = CorpusSource::Type::synthetic;
    config.corpus.synthetic.n_docs = 2500;
    config.corpus.synthetic.minority_ratio = 0.1;
    config.corpus.synthetic.vocab_size = 40;
    config.corpus.synthetic.length_mean = 8.0;
    config.corpus.synthetic.seed = 4242;
    config.corpus.separation = 0.8;
    config.train_sizes = {500};
    config.validation_sizes = {125};
    config.test_size = 1000;
    config.repetitions = 2;
    config.augment_replicates = 8;
    config.bootstrap_B = 500;
    config.master_seed = 20240;
    config.classifier.kind = ClassifierSpec::Kind::forest;
    config.classifier.forest.n_trees = 100;
    RunnerMethod method;
    method.method.kind = AugmentKind::random_oversampling;
    method.label = "random_oversampling";
    config.methods = {method};

    ExperimentResult result = run_experiment(config);
    const MetricCell* regime1 = nullptr;
    const MetricCell* regime2 = nullptr;
    for (const CellResult& cell : result.cells) {
        if (!cell.error.empty()) {
            detail = "cell error: " + cell.error;
            return false;
        }
        for (const MetricCell& mc : cell.metrics) {
            if (mc.metric != "ba") continue;
            if (cell.regime == Regime::both_default) regime1 = &mc;
            if (cell.regime == Regime::base_optimized) regime2 = &mc;
        }
    }
    if (!regime1 || !regime2 || !regime1->error.empty() || !regime2->error.empty()) {
        detail = "missing balanced-accuracy cells";
        return false;
    }
    bool gain_at_default = regime1->mean_gain > 0.0;
    bool tuned_not_worse = std::fabs(regime2->mean_gain) <= regime1->mean_gain;
    bool not_sig_positive = !(regime2->p_value <= 0.01 && regime2->mean_gain > 0.0);
    std::ostringstream os;
    os << "default-threshold gain " << regime1->mean_gain << " (p=" << regime1->p_value
       << "), tuned-threshold gain " << regime2->mean_gain << " (p=" << regime2->p_value << ")";
    detail = os.str();
    return gain_at_default && tuned_not_worse && not_sig_positive;
}

// --- 10 ----------------------------------------------------------------
bool deterministic_reports(std::string& detail) {
    ExperimentConfig config;
    config.dataset_name = "determinism";
    config.corpus.type = CorpusSource::Type::synthetic;
    config.corpus.synthetic.n_docs = 2500;
    config.corpus.synthetic.minority_ratio = 0.15;
    config.corpus.synthetic.vocab_size = 30;
    config.corpus.synthetic.length_mean = 10.0;
    config.corpus.synthetic.seed = 77;
    config.corpus.separation = 0.6;
    config.classifier.forest.n_trees = 50;
    config.master_seed = 31337;
    auto add_method = [&](AugmentKind kind) {
        RunnerMethod rm;
        rm.method.kind = kind;
        rm.method.eda.alpha = 0.1;
        rm.label = default_method_label(rm.method);
        config.methods.push_back(rm);
    };
    add_method(AugmentKind::random_oversampling);
    add_method(AugmentKind::rose);
    add_method(AugmentKind::smote);
    add_method(AugmentKind::eda_rd);
    add_method(AugmentKind::iowa_frequency);
    apply_desk_scale(config);

    auto read_bytes = [](const std::filesystem::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    auto dir1 = std::filesystem::temp_directory_path() / "imbtext_accept_run1";
    auto dir2 = std::filesystem::temp_directory_path() / "imbtext_accept_run2";
    std::filesystem::remove_all(dir1);
    std::filesystem::remove_all(dir2);
    write_experiment_outputs(run_experiment(config), dir1);
    write_experiment_outputs(run_experiment(config), dir2);
    std::string a = read_bytes(dir1 / "report.csv");
    std::string b = read_bytes(dir2 / "report.csv");
    std::ostringstream os;
    os << "report.csv: " << a.size() << " bytes vs " << b.size() << " bytes";
    detail = os.str();
    return !a.empty() && a == b;
}

struct Criterion {
    const char* name;
    bool (*run)(std::string&);
    double time_limit_s; // 0 = no bound
};

} // namespace

// With no argument every criterion runs; a 1-based index runs just that one
// (ctest registers them individually).
int main(int argc, char** argv) {
    const std::vector<Criterion> criteria = {
        {"conditional-probability remap round-trip", remap_round_trip, 1.0},
        {"prior threshold equals remapped 0.5 threshold", prior_threshold_identity, 0.0},
        {"two-step oversampling hits the 50-50 prior", two_step_empirical_prior, 0.0},
        {"trapezoidal AUC equals pair counting", auc_pair_equality, 0.0},
        {"threshold optimizer beats a 10001-point grid scan", threshold_scan_optimality, 0.0},
        {"bootstrap test size at the 1% level", bootstrap_null_size, 300.0},
        {"band depth equals the pair-enumeration definition", band_depth_equality, 0.0},
        {"word-sampler length and token distributions", word_sampler_distributions, 0.0},
        {"oversampling gain vanishes once the threshold is tuned",
         oversampling_vs_tuned_threshold, 900.0},
        {"desk-scale runs reproduce the report byte for byte", deterministic_reports, 0.0},
    };

    std::size_t first = 0, last = criteria.size();
    if (argc > 1) {
        int pick = std::atoi(argv[1]);
        if (pick < 1 || std::size_t(pick) > criteria.size()) {
            std::fprintf(stderr, "criterion index must be 1..%zu\n", criteria.size());
            return 2;
        }
        first = std::size_t(pick - 1);
        last = first + 1;
    }

    int failures = 0;
    for (std::size_t i = first; i < last; ++i) {
        std::string detail;
        auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = criteria[i].run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (criteria[i].time_limit_s > 0.0 && elapsed > criteria[i].time_limit_s) {
            ok = false;
            detail += " [exceeded time limit]";
        }
        if (!ok) ++failures;
        std::printf("%s  %2zu. %-55s (%.2fs) %s\n", ok ? "PASS" : "FAIL", i + 1,
                    criteria[i].name, elapsed, detail.c_str());
        std::fflush(stdout);
    }
    if (failures) std::printf("%d of %zu criteria failed\n", failures, last - first);
    return failures;
}
