#include "imbtext/runner.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "imbtext/csv.hpp"
#include "imbtext/rng.hpp"

namespace imbtext {

namespace {

constexpr std::size_t kNumMetrics = 7;

// shortest representation that parses back to the same double
std::string format_double(double v) {
    char buf[40];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

std::string trim_number(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

} // namespace

const std::vector<std::string>& metric_names() {
    static const std::vector<std::string> names = {
        "ba", "f1", "sensitivity", "specificity", "accuracy", "auc", "brier"};
    return names;
}

std::string regime_name(Regime regime) {
    switch (regime) {
        case Regime::both_default: return "both_default";
        case Regime::base_optimized: return "base_optimized_vs_aug_default";
        case Regime::both_optimized: return "both_optimized";
    }
    throw std::logic_error("regime_name: unknown regime");
}

std::string default_method_label(const AugmentMethod& method) {
    std::string label = augment_kind_name(method.kind);
    if (method.kind == AugmentKind::rose) label += "_" + trim_number(method.rose.shrinkage);
    return label;
}

std::vector<RunnerMethod> default_methods() {
    std::vector<RunnerMethod> out;
    auto add = [&](AugmentMethod m) { out.push_back({m, default_method_label(m)}); };
    add({AugmentKind::random_oversampling, {}, {}, {}});
    for (double shrink : {0.5, 1.0, 3.0}) {
        AugmentMethod m{AugmentKind::rose, {}, {}, {}};
        m.rose.shrinkage = shrink;
        add(m);
    }
    add({AugmentKind::smote, {}, {}, {}});
    add({AugmentKind::borderline_smote, {}, {}, {}});
    for (AugmentKind kind : {AugmentKind::eda_sr, AugmentKind::eda_ri, AugmentKind::eda_rd}) {
        AugmentMethod m{kind, {}, {}, {}};
        m.eda.alpha = 0.1;
        add(m);
    }
    for (AugmentKind kind : {AugmentKind::iowa_frequency, AugmentKind::iowa_diff_frequency,
                             AugmentKind::iowa_idf, AugmentKind::iowa_diff_idf})
        add({kind, {}, {}, {}});
    return out;
}

void ExperimentConfig::validate() const {
    if (train_sizes.empty()) throw std::invalid_argument("config: train_sizes is empty");
    if (train_sizes.size() != validation_sizes.size())
        throw std::invalid_argument("config: validation_sizes must pair with train_sizes");
    for (std::size_t s : train_sizes)
        if (s == 0) throw std::invalid_argument("config: zero train size");
    for (std::size_t s : validation_sizes)
        if (s == 0) throw std::invalid_argument("config: zero validation size");
    if (test_size == 0) throw std::invalid_argument("config: zero test size");
    if (repetitions == 0) throw std::invalid_argument("config: repetitions must be positive");
    if (augment_replicates == 0)
        throw std::invalid_argument("config: augment_replicates must be positive");
    if (target_ratio <= 0.0 || target_ratio >= 1.0)
        throw std::invalid_argument("config: target_ratio must be in (0, 1)");
    if (bootstrap_B == 0) throw std::invalid_argument("config: bootstrap_B must be positive");
    if (roc_grid_points < 2) throw std::invalid_argument("config: roc_grid_points must be >= 2");
    if (classifier.kind == ClassifierSpec::Kind::oracle &&
        corpus.type != CorpusSource::Type::synthetic)
        throw std::invalid_argument("config: the oracle classifier needs a synthetic corpus");
}

void apply_desk_scale(ExperimentConfig& config) {
    config.train_sizes = {200};
    config.validation_sizes = {50};
    config.test_size = 400;
    config.repetitions = 2;
    config.augment_replicates = 8;
    config.bootstrap_B = 500;
}

bool MetricCell::operator==(const MetricCell& other) const {
    return metric == other.metric && mean_gain == other.mean_gain && p_value == other.p_value &&
           gains.values == other.gains.values &&
           bootstrap_degenerate == other.bootstrap_degenerate && error == other.error;
}

bool CellResult::operator==(const CellResult& other) const {
    return dataset == other.dataset && method == other.method && train_size == other.train_size &&
           regime == other.regime && metrics == other.metrics && error == other.error;
}

namespace {

// ---------------------------------------------------------------------------
// corpus loading

struct LoadedCorpus {
    LabeledCorpus corpus;
    std::optional<SyntheticOracle> oracle;
};

LoadedCorpus load_corpus(const ExperimentConfig& config) {
    LoadedCorpus out;
    if (config.corpus.type == CorpusSource::Type::csv) {
        out.corpus =
            load_csv(config.corpus.path, config.corpus.text_col, config.corpus.label_col);
    } else {
        SyntheticSpec spec = config.corpus.synthetic;
        if (spec.class0_word_dist.empty() && spec.class1_word_dist.empty()) {
            auto [d0, d1] = default_synthetic_dists(spec.vocab_size, config.corpus.separation);
            spec.class0_word_dist = std::move(d0);
            spec.class1_word_dist = std::move(d1);
        }
        auto [corpus, oracle] = generate_synthetic(spec);
        out.corpus = std::move(corpus);
        out.oracle = std::move(oracle);
    }
    out.corpus.name = config.dataset_name;
    return out;
}

// ---------------------------------------------------------------------------
// splits

struct SizeSplit {
    std::vector<LabeledCorpus> trains;
    LabeledCorpus validation;
    std::vector<std::vector<std::size_t>> train_indices;
    std::vector<std::size_t> validation_indices;
};

LabeledCorpus gather_docs(const LabeledCorpus& corpus, const std::vector<std::size_t>& idx,
                          const std::string& name) {
    LabeledCorpus out;
    out.name = name;
    out.docs.reserve(idx.size());
    for (std::size_t i : idx) out.docs.push_back(corpus.docs[i]);
    return out;
}

// Shared test set carved once; per-size train/validation sets carved from the
// same permutation past the test block (disjoint within a size).
struct CarvedSplits {
    LabeledCorpus test;
    std::vector<std::size_t> test_indices;
    std::vector<SizeSplit> per_size;
};

CarvedSplits carve_splits(const LabeledCorpus& corpus, const ExperimentConfig& config) {
    CarvedSplits out;
    if (!config.share_test_across_sizes) {
        // independent split per size; the test set from the first size is reported
        for (std::size_t s = 0; s < config.train_sizes.size(); ++s) {
            SplitPlan plan{config.train_sizes[s], config.validation_sizes[s], config.test_size,
                           config.repetitions,
                           derive_seed(config.master_seed, std::string_view("split"),
                                       std::uint64_t(s)),
                           config.stratify_splits};
            ExperimentSplit split = make_splits(corpus, plan);
            SizeSplit ss;
            ss.trains = std::move(split.train_samples);
            ss.validation = std::move(split.validation);
            ss.train_indices = std::move(split.train_indices);
            ss.validation_indices = std::move(split.validation_indices);
            out.per_size.push_back(std::move(ss));
            if (s == 0) {
                out.test = std::move(split.test);
                out.test_indices = std::move(split.test_indices);
            }
        }
        return out;
    }

    std::vector<std::size_t> order =
        shuffled_indices(corpus, derive_seed(config.master_seed, std::string_view("split")),
                         config.stratify_splits);

    if (config.test_size > corpus.size())
        throw std::invalid_argument("carve_splits: test_size exceeds corpus size");
    out.test_indices.assign(order.begin(), order.begin() + std::ptrdiff_t(config.test_size));
    out.test = gather_docs(corpus, out.test_indices, corpus.name + "/test");

    for (std::size_t s = 0; s < config.train_sizes.size(); ++s) {
        std::size_t need = config.repetitions * config.train_sizes[s] + config.validation_sizes[s];
        if (config.test_size + need > corpus.size())
            throw std::invalid_argument(
                "carve_splits: size " + std::to_string(config.train_sizes[s]) + " requires " +
                std::to_string(config.test_size + need) + " documents but corpus has " +
                std::to_string(corpus.size()));
        std::size_t cursor = config.test_size;
        SizeSplit ss;
        for (std::size_t r = 0; r < config.repetitions; ++r) {
            std::vector<std::size_t> idx(order.begin() + std::ptrdiff_t(cursor),
                                         order.begin() + std::ptrdiff_t(cursor + config.train_sizes[s]));
            cursor += config.train_sizes[s];
            ss.trains.push_back(
                gather_docs(corpus, idx, corpus.name + "/train" + std::to_string(r)));
            ss.train_indices.push_back(std::move(idx));
        }
        ss.validation_indices.assign(order.begin() + std::ptrdiff_t(cursor),
                                     order.begin() + std::ptrdiff_t(cursor + config.validation_sizes[s]));
        ss.validation = gather_docs(corpus, ss.validation_indices, corpus.name + "/validation");
        out.per_size.push_back(std::move(ss));
    }
    return out;
}

std::string size_split_json(const CarvedSplits& carved, std::size_t size_index) {
    nlohmann::json j;
    j["train"] = carved.per_size[size_index].train_indices;
    j["validation"] = carved.per_size[size_index].validation_indices;
    j["test"] = carved.test_indices;
    return j.dump(2);
}

// ---------------------------------------------------------------------------
// model scoring

std::vector<int> labels_of(const LabeledCorpus& corpus) {
    std::vector<int> labels;
    labels.reserve(corpus.size());
    for (const auto& d : corpus.docs) labels.push_back(d.label);
    return labels;
}

PriorVector empirical_prior(const std::vector<int>& labels, DistKind kind) {
    double n1 = 0.0;
    for (int l : labels) n1 += l;
    double p1 = n1 / double(labels.size());
    return PriorVector{{1.0 - p1, p1}, kind};
}

struct ScoringContext {
    const ExperimentConfig* config;
    const SyntheticOracle* oracle; // non-null only for synthetic corpora
    const LabeledCorpus* validation;
    const LabeledCorpus* test;
};

struct ScoreSet {
    std::vector<double> validation;
    std::vector<double> test;
};

std::vector<double> oracle_scores(const SyntheticOracle& oracle, const LabeledCorpus& corpus) {
    std::vector<double> out;
    out.reserve(corpus.size());
    for (const auto& d : corpus.docs) out.push_back(oracle(d.text));
    return out;
}

FittedModel fit_configured(const DocTermMatrix& matrix, const ClassifierSpec& spec,
                           std::uint64_t seed) {
    if (spec.kind == ClassifierSpec::Kind::forest) {
        ForestConfig cfg = spec.forest;
        cfg.seed = seed;
        return fit_forest(matrix, cfg);
    }
    return fit_logistic(matrix, spec.logistic_l2, spec.logistic_max_iter, spec.logistic_tol);
}

// Fit on a text corpus: vocabulary comes from the (possibly augmented)
// training text only, then validation/test are projected onto it.
ScoreSet fit_and_score_corpus(const LabeledCorpus& train, const ScoringContext& ctx,
                              std::uint64_t seed) {
    Vocabulary vocab = fit_vocabulary(train, ctx.config->vocab_min_count);
    DocTermMatrix matrix = transform(train, vocab);
    FittedModel model = fit_configured(matrix, ctx.config->classifier, seed);
    ScoreSet scores;
    scores.validation = predict_proba(model, transform(*ctx.validation, vocab));
    scores.test = predict_proba(model, transform(*ctx.test, vocab));
    return scores;
}

ScoreSet score_matrix_model(const DocTermMatrix& train_matrix, const Vocabulary& vocab,
                            const ScoringContext& ctx, std::uint64_t seed) {
    FittedModel model = fit_configured(train_matrix, ctx.config->classifier, seed);
    ScoreSet scores;
    scores.validation = predict_proba(model, transform(*ctx.validation, vocab));
    scores.test = predict_proba(model, transform(*ctx.test, vocab));
    return scores;
}

// ---------------------------------------------------------------------------
// per-replicate evaluation

struct ThresholdedMetrics {
    double ba = 0.0, f1 = 0.0, sensitivity = 0.0, specificity = 0.0, accuracy = 0.0;
};

ThresholdedMetrics thresholded_metrics(const std::vector<double>& scores,
                                       const std::vector<int>& labels,
                                       const ThresholdRule& rule) {
    std::vector<int> predicted(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) predicted[i] = rule.apply(scores[i]);
    ConfusionCounts c = confusion_counts(predicted, labels);
    ThresholdedMetrics m;
    m.ba = balanced_accuracy(c);
    m.f1 = f1_score(c);
    m.sensitivity = c.tp + c.fn > 0 ? double(c.tp) / double(c.tp + c.fn) : 0.0;
    m.specificity = c.tn + c.fp > 0 ? double(c.tn) / double(c.tn + c.fp) : 0.0;
    m.accuracy = accuracy(c);
    return m;
}

std::array<double, kNumMetrics> metric_array(const ThresholdedMetrics& t, double auc, double brier) {
    return {t.ba, t.f1, t.sensitivity, t.specificity, t.accuracy, auc, brier};
}

struct BaseEval {
    ThresholdedMetrics at_default;
    ThresholdedMetrics at_optimized;
    double auc = 0.0;
    double brier = 0.0;
    std::vector<double> roc_on_grid;
    std::string error;
};

struct ReplicateEval {
    ThresholdedMetrics at_default;
    ThresholdedMetrics at_optimized;
    double auc = 0.0;
    double brier = 0.0;
    std::vector<double> roc_on_grid;
    std::string error;
};

BaseEval evaluate_base(const LabeledCorpus& train, const ScoringContext& ctx,
                       const std::vector<int>& val_labels, const std::vector<int>& test_labels,
                       const std::vector<double>& grid, std::uint64_t seed) {
    BaseEval eval;
    try {
        ScoreSet scores;
        if (ctx.config->classifier.kind == ClassifierSpec::Kind::oracle)
            scores = {oracle_scores(*ctx.oracle, *ctx.validation),
                      oracle_scores(*ctx.oracle, *ctx.test)};
        else
            scores = fit_and_score_corpus(train, ctx, seed);

        ThresholdRule opt =
            optimize_threshold(scores.validation, val_labels, ctx.config->objective);
        eval.at_default = thresholded_metrics(scores.test, test_labels, ThresholdRule{0.5});
        eval.at_optimized = thresholded_metrics(scores.test, test_labels, opt);
        auto [curve, auc] = roc_and_auc(scores.test, test_labels);
        eval.auc = auc;
        eval.brier = brier_score(scores.test, test_labels);
        eval.roc_on_grid = interpolate_roc(curve, grid);
    } catch (const std::exception& e) {
        eval.error = e.what();
    }
    return eval;
}

ReplicateEval evaluate_replicate(const LabeledCorpus& train, const AugmentMethod& method,
                                 const ScoringContext& ctx, const std::vector<int>& val_labels,
                                 const std::vector<int>& test_labels,
                                 const std::vector<double>& grid, std::uint64_t seed) {
    ReplicateEval eval;
    try {
        AugmentRequest req{ctx.config->target_ratio, seed};
        std::vector<int> train_labels = labels_of(train);
        PriorVector orig_prior = empirical_prior(train_labels, DistKind::original);

        ScoreSet raw;
        PriorVector aug_prior;
        if (is_text_method(method.kind)) {
            auto [aug_corpus, info] = balance_corpus(train, method, req);
            aug_prior = empirical_prior(labels_of(aug_corpus), DistKind::augmented);
            if (ctx.config->classifier.kind == ClassifierSpec::Kind::oracle) {
                // exact conditional probabilities under the augmented distribution
                auto remap = [&](std::vector<double> scores) {
                    for (double& s : scores) {
                        ProbVector p{{1.0 - s, s}, DistKind::original};
                        s = remap_to_augmented(p, orig_prior, aug_prior).probs[1];
                    }
                    return scores;
                };
                raw.validation = remap(oracle_scores(*ctx.oracle, *ctx.validation));
                raw.test = remap(oracle_scores(*ctx.oracle, *ctx.test));
            } else {
                raw = fit_and_score_corpus(aug_corpus, ctx, seed);
            }
        } else {
            if (ctx.config->classifier.kind == ClassifierSpec::Kind::oracle)
                throw std::invalid_argument(
                    "oracle classifier supports text-space methods only");
            Vocabulary vocab = fit_vocabulary(train, ctx.config->vocab_min_count);
            DocTermMatrix matrix = transform(train, vocab);
            auto [aug_matrix, info] = balance_matrix(matrix, method, req);
            aug_prior = empirical_prior(aug_matrix.labels, DistKind::augmented);
            raw = score_matrix_model(aug_matrix, vocab, ctx, seed);
        }

        ThresholdRule opt =
            optimize_threshold(raw.validation, val_labels, ctx.config->objective);
        eval.at_default = thresholded_metrics(raw.test, test_labels, ThresholdRule{0.5});
        eval.at_optimized = thresholded_metrics(raw.test, test_labels, opt);

        std::vector<double> remapped = remap_scores_for_scoring(raw.test, orig_prior, aug_prior);
        auto [curve, auc] = roc_and_auc(remapped, test_labels);
        eval.auc = auc;
        eval.brier = brier_score(remapped, test_labels);
        eval.roc_on_grid = interpolate_roc(curve, grid);
    } catch (const std::exception& e) {
        eval.error = e.what();
    }
    return eval;
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& config_in) {
    ExperimentConfig config = config_in;
    config.validate();

    ExperimentResult result;
    result.dataset = config.dataset_name;
    if (config.methods.empty()) {
        result.warnings.push_back("no augmentation methods configured; nothing to compare");
        return result;
    }

    LoadedCorpus loaded = load_corpus(config);
    result.dataset = loaded.corpus.name;
    CarvedSplits carved = carve_splits(loaded.corpus, config);
    std::vector<double> grid = uniform_grid(config.roc_grid_points);
    std::vector<int> test_labels = labels_of(carved.test);

    const std::size_t reps = config.repetitions;
    const std::size_t j_n = config.augment_replicates;

    for (std::size_t s = 0; s < config.train_sizes.size(); ++s) {
        result.split_audits.emplace_back(config.train_sizes[s], size_split_json(carved, s));
        const SizeSplit& split = carved.per_size[s];
        std::vector<int> val_labels = labels_of(split.validation);
        ScoringContext ctx{&config, loaded.oracle ? &*loaded.oracle : nullptr, &split.validation,
                           &carved.test};

        // base models, one per repetition, shared by every method
        std::vector<BaseEval> base(reps);
        for_each_index(reps, config.exec, [&](std::size_t r) {
            std::uint64_t seed = derive_seed(config.master_seed, std::string_view("base"),
                                             std::uint64_t(s), std::uint64_t(r));
            base[r] = evaluate_base(split.trains[r], ctx, val_labels, test_labels, grid, seed);
        });
        result.stats.base_models += reps;
        std::string base_error;
        for (const auto& b : base)
            if (!b.error.empty() && base_error.empty()) base_error = "base model: " + b.error;

        std::vector<double> base_mean_roc(grid.size(), 0.0);
        if (base_error.empty()) {
            for (const auto& b : base)
                for (std::size_t g = 0; g < grid.size(); ++g) base_mean_roc[g] += b.roc_on_grid[g];
            for (double& v : base_mean_roc) v /= double(reps);
        }

        for (const RunnerMethod& rm : config.methods) {
            std::vector<ReplicateEval> evals(reps * j_n);
            std::string cell_error = base_error;
            if (cell_error.empty()) {
                for_each_index(reps * j_n, config.exec, [&](std::size_t idx) {
                    std::size_t r = idx / j_n;
                    std::size_t j = idx % j_n;
                    std::uint64_t seed =
                        derive_seed(config.master_seed, std::string_view("cell"),
                                    std::uint64_t(s), std::uint64_t(r), rm.label,
                                    std::uint64_t(j));
                    evals[idx] = evaluate_replicate(split.trains[r], rm.method, ctx, val_labels,
                                                    test_labels, grid, seed);
                });
                result.stats.augmented_models += reps * j_n;
                for (const auto& e : evals)
                    if (!e.error.empty() && cell_error.empty()) cell_error = e.error;
            }

            for (Regime regime :
                 {Regime::both_default, Regime::base_optimized, Regime::both_optimized}) {
                CellResult cell;
                cell.dataset = result.dataset;
                cell.method = rm.label;
                cell.train_size = config.train_sizes[s];
                cell.regime = regime;
                cell.error = cell_error;
                if (cell_error.empty()) {
                    bool base_opt = regime != Regime::both_default;
                    bool aug_opt = regime == Regime::both_optimized;
                    for (std::size_t m = 0; m < kNumMetrics; ++m) {
                        MetricCell mc;
                        mc.metric = metric_names()[m];
                        try {
                            GainSample gains;
                            gains.values.assign(reps, std::vector<double>(j_n, 0.0));
                            double sum = 0.0;
                            for (std::size_t r = 0; r < reps; ++r) {
                                auto base_vals = metric_array(
                                    base_opt ? base[r].at_optimized : base[r].at_default,
                                    base[r].auc, base[r].brier);
                                for (std::size_t j = 0; j < j_n; ++j) {
                                    const ReplicateEval& e = evals[r * j_n + j];
                                    auto aug_vals = metric_array(
                                        aug_opt ? e.at_optimized : e.at_default, e.auc, e.brier);
                                    double gain = percentage_gain(aug_vals[m], base_vals[m]);
                                    gains.values[r][j] = gain;
                                    sum += gain;
                                }
                            }
                            mc.mean_gain = sum / double(reps * j_n);
                            if (reps >= 2 && j_n >= 2) {
                                std::uint64_t seed = derive_seed(
                                    config.master_seed, std::string_view("boot"),
                                    std::uint64_t(s), rm.label, std::uint64_t(int(regime)),
                                    std::uint64_t(m));
                                BootstrapResult boot = bootstrap_test(
                                    gains, config.bootstrap_B, seed, config.exec);
                                mc.p_value = boot.p_value;
                                mc.bootstrap_degenerate = boot.degenerate;
                                mc.gains = std::move(gains);
                            } else {
                                mc.gains = std::move(gains);
                                mc.p_value = 1.0;
                                mc.error = "significance test needs >= 2 repetitions and replicates";
                            }
                        } catch (const std::exception& e) {
                            mc.error = e.what();
                            mc.gains.values.clear();
                            mc.mean_gain = 0.0;
                            mc.p_value = 1.0;
                        }
                        cell.metrics.push_back(std::move(mc));
                    }
                }
                result.cells.push_back(std::move(cell));
            }

            // ROC ensemble for this (method, size)
            if (cell_error.empty()) {
                RocEnsembleResult roc;
                roc.method = rm.label;
                roc.train_size = config.train_sizes[s];
                roc.ensemble.grid = grid;
                for (const auto& e : evals) roc.ensemble.curves.push_back(e.roc_on_grid);
                roc.base_mean = base_mean_roc;
                if (roc.ensemble.curves.size() >= 3) {
                    roc.box = functional_boxplot(roc.ensemble, config.exec);
                    result.roc.push_back(std::move(roc));
                } else {
                    result.warnings.push_back("roc ensemble for " + rm.label +
                                              " skipped: fewer than 3 curves");
                }
            } else {
                result.warnings.push_back("cell " + rm.label + "@" +
                                          std::to_string(config.train_sizes[s]) +
                                          " failed: " + cell_error);
            }
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// reports and serialization

void emit_report_csv(const std::vector<CellResult>& cells, std::ostream& out) {
    out << "dataset,method,train_size,regime,metric,mean_gain,p_value,significant_1pct,error\n";
    for (const CellResult& cell : cells) {
        if (!cell.error.empty()) {
            for (const std::string& metric : metric_names())
                out << cell.dataset << ',' << cell.method << ',' << cell.train_size << ','
                    << regime_name(cell.regime) << ',' << metric << ",,,," << csv_escape(cell.error)
                    << "\n";
            continue;
        }
        for (const MetricCell& mc : cell.metrics) {
            out << cell.dataset << ',' << cell.method << ',' << cell.train_size << ','
                << regime_name(cell.regime) << ',' << mc.metric << ',';
            if (mc.error.empty())
                out << format_double(mc.mean_gain) << ',' << format_double(mc.p_value) << ','
                    << (mc.p_value <= 0.01 ? "1" : "0") << ',';
            else
                out << ",,," << csv_escape(mc.error);
            out << "\n";
        }
    }
}

std::string report_to_json(const std::vector<CellResult>& cells) {
    nlohmann::json rows = nlohmann::json::array();
    for (const CellResult& cell : cells) {
        for (const MetricCell& mc : cell.metrics) {
            nlohmann::json row;
            row["dataset"] = cell.dataset;
            row["method"] = cell.method;
            row["train_size"] = cell.train_size;
            row["regime"] = regime_name(cell.regime);
            row["metric"] = mc.metric;
            if (mc.error.empty()) {
                row["mean_gain"] = mc.mean_gain;
                row["p_value"] = mc.p_value;
                row["significant_1pct"] = mc.p_value <= 0.01;
            } else {
                row["error"] = mc.error;
            }
            rows.push_back(std::move(row));
        }
        if (!cell.error.empty()) {
            nlohmann::json row;
            row["dataset"] = cell.dataset;
            row["method"] = cell.method;
            row["train_size"] = cell.train_size;
            row["regime"] = regime_name(cell.regime);
            row["error"] = cell.error;
            rows.push_back(std::move(row));
        }
    }
    return rows.dump(2);
}

namespace {

Regime regime_from_name(const std::string& name) {
    for (Regime r : {Regime::both_default, Regime::base_optimized, Regime::both_optimized})
        if (regime_name(r) == name) return r;
    throw std::runtime_error("unknown regime '" + name + "'");
}

} // namespace

std::string cells_to_json(const std::vector<CellResult>& cells) {
    nlohmann::json arr = nlohmann::json::array();
    for (const CellResult& cell : cells) {
        nlohmann::json j;
        j["dataset"] = cell.dataset;
        j["method"] = cell.method;
        j["train_size"] = cell.train_size;
        j["regime"] = regime_name(cell.regime);
        j["error"] = cell.error;
        nlohmann::json metrics = nlohmann::json::array();
        for (const MetricCell& mc : cell.metrics) {
            nlohmann::json m;
            m["metric"] = mc.metric;
            m["mean_gain"] = mc.mean_gain;
            m["p_value"] = mc.p_value;
            m["gains"] = mc.gains.values;
            m["bootstrap_degenerate"] = mc.bootstrap_degenerate;
            m["error"] = mc.error;
            metrics.push_back(std::move(m));
        }
        j["metrics"] = std::move(metrics);
        arr.push_back(std::move(j));
    }
    return arr.dump(2);
}

std::vector<CellResult> cells_from_json(const std::string& text) {
    nlohmann::json arr = nlohmann::json::parse(text);
    std::vector<CellResult> cells;
    for (const auto& j : arr) {
        CellResult cell;
        cell.dataset = j.at("dataset").get<std::string>();
        cell.method = j.at("method").get<std::string>();
        cell.train_size = j.at("train_size").get<std::size_t>();
        cell.regime = regime_from_name(j.at("regime").get<std::string>());
        cell.error = j.at("error").get<std::string>();
        for (const auto& m : j.at("metrics")) {
            MetricCell mc;
            mc.metric = m.at("metric").get<std::string>();
            mc.mean_gain = m.at("mean_gain").get<double>();
            mc.p_value = m.at("p_value").get<double>();
            mc.gains.values = m.at("gains").get<std::vector<std::vector<double>>>();
            mc.bootstrap_degenerate = m.at("bootstrap_degenerate").get<bool>();
            mc.error = m.at("error").get<std::string>();
            cell.metrics.push_back(std::move(mc));
        }
        cells.push_back(std::move(cell));
    }
    return cells;
}

namespace {

std::string sanitize_for_filename(const std::string& s) {
    std::string out;
    for (char c : s)
        out.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ? c
                                                                                          : '_');
    return out;
}

} // namespace

void write_experiment_outputs(const ExperimentResult& result,
                              const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);

    {
        nlohmann::json j;
        j["dataset"] = result.dataset;
        j["cells"] = nlohmann::json::parse(cells_to_json(result.cells));
        j["warnings"] = result.warnings;
        j["stats"] = {{"base_models", result.stats.base_models},
                      {"augmented_models", result.stats.augmented_models}};
        std::ofstream out(out_dir / "results.json", std::ios::binary);
        if (!out) throw std::runtime_error("cannot write results.json");
        out << j.dump(2) << "\n";
    }
    {
        std::ofstream out(out_dir / "report.csv", std::ios::binary);
        if (!out) throw std::runtime_error("cannot write report.csv");
        emit_report_csv(result.cells, out);
    }
    for (const auto& [size, json_text] : result.split_audits) {
        std::ofstream out(out_dir / ("splits_" + std::to_string(size) + ".json"),
                          std::ios::binary);
        out << json_text << "\n";
    }
    for (const RocEnsembleResult& roc : result.roc) {
        std::ofstream out(out_dir / ("roc_" + sanitize_for_filename(roc.method) + "_" +
                                     std::to_string(roc.train_size) + ".json"),
                          std::ios::binary);
        out << functional_boxplot_json(roc.ensemble, roc.box, roc.base_mean) << "\n";
    }
}

// ---------------------------------------------------------------------------
// config parsing

namespace {

Objective objective_from_name(const std::string& name) {
    if (name == "balanced_accuracy" || name == "ba") return Objective::balanced_accuracy;
    if (name == "f1") return Objective::f1;
    if (name == "accuracy") return Objective::accuracy;
    throw std::runtime_error("unknown objective '" + name + "'");
}

std::string objective_name(Objective objective) {
    switch (objective) {
        case Objective::balanced_accuracy: return "balanced_accuracy";
        case Objective::f1: return "f1";
        case Objective::accuracy: return "accuracy";
    }
    throw std::logic_error("objective_name: unknown objective");
}

} // namespace

ExperimentConfig config_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    ExperimentConfig config;

    config.dataset_name = j.value("dataset_name", config.dataset_name);
    if (j.contains("corpus")) {
        const auto& c = j.at("corpus");
        std::string type = c.at("type").get<std::string>();
        if (type == "csv") {
            config.corpus.type = CorpusSource::Type::csv;
            config.corpus.path = c.at("path").get<std::string>();
            config.corpus.text_col = c.value("text_col", config.corpus.text_col);
            config.corpus.label_col = c.value("label_col", config.corpus.label_col);
        } else if (type == "synthetic") {
            config.corpus.type = CorpusSource::Type::synthetic;
            auto& spec = config.corpus.synthetic;
            spec.n_docs = c.at("n_docs").get<std::size_t>();
            spec.minority_ratio = c.at("minority_ratio").get<double>();
            spec.vocab_size = c.at("vocab_size").get<std::size_t>();
            spec.length_mean = c.at("length_mean").get<double>();
            spec.seed = c.value("seed", std::uint64_t(1));
            config.corpus.separation = c.value("separation", config.corpus.separation);
            if (c.contains("class0_word_dist"))
                spec.class0_word_dist = c.at("class0_word_dist").get<std::vector<double>>();
            if (c.contains("class1_word_dist"))
                spec.class1_word_dist = c.at("class1_word_dist").get<std::vector<double>>();
        } else {
            throw std::runtime_error("unknown corpus type '" + type + "'");
        }
    }

    if (j.contains("train_sizes"))
        config.train_sizes = j.at("train_sizes").get<std::vector<std::size_t>>();
    if (j.contains("validation_sizes"))
        config.validation_sizes = j.at("validation_sizes").get<std::vector<std::size_t>>();
    config.test_size = j.value("test_size", config.test_size);
    config.repetitions = j.value("repetitions", config.repetitions);
    config.augment_replicates = j.value("augment_replicates", config.augment_replicates);
    config.target_ratio = j.value("target_ratio", config.target_ratio);
    config.bootstrap_B = j.value("bootstrap_B", config.bootstrap_B);
    config.master_seed = j.value("master_seed", config.master_seed);
    config.roc_grid_points = j.value("roc_grid_points", config.roc_grid_points);
    config.vocab_min_count = j.value("vocab_min_count", config.vocab_min_count);
    config.stratify_splits = j.value("stratify_splits", config.stratify_splits);
    config.share_test_across_sizes =
        j.value("share_test_across_sizes", config.share_test_across_sizes);
    if (j.contains("objective"))
        config.objective = objective_from_name(j.at("objective").get<std::string>());

    if (j.contains("classifier")) {
        const auto& c = j.at("classifier");
        std::string kind = c.value("kind", std::string("forest"));
        if (kind == "forest") {
            config.classifier.kind = ClassifierSpec::Kind::forest;
            config.classifier.forest.n_trees = c.value("n_trees", config.classifier.forest.n_trees);
            config.classifier.forest.max_depth =
                c.value("max_depth", config.classifier.forest.max_depth);
            config.classifier.forest.min_split =
                c.value("min_split", config.classifier.forest.min_split);
            config.classifier.forest.mtry = c.value("mtry", config.classifier.forest.mtry);
        } else if (kind == "logistic") {
            config.classifier.kind = ClassifierSpec::Kind::logistic;
            config.classifier.logistic_l2 = c.value("l2", config.classifier.logistic_l2);
            config.classifier.logistic_max_iter =
                c.value("max_iter", config.classifier.logistic_max_iter);
            config.classifier.logistic_tol = c.value("tol", config.classifier.logistic_tol);
        } else if (kind == "oracle") {
            config.classifier.kind = ClassifierSpec::Kind::oracle;
        } else {
            throw std::runtime_error("unknown classifier kind '" + kind + "'");
        }
    }

    if (j.contains("methods")) {
        for (const auto& m : j.at("methods")) {
            RunnerMethod rm;
            rm.method.kind = augment_kind_from_name(m.at("kind").get<std::string>());
            rm.method.rose.shrinkage = m.value("shrinkage", rm.method.rose.shrinkage);
            rm.method.smote.k_neighbors = m.value("k_neighbors", rm.method.smote.k_neighbors);
            rm.method.smote.borderline_knn_k =
                m.value("borderline_knn_k", rm.method.smote.borderline_knn_k);
            rm.method.eda.alpha = m.value("alpha", rm.method.eda.alpha);
            if (m.contains("lexicon"))
                rm.method.eda.lexicon =
                    load_synonym_lexicon(m.at("lexicon").get<std::string>());
            rm.label = m.value("label", default_method_label(rm.method));
            config.methods.push_back(std::move(rm));
        }
    } else {
        config.methods = default_methods();
    }
    return config;
}

std::string config_to_json(const ExperimentConfig& config) {
    nlohmann::json j;
    j["dataset_name"] = config.dataset_name;
    if (config.corpus.type == CorpusSource::Type::csv) {
        j["corpus"] = {{"type", "csv"},
                       {"path", config.corpus.path.string()},
                       {"text_col", config.corpus.text_col},
                       {"label_col", config.corpus.label_col}};
    } else {
        j["corpus"] = {{"type", "synthetic"},
                       {"n_docs", config.corpus.synthetic.n_docs},
                       {"minority_ratio", config.corpus.synthetic.minority_ratio},
                       {"vocab_size", config.corpus.synthetic.vocab_size},
                       {"length_mean", config.corpus.synthetic.length_mean},
                       {"seed", config.corpus.synthetic.seed},
                       {"separation", config.corpus.separation}};
    }
    j["train_sizes"] = config.train_sizes;
    j["validation_sizes"] = config.validation_sizes;
    j["test_size"] = config.test_size;
    j["repetitions"] = config.repetitions;
    j["augment_replicates"] = config.augment_replicates;
    j["target_ratio"] = config.target_ratio;
    j["bootstrap_B"] = config.bootstrap_B;
    j["master_seed"] = config.master_seed;
    j["roc_grid_points"] = config.roc_grid_points;
    j["vocab_min_count"] = config.vocab_min_count;
    j["stratify_splits"] = config.stratify_splits;
    j["share_test_across_sizes"] = config.share_test_across_sizes;
    j["objective"] = objective_name(config.objective);
    nlohmann::json methods = nlohmann::json::array();
    for (const RunnerMethod& rm : config.methods) {
        nlohmann::json m;
        m["kind"] = augment_kind_name(rm.method.kind);
        m["label"] = rm.label;
        if (rm.method.kind == AugmentKind::rose) m["shrinkage"] = rm.method.rose.shrinkage;
        methods.push_back(std::move(m));
    }
    j["methods"] = std::move(methods);
    return j.dump(2);
}

} // namespace imbtext
