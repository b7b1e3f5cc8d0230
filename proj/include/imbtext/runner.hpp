#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "imbtext/augment.hpp"
#include "imbtext/classifier.hpp"
#include "imbtext/corpus.hpp"
#include "imbtext/metrics.hpp"
#include "imbtext/stats.hpp"

namespace imbtext {

struct CorpusSource {
    enum class Type { csv, synthetic };
    Type type = Type::synthetic;
    // csv
    std::filesystem::path path;
    std::string text_col = "text";
    std::string label_col = "label";
    // synthetic; empty dists are filled from default_synthetic_dists(vocab_size, separation)
    SyntheticSpec synthetic;
    double separation = 0.5;
};

struct ClassifierSpec {
    enum class Kind { forest, logistic, oracle };
    Kind kind = Kind::forest;
    ForestConfig forest;
    double logistic_l2 = 1e-4;
    std::size_t logistic_max_iter = 1000;
    double logistic_tol = 1e-6;
};

struct RunnerMethod {
    AugmentMethod method;
    std::string label; // report column name; defaulted from the kind and parameters
};

struct ExperimentConfig {
    std::string dataset_name = "dataset";
    CorpusSource corpus;
    std::vector<std::size_t> train_sizes = {500, 2000};
    std::vector<std::size_t> validation_sizes = {125, 500}; // paired with train_sizes
    std::size_t test_size = 1000;
    std::size_t repetitions = 5;
    std::size_t augment_replicates = 40;
    double target_ratio = 0.5;
    std::vector<RunnerMethod> methods;
    ClassifierSpec classifier;
    Objective objective = Objective::balanced_accuracy;
    std::size_t bootstrap_B = 1000;
    std::uint64_t master_seed = 1;
    std::size_t roc_grid_points = 101;
    std::size_t vocab_min_count = 1;
    bool stratify_splits = false;
    bool share_test_across_sizes = true;
    Exec exec = Exec::parallel;

    void validate() const;
};

// Shrinks everything so a full run finishes in minutes on a laptop.
void apply_desk_scale(ExperimentConfig& config);

// Default method list used when a config names none.
std::vector<RunnerMethod> default_methods();

std::string default_method_label(const AugmentMethod& method);

enum class Regime { both_default, base_optimized, both_optimized };
std::string regime_name(Regime regime);

// Fixed report order of the evaluated metrics.
const std::vector<std::string>& metric_names(); // ba, f1, sensitivity, specificity, accuracy, auc, brier

struct MetricCell {
    std::string metric;
    double mean_gain = 0.0;
    double p_value = 1.0;
    GainSample gains; // raw I x J percentage gains
    bool bootstrap_degenerate = false;
    std::string error; // non-empty when this metric could not be computed

    bool operator==(const MetricCell& other) const;
};

struct CellResult {
    std::string dataset;
    std::string method;
    std::size_t train_size = 0;
    Regime regime = Regime::both_default;
    std::vector<MetricCell> metrics;
    std::string error; // non-empty when the whole cell failed

    bool operator==(const CellResult& other) const;
};

struct RocEnsembleResult {
    std::string method;
    std::size_t train_size = 0;
    CurveEnsemble ensemble;        // augmented-model ROC curves, one per (rep, replicate)
    std::vector<double> base_mean; // mean base-model ROC on the same grid
    FunctionalBoxplot box;
};

struct RunStats {
    std::size_t base_models = 0;
    std::size_t augmented_models = 0;
};

struct ExperimentResult {
    std::string dataset;
    std::vector<CellResult> cells;
    std::vector<RocEnsembleResult> roc;
    std::vector<std::pair<std::size_t, std::string>> split_audits; // (train_size, json)
    std::vector<std::string> warnings;
    RunStats stats;
};

// The full protocol: split, fit base models, augment J times per method, fit,
// evaluate the three threshold regimes on the test set, bootstrap-test each
// gain matrix. Deterministic given config.master_seed.
ExperimentResult run_experiment(const ExperimentConfig& config);

void emit_report_csv(const std::vector<CellResult>& cells, std::ostream& out);
std::string report_to_json(const std::vector<CellResult>& cells);

std::string cells_to_json(const std::vector<CellResult>& cells);
std::vector<CellResult> cells_from_json(const std::string& text);

// Writes results.json, report.csv, roc_<method>_<size>.json and
// splits_<size>.json under out_dir.
void write_experiment_outputs(const ExperimentResult& result,
                              const std::filesystem::path& out_dir);

ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& config);

} // namespace imbtext
